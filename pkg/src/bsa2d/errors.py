"""Exception types shared across the package."""

from __future__ import annotations


class Bsa2dError(Exception):
    """Base class for all package-specific errors."""


class OutOfBoundsError(Bsa2dError, ValueError):
    """A point lies outside the ambient grid."""


class InadmissibleCountError(Bsa2dError, ValueError):
    """A block-count formula did not come out integral."""


class StructureError(Bsa2dError, ValueError):
    """A block set or structure descriptor is malformed."""


class BudgetExceededError(Bsa2dError, RuntimeError):
    """A search or group enumeration hit its node/size limit."""


class PartitionNotFoundError(Bsa2dError, RuntimeError):
    """A triple-partition search exhausted all branches without success."""


class PreconditionError(Bsa2dError, ValueError):
    """Arguments fall outside the stated domain of a construction."""


class InadmissibleParamsError(Bsa2dError, ValueError):
    """Design parameters fail a necessary divisibility condition."""


class InadmissibleSpecError(Bsa2dError, ValueError):
    """An ingredient spec fails its known existence conditions."""


class KnownNonexistentError(Bsa2dError, ValueError):
    """The requested design is one of the hard-coded nonexistent cases."""


class IngredientUnavailableError(Bsa2dError, RuntimeError):
    """A required ingredient could not be produced within desk-scale budget."""

    def __init__(self, message: str, chain: tuple[str, ...] = ()):
        super().__init__(message)
        self.chain = chain
