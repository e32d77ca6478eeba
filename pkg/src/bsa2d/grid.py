"""Grid populations, adjacency schemes and arithmetic admissibility checks.

Points of an r x c population live on a torus: both coordinates wrap.  The
three two-dimensional adjacency schemes (row-and-column, sharing-a-border,
island) and the circular one-dimensional scheme are all expressed through
the same difference arithmetic, so adjacency, forbidden difference sets and
block-count formulas stay in one place.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Union

from .errors import InadmissibleCountError, OutOfBoundsError


class GridPoint(NamedTuple):
    row: int
    col: int


# Plain (row, col) tuples are accepted everywhere a GridPoint is.
Point = tuple[int, int]
Block = tuple[Point, ...]


@dataclass(frozen=True)
class RowColumn:
    """Adjacent = same row or same column."""

    token = "rc"


@dataclass(frozen=True)
class SharingBorder:
    """Adjacent = 4-neighbourhood on the torus."""

    token = "sb"


@dataclass(frozen=True)
class Island:
    """Adjacent = 8-neighbourhood on the torus."""

    token = "is"


@dataclass(frozen=True)
class OneDim:
    """Circular population; adjacent = within distance m."""

    m: int = 1

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"adjacency radius must be >= 1, got {self.m}")

    @property
    def token(self) -> str:
        return f"od{self.m}"


AdjacencyScheme = Union[RowColumn, SharingBorder, Island, OneDim]

RC = RowColumn()
SB = SharingBorder()
IS = Island()


def scheme_from_token(token: str) -> AdjacencyScheme:
    token = token.lower()
    if token == "rc":
        return RC
    if token == "sb":
        return SB
    if token == "is":
        return IS
    if token.startswith("od"):
        return OneDim(int(token[2:] or "1"))
    raise ValueError(f"unknown adjacency scheme token {token!r}")


@dataclass(frozen=True)
class DesignParams:
    scheme: AdjacencyScheme
    rows: int
    cols: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"block size k must be >= 2, got {self.k}")
        if self.lam < 1:
            raise ValueError(f"index lambda must be >= 1, got {self.lam}")
        if isinstance(self.scheme, OneDim):
            if self.rows != 1:
                raise ValueError("one-dimensional populations use rows=1")
            if self.cols < 3:
                raise ValueError("population size must be >= 3")
        else:
            if self.rows < 3 or self.cols < 3:
                raise ValueError(
                    f"grid schemes need rows, cols >= 3, got {self.rows}x{self.cols}"
                )

    @property
    def n_points(self) -> int:
        return self.rows * self.cols

    def points(self) -> Iterator[Point]:
        for i in range(self.rows):
            for j in range(self.cols):
                yield (i, j)

    def transposed(self) -> "DesignParams":
        return DesignParams(self.scheme, self.cols, self.rows, self.k, self.lam)


@dataclass(frozen=True)
class Design:
    params: DesignParams
    blocks: tuple[Block, ...]


def check_bounds(p: Point, rows: int, cols: int) -> None:
    if not (0 <= p[0] < rows and 0 <= p[1] < cols):
        raise OutOfBoundsError(f"point {p} outside {rows}x{cols} grid")


def adjacent(
    scheme: AdjacencyScheme, p: Point, q: Point, rows: int, cols: int
) -> bool:
    """Whether two distinct in-bounds points are adjacent under the scheme."""
    check_bounds(p, rows, cols)
    check_bounds(q, rows, cols)
    if p == q:
        raise ValueError("adjacency is defined on distinct units")
    dr = (q[0] - p[0]) % rows
    dc = (q[1] - p[1]) % cols
    if isinstance(scheme, RowColumn):
        return dr == 0 or dc == 0
    if isinstance(scheme, SharingBorder):
        return (dr == 0 and dc in (1, cols - 1)) or (
            dc == 0 and dr in (1, rows - 1)
        )
    if isinstance(scheme, Island):
        return dr in (0, 1, rows - 1) and dc in (0, 1, cols - 1)
    # OneDim: population is the single row, circular in the column index.
    d = dc % cols
    return min(d, cols - d) <= scheme.m


def neighbors(
    scheme: AdjacencyScheme, p: Point, rows: int, cols: int
) -> list[Point]:
    return [
        (i, j)
        for i in range(rows)
        for j in range(cols)
        if (i, j) != tuple(p) and adjacent(scheme, p, (i, j), rows, cols)
    ]


def forbidden_difference_set(
    scheme: AdjacencyScheme, rows: int, cols: int, *, qmgdd: bool = False
) -> frozenset[Point]:
    """Differences (including (0,0)) that a difference family must avoid.

    With qmgdd=True, returns the forbidden set of the related-pairs
    configuration instead: a whole row of differences plus (+-1, 0).
    """
    if qmgdd:
        out = {(0, j) for j in range(cols)}
        out.add((1 % rows, 0))
        out.add((-1 % rows, 0))
        return frozenset(out)
    if isinstance(scheme, RowColumn):
        out = {(0, j) for j in range(cols)} | {(i, 0) for i in range(rows)}
        return frozenset(out)
    if isinstance(scheme, SharingBorder):
        return frozenset(
            {(0, 0), (0, 1 % cols), (0, -1 % cols), (1 % rows, 0), (-1 % rows, 0)}
        )
    if isinstance(scheme, Island):
        return frozenset(
            {
                (i % rows, j % cols)
                for i in (-1, 0, 1)
                for j in (-1, 0, 1)
            }
        )
    out = {(0, d % cols) for d in range(-scheme.m, scheme.m + 1)}
    return frozenset(out)


def n_nonadjacent_pairs(params: DesignParams) -> int:
    """Number of unordered non-adjacent point pairs, by scheme formula."""
    r, c = params.rows, params.cols
    n = r * c
    scheme = params.scheme
    if isinstance(scheme, RowColumn):
        return n * (r - 1) * (c - 1) // 2
    if isinstance(scheme, SharingBorder):
        return n * (n - 5) // 2
    if isinstance(scheme, Island):
        return n * (n - 9) // 2
    return n * (n - 2 * scheme.m - 1) // 2


def expected_block_count(params: DesignParams) -> int:
    """lam * (non-adjacent pairs) / C(k,2); raises if not integral."""
    pair_slots = params.k * (params.k - 1) // 2
    total = params.lam * n_nonadjacent_pairs(params)
    if total % pair_slots:
        raise InadmissibleCountError(
            f"block count {total}/{pair_slots} is not an integer for {params}"
        )
    return total // pair_slots


class AdmissibilityStatus(enum.Enum):
    ADMISSIBLE = "admissible"
    DIVISIBILITY_FAIL = "divisibility-fail"
    KNOWN_NONEXISTENT = "known-nonexistent"


@dataclass(frozen=True)
class AdmissibilityReport:
    status: AdmissibilityStatus
    failed_congruence: str | None = None
    known_exception: str | None = None
    minimal_lambda: int | None = None

    @property
    def ok(self) -> bool:
        return self.status is AdmissibilityStatus.ADMISSIBLE


def _congruence_failure(params: DesignParams) -> str | None:
    """Return a description of the first failing congruence, if any."""
    r, c, k, lam = params.rows, params.cols, params.k, params.lam
    scheme = params.scheme
    if isinstance(scheme, RowColumn) and k == 3:
        if lam * (r - 1) * (c - 1) % 2:
            return "lam*(r-1)*(c-1) = 0 (mod 2)"
        if lam * r * (r - 1) * c * (c - 1) % 3:
            return "lam*r*(r-1)*c*(c-1) = 0 (mod 3)"
        return None
    if isinstance(scheme, RowColumn) and k == 4:
        if r < 4 or c < 4:
            return "rows, cols >= 4"
        if lam * (r - 1) * (c - 1) % 3:
            return "lam*(r-1)*(c-1) = 0 (mod 3)"
        return None
    if isinstance(scheme, SharingBorder) and k == 3:
        n = r * c
        if lam * n * (n - 5) % 6:
            return "lam*rc*(rc-5) = 0 (mod 6)"
        if lam * (n - 5) % 2:
            return "lam*(rc-5) = 0 (mod 2)"
        return None
    if isinstance(scheme, Island) and k == 3:
        n = r * c
        if lam * n * (n - 9) % 6:
            return "lam*rc*(rc-9) = 0 (mod 6)"
        if lam * (n - 9) % 2:
            return "lam*(rc-9) = 0 (mod 2)"
        return None
    # Generic counting conditions: integral block count and replication.
    pairs = n_nonadjacent_pairs(params)
    if lam * pairs % (k * (k - 1) // 2):
        return "lam*P = 0 (mod C(k,2))"
    per_point = 2 * pairs // (r * c)  # non-adjacent partners of one point
    if lam * per_point % (k - 1):
        return "lam*(non-adjacent degree) = 0 (mod k-1)"
    return None


def admissibility(params: DesignParams) -> AdmissibilityReport:
    """Congruence status plus the two hard-coded existence facts.

    Never claims existence: ADMISSIBLE means only that no necessary
    divisibility condition fails and the parameters are not one of the
    known nonexistent cases.
    """
    scan_limit = 6 if params.k == 3 else params.k * (params.k - 1)
    minimal = None
    for lam in range(1, scan_limit + 1):
        trial = DesignParams(params.scheme, params.rows, params.cols, params.k, lam)
        if _congruence_failure(trial) is None:
            minimal = lam
            break

    if (
        isinstance(params.scheme, SharingBorder)
        and params.k == 3
        and {params.rows, params.cols} == {3, 4}
    ):
        return AdmissibilityReport(
            AdmissibilityStatus.KNOWN_NONEXISTENT, minimal_lambda=minimal
        )

    failed = _congruence_failure(params)
    if failed is not None:
        return AdmissibilityReport(
            AdmissibilityStatus.DIVISIBILITY_FAIL,
            failed_congruence=failed,
            minimal_lambda=minimal,
        )

    exception = None
    if (
        isinstance(params.scheme, RowColumn)
        and params.k == 4
        and params.lam == 1
        and {params.rows, params.cols} == {6, 4}
    ):
        exception = "k=4, lam=1, {rows,cols}={6,4} is a known exception"
    return AdmissibilityReport(
        AdmissibilityStatus.ADMISSIBLE,
        known_exception=exception,
        minimal_lambda=minimal,
    )
