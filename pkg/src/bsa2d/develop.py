"""Difference multisets and the development of base blocks into designs.

Base blocks certify a design through their difference multiset: developed
under a cyclic action, the translates cover a pair at difference d once for
each time d occurs across the base blocks.  Development under an arbitrary
permutation group is also supported for the handful of catalog entries
stated that way.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BudgetExceededError, StructureError
from .grid import Block, Point
from .verify import MAX_VIOLATIONS, VerifyReport


@dataclass(frozen=True)
class RowColCyclic:
    """Translate by +1 in each enabled axis; disabled axes stay fixed."""

    step_rows: bool = True
    step_cols: bool = True


@dataclass(frozen=True)
class PermutationGroup:
    """Development under the group generated by explicit permutations of Z_n."""

    n: int
    generators: tuple[tuple[int, ...], ...]


DevelopmentAction = Union[RowColCyclic, PermutationGroup]


@dataclass(frozen=True)
class BaseBlockFamily:
    rows: int
    cols: int
    entries: tuple[tuple[Block, int], ...]
    action: DevelopmentAction = RowColCyclic()

    def __post_init__(self) -> None:
        for block, mult in self.entries:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            for (i, j) in block:
                if not (0 <= i < self.rows and 0 <= j < self.cols):
                    raise StructureError(
                        f"base point {(i, j)} outside {self.rows}x{self.cols}"
                    )


def delta(block: Sequence[Point], rows: int, cols: int) -> Counter:
    """All k(k-1) ordered differences of distinct points, reduced mod (r, c)."""
    if len(block) < 2:
        raise ValueError("difference multiset needs at least two points")
    out: Counter = Counter()
    for p, q in itertools.permutations(block, 2):
        out[((p[0] - q[0]) % rows, (p[1] - q[1]) % cols)] += 1
    return out


def family_delta(family: BaseBlockFamily) -> Counter:
    total: Counter = Counter()
    for block, mult in family.entries:
        d = delta(block, family.rows, family.cols)
        for diff, count in d.items():
            total[diff] += mult * count
    return total


def check_difference_family(
    family: BaseBlockFamily,
    lam: int,
    forbidden: Iterable[Point],
) -> VerifyReport:
    """ok iff the weighted differences hit every allowed difference exactly
    lam times and no forbidden difference at all."""
    forbidden = set(forbidden)
    got = family_delta(family)
    violations: list[tuple] = []
    ok = True
    checked = 0
    for i in range(family.rows):
        for j in range(family.cols):
            diff = (i, j)
            want = 0 if diff in forbidden else lam
            checked += 1
            if got.get(diff, 0) != want:
                ok = False
                if len(violations) < MAX_VIOLATIONS:
                    violations.append((diff, want, got.get(diff, 0)))
    return VerifyReport(ok, tuple(violations), checked, len(family.entries))


def translate(block: Block, di: int, dj: int, rows: int, cols: int) -> Block:
    return tuple(
        sorted(((i + di) % rows, (j + dj) % cols) for (i, j) in block)
    )


def develop(family: BaseBlockFamily) -> list[Block]:
    """Full development of every entry under the cyclic action.

    Every image is kept, so a base block fixed by part of the action
    contributes duplicate blocks; the verifier arbitrates whether the
    resulting multiset is correct.
    """
    if not isinstance(family.action, RowColCyclic):
        raise ValueError("develop() needs a row/column cyclic action")
    row_shifts = range(family.rows) if family.action.step_rows else (0,)
    col_shifts = range(family.cols) if family.action.step_cols else (0,)
    out: list[Block] = []
    for block, mult in family.entries:
        for di in row_shifts:
            for dj in col_shifts:
                image = translate(block, di, dj, family.rows, family.cols)
                out.extend([image] * mult)
    return out


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def group_closure(
    generators: Sequence[tuple[int, ...]], n: int, max_size: int = 20000
) -> list[tuple[int, ...]]:
    """All elements of the generated permutation group, BFS order."""
    for g in generators:
        if sorted(g) != list(range(n)):
            raise StructureError("generator is not a bijection of Z_n")
    identity = tuple(range(n))
    elements = {identity}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for g in generators:
            for h in frontier:
                gh = compose(g, h)
                if gh not in elements:
                    elements.add(gh)
                    new_frontier.append(gh)
                    if len(elements) > max_size:
                        raise BudgetExceededError(
                            f"group closure exceeded {max_size} elements"
                        )
        frontier = new_frontier
    return sorted(elements)


def develop_under_group(
    initial: Sequence[tuple[int, ...]],
    generators: Sequence[tuple[int, ...]],
    n: int,
    max_size: int = 20000,
) -> list[tuple[int, ...]]:
    """One image per (initial block, group element), as a multiset."""
    group = group_closure(generators, n, max_size)
    out = []
    for block in initial:
        for g in group:
            out.append(tuple(sorted(g[x] for x in block)))
    return out


def column_major_point(z: int, rows: int) -> Point:
    """Map z in Z_{rows*cols} to the grid position (z mod rows, z div rows)."""
    return (z % rows, z // rows)


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Permutation of Z_n from cycle notation like '(0 2 4)(1 3)'."""
    image = list(range(n))
    depth = 0
    cycles: list[list[int]] = []
    current: list[int] = []
    for token in text.replace("(", " ( ").replace(")", " ) ").split():
        if token == "(":
            depth += 1
            current = []
        elif token == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            cycles.append(current)
        else:
            current.append(int(token))
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            image[a] = b
    return tuple(image)


def format_cycles(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = perm[x]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"
