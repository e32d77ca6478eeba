"""Brute-force verification of designs by exhaustive pair counting.

Everything here recomputes coverage from first principles; nothing trusts
the construction that produced a block set.  The same pair-count core backs
the sampling-plan check, the structured (group/hole) checks and a complete
backtracking nonexistence search for very small parameter sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import InadmissibleCountError, StructureError
from .grid import (
    AdjacencyScheme,
    Block,
    Design,
    DesignParams,
    Island,
    OneDim,
    Point,
    RowColumn,
    SharingBorder,
    adjacent,
    expected_block_count,
)

MAX_VIOLATIONS = 64


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violations: tuple[tuple, ...] = ()
    checked_pairs: int = 0
    n_blocks: int = 0

    def __bool__(self) -> bool:
        return self.ok


class PairCountTable:
    """Counts of blocks containing each unordered pair of points.

    Backed by a dense n x n array for modest point counts and a plain
    dictionary beyond that; exactness over speed either way.
    """

    DENSE_LIMIT = 4096

    def __init__(self, n_points: int):
        self.n = n_points
        self._dense = n_points <= self.DENSE_LIMIT
        if self._dense:
            self._table = np.zeros((n_points, n_points), dtype=np.int64)
        else:
            self._table = {}

    def add_pairs(self, i_idx: Sequence[int], j_idx: Sequence[int]) -> None:
        if self._dense:
            a = np.minimum(i_idx, j_idx)
            b = np.maximum(i_idx, j_idx)
            np.add.at(self._table, (a, b), 1)
        else:
            for i, j in zip(i_idx, j_idx):
                key = (i, j) if i < j else (j, i)
                self._table[key] = self._table.get(key, 0) + 1

    def get(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if self._dense:
            return int(self._table[i, j])
        return self._table.get((i, j), 0)

    def total(self) -> int:
        if self._dense:
            return int(self._table.sum())
        return sum(self._table.values())

    def as_dense(self) -> np.ndarray:
        if not self._dense:
            raise StructureError("pair table too large for a dense view")
        return self._table


def _check_blocks(blocks: Sequence[Block], params: DesignParams) -> None:
    r, c, k = params.rows, params.cols, params.k
    for block in blocks:
        if len(block) != k:
            raise StructureError(f"block {block} has size {len(block)}, want {k}")
        if len(set(block)) != k:
            raise StructureError(f"block {block} repeats a point")
        for (i, j) in block:
            if not (0 <= i < r and 0 <= j < c):
                raise StructureError(f"point {(i, j)} outside {r}x{c} grid")


def pair_counts(design: Design) -> PairCountTable:
    """Exact pair coverage counts of a design; O(b * k^2)."""
    params = design.params
    _check_blocks(design.blocks, params)
    c = params.cols
    table = PairCountTable(params.n_points)
    ii: list[int] = []
    jj: list[int] = []
    for block in design.blocks:
        idx = [p[0] * c + p[1] for p in block]
        for a, b in itertools.combinations(idx, 2):
            ii.append(a)
            jj.append(b)
    if ii:
        table.add_pairs(np.asarray(ii), np.asarray(jj))
    return table


def _adjacency_matrix(scheme: AdjacencyScheme, rows: int, cols: int) -> np.ndarray:
    """Boolean n x n matrix of the adjacency relation (diagonal False)."""
    n = rows * cols
    idx = np.arange(n)
    ri, ci = idx // cols, idx % cols
    dr = (ri[:, None] - ri[None, :]) % rows
    dc = (ci[:, None] - ci[None, :]) % cols
    if isinstance(scheme, RowColumn):
        mask = (dr == 0) | (dc == 0)
    elif isinstance(scheme, SharingBorder):
        mask = ((dr == 0) & ((dc == 1) | (dc == cols - 1))) | (
            (dc == 0) & ((dr == 1) | (dr == rows - 1))
        )
    elif isinstance(scheme, Island):
        mask = ((dr == 0) | (dr == 1) | (dr == rows - 1)) & (
            (dc == 0) | (dc == 1) | (dc == cols - 1)
        )
    else:
        d = np.minimum(dc, cols - dc)
        mask = d <= scheme.m
    np.fill_diagonal(mask, False)
    return mask


def verify_bsa(design: Design) -> VerifyReport:
    """Check a design against the sampling-plan definition.

    ok iff every adjacent pair is covered zero times, every non-adjacent
    pair exactly lam times, and the block count matches the closed form.
    """
    params = design.params
    violations: list[tuple] = []
    try:
        table = pair_counts(design)
    except StructureError as exc:
        return VerifyReport(False, ((str(exc), None, None),))

    try:
        want_blocks = expected_block_count(params)
        if len(design.blocks) != want_blocks:
            violations.append(("block-count", want_blocks, len(design.blocks)))
    except InadmissibleCountError:
        violations.append(("block-count", "integral", len(design.blocks)))

    n = params.n_points
    cols = params.cols
    adj = _adjacency_matrix(params.scheme, params.rows, cols)
    counts = table.as_dense()
    expected = np.where(adj, 0, params.lam)
    np.fill_diagonal(expected, 0)
    checked = 0
    iu, ju = np.triu_indices(n, k=1)
    got = counts[iu, ju]
    want = expected[iu, ju]
    checked = len(iu)
    bad = np.nonzero(got != want)[0]
    for t in bad[: MAX_VIOLATIONS - len(violations)]:
        i, j = int(iu[t]), int(ju[t])
        violations.append(
            (
                ((i // cols, i % cols), (j // cols, j % cols)),
                int(want[t]),
                int(got[t]),
            )
        )
    ok = len(bad) == 0 and not violations
    return VerifyReport(ok, tuple(violations), checked, len(design.blocks))


@dataclass(frozen=True)
class StructureDescriptor:
    """Groups/holes layout for GDD-family verification.

    kind is one of gdd, igdd, mgdd, hgdd, qmgdd.  For qmgdd the points are
    the full rows x cols grid and groups are implied (the rows); for the
    others, groups (and optional holes / hole set) partition the points.
    """

    kind: str
    k: int
    lam: int
    groups: tuple[frozenset, ...] = ()
    holes: tuple[frozenset, ...] = ()
    hole_y: frozenset = frozenset()
    rows: int = 0
    cols: int = 0

    def point_set(self) -> frozenset:
        if self.kind == "qmgdd":
            return frozenset(
                (i, j) for i in range(self.rows) for j in range(self.cols)
            )
        return frozenset().union(*self.groups)

    def validate(self) -> None:
        if self.kind not in ("gdd", "igdd", "mgdd", "hgdd", "qmgdd"):
            raise StructureError(f"unknown structure kind {self.kind!r}")
        if self.kind == "qmgdd":
            if self.rows < 3 or self.cols < 1:
                raise StructureError("qmgdd needs rows >= 3 and cols >= 1")
            return
        pts = self.point_set()
        if sum(len(g) for g in self.groups) != len(pts):
            raise StructureError("groups do not partition the point set")
        if self.kind in ("mgdd", "hgdd"):
            if not self.holes:
                raise StructureError(f"{self.kind} needs a hole partition")
            hole_pts = frozenset().union(*self.holes)
            if hole_pts != pts or sum(len(h) for h in self.holes) != len(pts):
                raise StructureError("holes do not partition the point set")
            for hole in self.holes:
                sizes = {len(hole & g) for g in self.groups}
                if len(sizes) != 1:
                    raise StructureError("hole meets groups in unequal sizes")
                if self.kind == "mgdd" and sizes != {1}:
                    raise StructureError("mgdd holes must meet each group once")
        if self.kind == "igdd" and not self.hole_y <= pts:
            raise StructureError("igdd hole is not a subset of the points")


def _qmgdd_related(p: Point, q: Point, rows: int) -> bool:
    if p[0] == q[0]:
        return True
    return (p[0] - q[0]) % rows in (1, rows - 1) and p[1] == q[1]


def verify_structured(
    blocks: Sequence[tuple[Hashable, ...]], sd: StructureDescriptor
) -> VerifyReport:
    """Check a block multiset against a group-divisible style definition."""
    sd.validate()
    points = sorted(sd.point_set())
    index = {p: t for t, p in enumerate(points)}
    n = len(points)

    group_of = {}
    if sd.kind == "qmgdd":
        for p in points:
            group_of[p] = p[0]
    else:
        for g, grp in enumerate(sd.groups):
            for p in grp:
                group_of[p] = g
    hole_of = {}
    for h, hole in enumerate(sd.holes):
        for p in hole:
            hole_of[p] = h

    violations: list[tuple] = []
    counts = np.zeros((n, n), dtype=np.int64)
    for block in blocks:
        if len(block) != sd.k or len(set(block)) != sd.k:
            raise StructureError(f"malformed block {block}")
        for p, q in itertools.combinations(block, 2):
            if p not in index or q not in index:
                raise StructureError(f"block {block} uses unknown points")
            a, b = index[p], index[q]
            if a > b:
                a, b = b, a
            counts[a, b] += 1

    def expected_count(p, q) -> int:
        if sd.kind == "qmgdd":
            return 0 if _qmgdd_related(p, q, sd.rows) else sd.lam
        if group_of[p] == group_of[q]:
            return 0
        if sd.kind in ("mgdd", "hgdd") and hole_of[p] == hole_of[q]:
            return 0
        if sd.kind == "igdd":
            if p in sd.hole_y and q in sd.hole_y:
                return 0
        return sd.lam

    ok = True
    checked = 0
    for a in range(n):
        for b in range(a + 1, n):
            want = expected_count(points[a], points[b])
            got = int(counts[a, b])
            checked += 1
            if got != want:
                ok = False
                if len(violations) < MAX_VIOLATIONS:
                    violations.append(((points[a], points[b]), want, got))
    if sd.kind == "igdd":
        for block in blocks:
            inside = sum(1 for p in block if p in sd.hole_y)
            if inside > 1:
                ok = False
                if len(violations) < MAX_VIOLATIONS:
                    violations.append((block, "at most one hole point", inside))
    return VerifyReport(ok, tuple(violations), checked, len(blocks))


@dataclass(frozen=True)
class NoDesign:
    nodes: int


@dataclass(frozen=True)
class FoundDesign:
    design: Design
    nodes: int


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int


def exhaustive_nonexistence(
    params: DesignParams, budget: int = 2_000_000
) -> NoDesign | FoundDesign | BudgetExceeded:
    """Complete backtracking search for a design with the given parameters.

    NoDesign is a proof for the given parameters: candidate blocks are
    enumerated exhaustively and the branching (on the lexicographically
    least under-covered pair) never discards a completion.  Intended for
    very small point counts only.
    """
    if params.n_points > 16 or params.lam > 2:
        raise ValueError("exhaustive search restricted to <=16 points, lam <= 2")
    try:
        n_blocks = expected_block_count(params)
    except InadmissibleCountError:
        return NoDesign(nodes=0)

    r, c, k, lam = params.rows, params.cols, params.k, params.lam
    points = [(i, j) for i in range(r) for j in range(c)]
    index = {p: t for t, p in enumerate(points)}
    n = len(points)
    adj = _adjacency_matrix(params.scheme, r, c)

    candidates: list[tuple[int, ...]] = []
    for combo in itertools.combinations(range(n), k):
        if any(adj[a, b] for a, b in itertools.combinations(combo, 2)):
            continue
        candidates.append(combo)
    pair_to_cands: dict[tuple[int, int], list[int]] = {}
    needed: dict[tuple[int, int], int] = {}
    for a in range(n):
        for b in range(a + 1, n):
            if not adj[a, b]:
                needed[(a, b)] = lam
                pair_to_cands[(a, b)] = []
    for t, combo in enumerate(candidates):
        for a, b in itertools.combinations(combo, 2):
            pair_to_cands[(a, b)].append(t)

    chosen: list[int] = []
    nodes = 0

    def rec(remaining_blocks: int) -> str:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return "budget"
        deficit_pair = None
        total_deficit = 0
        for pair in sorted(needed):
            d = needed[pair]
            if d > 0:
                total_deficit += d
                if deficit_pair is None:
                    deficit_pair = pair
        if deficit_pair is None:
            return "found" if remaining_blocks == 0 else "none"
        if remaining_blocks * (k * (k - 1) // 2) < total_deficit:
            return "none"
        for t in pair_to_cands[deficit_pair]:
            combo = candidates[t]
            if any(needed[pq] == 0 for pq in itertools.combinations(combo, 2)):
                continue
            for pq in itertools.combinations(combo, 2):
                needed[pq] -= 1
            chosen.append(t)
            result = rec(remaining_blocks - 1)
            if result in ("found", "budget"):
                return result
            chosen.pop()
            for pq in itertools.combinations(combo, 2):
                needed[pq] += 1
        return "none"

    outcome = rec(n_blocks)
    if outcome == "budget":
        return BudgetExceeded(nodes=nodes)
    if outcome == "found":
        blocks = tuple(
            tuple(sorted(points[a] for a in candidates[t])) for t in chosen
        )
        return FoundDesign(Design(params, blocks), nodes=nodes)
    return NoDesign(nodes=nodes)


@dataclass(frozen=True)
class CountingContradiction:
    """The two incompatible totals for the 4x3 block-type system."""

    lam: int
    total_by_blocks: int
    total_by_pairs: int

    @property
    def contradictory(self) -> bool:
        return self.total_by_blocks != self.total_by_pairs


def counting_argument_4x3(lam: int) -> CountingContradiction:
    """Linear-system contradiction ruling out the 4x3 border-sharing plan.

    Blocks on the 4x3 torus fall into four types by their (necessarily
    distinct) first coordinates; summing type counts two ways gives 14*lam
    versus 18*lam.
    """
    if lam < 1:
        raise ValueError("lam must be >= 1")
    params = DesignParams(SharingBorder(), 4, 3, 3, lam)
    total_by_blocks = expected_block_count(params)  # x1+x2+x3+x4
    # Rows {0,2} contribute 9*lam covered pairs, all inside types
    # {0,1,2} and {0,2,3}; likewise rows {1,3}.  Adding both equations
    # counts every block once more than the block total allows.
    opposite_row_pairs = 3 * 3
    total_by_pairs = 2 * opposite_row_pairs * lam
    return CountingContradiction(lam, total_by_blocks, total_by_pairs)
