"""Deterministic backtracking searches used by the ingredient factory.

Three engines, all seeded and reproducible:

* difference-family search: pick base triples whose differences tile a
  target multiset exactly;
* plain cover search: pick blocks covering every required pair exactly
  lambda times, branching on the most constrained pair;
* orbit cover search: the same, but modulo a cyclic symmetry, so each
  chosen representative stands for a whole orbit of blocks.

Searches restart with reshuffled candidate order when a node budget runs
out, which in practice gets the rare stuck instance unstuck while keeping
runs reproducible for a fixed seed.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceededError


def find_difference_family(
    rows: int,
    cols: int,
    target: Counter,
    seed: int = 0,
    budget: int = 400_000,
    restarts: int = 24,
) -> list[tuple[tuple[int, int], ...]] | None:
    """Base triples {(0,0), p, q} whose combined differences equal target.

    target maps each allowed difference to the exact multiplicity wanted
    (usually lam per allowed difference).  Returns None when the search
    space is exhausted, raises BudgetExceededError when every restart ran
    out of nodes.
    """
    total = sum(target.values())
    if total % 6:
        return None
    n_bases = total // 6

    points = [(i, j) for i in range(rows) for j in range(cols) if (i, j) != (0, 0)]

    def diffs_of(p, q):
        return [
            ((p[0]) % rows, (p[1]) % cols),
            ((-p[0]) % rows, (-p[1]) % cols),
            ((q[0]) % rows, (q[1]) % cols),
            ((-q[0]) % rows, (-q[1]) % cols),
            ((q[0] - p[0]) % rows, (q[1] - p[1]) % cols),
            ((p[0] - q[0]) % rows, (p[1] - q[1]) % cols),
        ]

    base_pairs = []
    for p, q in itertools.combinations(points, 2):
        ds = diffs_of(p, q)
        if all(target.get(d, 0) > 0 for d in ds):
            base_pairs.append((p, q, tuple(ds)))

    by_diff: dict[tuple[int, int], list[int]] = {d: [] for d in target}
    for t, (_, _, ds) in enumerate(base_pairs):
        for d in set(ds):
            by_diff[d].append(t)

    exhausted_all = True
    rng = random.Random(seed)
    order = list(range(len(base_pairs)))
    for attempt in range(restarts):
        remaining = Counter(target)
        chosen: list[int] = []
        nodes = 0

        def rec() -> str:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return "budget"
            least = None
            for d in remaining:
                if remaining[d] > 0:
                    least = d
                    break
            if least is None:
                return "found"
            for t in by_diff[least]:
                _, _, ds = base_pairs[t]
                use = Counter(ds)
                if any(remaining[d] < m for d, m in use.items()):
                    continue
                for d, m in use.items():
                    remaining[d] -= m
                chosen.append(t)
                result = rec()
                if result != "none":
                    return result
                chosen.pop()
                for d, m in use.items():
                    remaining[d] += m
            return "none"

        # Deterministic first attempt, seeded shuffles afterwards.
        if attempt > 0:
            rng.shuffle(order)
            reorder = {t: pos for pos, t in enumerate(order)}
            for d in by_diff:
                by_diff[d].sort(key=reorder.__getitem__)
        outcome = rec()
        if outcome == "found":
            return [((0, 0), base_pairs[t][0], base_pairs[t][1]) for t in chosen]
        if outcome == "budget":
            exhausted_all = False
    if exhausted_all:
        return None
    raise BudgetExceededError(
        f"difference family search for {rows}x{cols} ({n_bases} bases) hit budget"
    )


def cover_search(
    n_points: int,
    required: dict[tuple[int, int], int],
    candidates: Sequence[tuple[int, ...]],
    seed: int = 0,
    budget: int = 500_000,
    restarts: int = 16,
) -> list[int] | None:
    """Multiset of candidate indices covering each required pair exactly.

    Pairs absent from required are forbidden: candidates touching them are
    dropped up front.  Branches on the pair with the fewest usable
    candidates.
    """
    pair_lists: dict[tuple[int, int], list[int]] = {p: [] for p in required}
    usable = []
    for t, block in enumerate(candidates):
        pairs = [tuple(sorted(pq)) for pq in itertools.combinations(block, 2)]
        if all(p in required for p in pairs):
            usable.append((t, pairs))
    for pos, (t, pairs) in enumerate(usable):
        for p in pairs:
            pair_lists[p].append(pos)

    rng = random.Random(seed)
    for attempt in range(restarts):
        remaining = dict(required)
        chosen: list[int] = []
        nodes = 0

        def rec() -> str:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return "budget"
            best_pair = None
            best_options = None
            for p, need in remaining.items():
                if need <= 0:
                    continue
                options = [
                    pos
                    for pos in pair_lists[p]
                    if all(remaining[q] > 0 for q in usable[pos][1])
                ]
                if best_options is None or len(options) < len(best_options):
                    best_pair, best_options = p, options
                    if not options:
                        break
            if best_pair is None:
                return "found"
            for pos in best_options:
                _, pairs = usable[pos]
                counts = Counter(pairs)
                if any(remaining[q] < m for q, m in counts.items()):
                    continue
                for q, m in counts.items():
                    remaining[q] -= m
                chosen.append(pos)
                result = rec()
                if result != "none":
                    return result
                chosen.pop()
                for q, m in counts.items():
                    remaining[q] += m
            return "none"

        if attempt > 0:
            order = list(range(len(usable)))
            rng.shuffle(order)
            rank = {pos: i for i, pos in enumerate(order)}
            for p in pair_lists:
                pair_lists[p].sort(key=rank.__getitem__)
        outcome = rec()
        if outcome == "found":
            return [usable[pos][0] for pos in chosen]
        if outcome == "none" and attempt == 0:
            return None
    raise BudgetExceededError("cover search hit budget on every restart")


def orbit_cover_search(
    points: Sequence,
    shift: Callable,
    order: int,
    required_class_mult: int,
    forbidden: Callable,
    candidate_reps: Iterable[tuple],
    seed: int = 0,
    budget: int = 500_000,
    restarts: int = 24,
) -> list[tuple] | None:
    """Cover every pair class exactly required_class_mult times.

    shift(point) generates a cyclic symmetry of order `order` preserving
    the forbidden relation; pair classes are orbits of unordered pairs.
    Every candidate block must have a trivial stabiliser (checked), so one
    representative accounts for `order` blocks and each of its pairs
    covers its whole class once.
    """
    index = {p: t for t, p in enumerate(points)}

    def orbit_of_pair(p, q):
        best = None
        a, b = p, q
        for _ in range(order):
            key = tuple(sorted((index[a], index[b])))
            if best is None or key < best:
                best = key
            a, b = shift(a), shift(b)
        return best

    class_ids: dict[tuple[int, int], int] = {}
    classes: list[tuple[int, int]] = []
    for p, q in itertools.combinations(points, 2):
        if forbidden(p, q):
            continue
        rep = orbit_of_pair(p, q)
        if rep not in class_ids:
            class_ids[rep] = len(classes)
            classes.append(rep)

    usable: list[tuple[tuple, tuple[int, ...]]] = []
    seen_blocks = set()
    for block in candidate_reps:
        if any(forbidden(p, q) for p, q in itertools.combinations(block, 2)):
            continue
        images = set()
        cur = tuple(sorted(block, key=index.__getitem__))
        for _ in range(order):
            images.add(cur)
            cur = tuple(
                sorted((shift(p) for p in cur), key=index.__getitem__)
            )
        if len(images) != order:
            continue  # non-trivial stabiliser: skip, duplicates would arise
        canon = min(images)
        if canon in seen_blocks:
            continue
        seen_blocks.add(canon)
        covered = tuple(
            class_ids[orbit_of_pair(p, q)]
            for p, q in itertools.combinations(block, 2)
        )
        usable.append((block, covered))

    class_lists: dict[int, list[int]] = {cid: [] for cid in range(len(classes))}
    for pos, (_, covered) in enumerate(usable):
        for cid in set(covered):
            class_lists[cid].append(pos)

    rng = random.Random(seed)
    for attempt in range(restarts):
        remaining = [required_class_mult] * len(classes)
        chosen: list[int] = []
        nodes = 0

        def rec() -> str:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return "budget"
            best_cid = None
            best_options = None
            for cid in range(len(classes)):
                if remaining[cid] <= 0:
                    continue
                options = []
                for pos in class_lists[cid]:
                    counts = Counter(usable[pos][1])
                    if all(remaining[c] >= m for c, m in counts.items()):
                        options.append(pos)
                if best_options is None or len(options) < len(best_options):
                    best_cid, best_options = cid, options
                    if not options:
                        break
            if best_cid is None:
                return "found"
            for pos in best_options:
                counts = Counter(usable[pos][1])
                for c, m in counts.items():
                    remaining[c] -= m
                chosen.append(pos)
                result = rec()
                if result != "none":
                    return result
                chosen.pop()
                for c, m in counts.items():
                    remaining[c] += m
            return "none"

        if attempt > 0:
            order_list = list(range(len(usable)))
            rng.shuffle(order_list)
            rank = {pos: i for i, pos in enumerate(order_list)}
            for cid in class_lists:
                class_lists[cid].sort(key=rank.__getitem__)
        outcome = rec()
        if outcome == "found":
            out = []
            for pos in chosen:
                block = usable[pos][0]
                cur = tuple(block)
                for _ in range(order):
                    out.append(tuple(sorted(cur, key=index.__getitem__)))
                    cur = tuple(shift(p) for p in cur)
            return out
        if outcome == "none" and attempt == 0:
            return None
    raise BudgetExceededError("orbit cover search hit budget on every restart")
