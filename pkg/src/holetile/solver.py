"""Exact minimum rectangle partitions by branch and bound.

The free region (non-hole cells not yet covered) is a Python ``int`` bitset,
bit ``(row-1)*n + (col-1)`` per cell.  The search always extends from the
first free cell in row-major order, which must be the top-left corner of its
tile, so every partition is generated exactly once.
"""
from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import Permutation, Rect, Tiling, verify_tiling
from .symmetry import is_canonical

log = logging.getLogger(__name__)

#: Largest grid for which fixed-permutation solves are supported.
MAX_N = 16


class BudgetExceeded(Exception):
    """Search stopped early.  ``result`` holds the incumbent as an upper bound."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    max_time: float | None = None  # seconds

    @classmethod
    def unlimited(cls):
        return cls()


@dataclass
class SolveResult:
    min_count: int
    witness: Tiling
    nodes_explored: int = 0
    elapsed: float = 0.0
    optimal: bool = True
    perm: Permutation | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        from .io import tiling_to_dict

        return {
            "min_count": self.min_count,
            "optimal": self.optimal,
            "nodes": self.nodes_explored,
            "witness": tiling_to_dict(self.witness),
        }


class _Board:
    """Precomputed masks for one permutation."""

    def __init__(self, perm: Permutation):
        n = self.n = perm.n
        if n > MAX_N:
            raise ValueError(f"n={n} exceeds the solver limit of {MAX_N}")
        self.perm = perm
        full = (1 << (n * n)) - 1
        holes = 0
        for r, c in perm.holes:
            holes |= 1 << ((r - 1) * n + c - 1)
        self.holes = holes
        self.start = full & ~holes
        col_first = sum(1 << (r * n) for r in range(n))
        col_last = col_first << (n - 1)
        self.full = full
        self.not_first_col = full & ~col_first
        self.not_last_col = full & ~col_last
        self.cands = [self._anchored(idx) for idx in range(n * n)]
        self.fooling = ()

    def add_fooling_sets(self, cell_sets):
        masks = set(self.fooling)
        for cells in cell_sets:
            masks.add(sum(1 << ((r - 1) * self.n + c - 1) for r, c in cells))
        self.fooling = tuple(sorted(masks))

    def _anchored(self, idx):
        """Hole-free rects with top-left cell ``idx``, largest area first."""
        n = self.n
        r0, c0 = divmod(idx, n)
        if self.holes >> idx & 1:
            return []
        rects = []
        width_cap = n - c0
        block = 0  # mask of full-width rows so far, widened per width below
        for r in range(r0, n):
            w = 0
            while w < width_cap and not self.holes >> (r * n + c0 + w) & 1:
                w += 1
            width_cap = w
            if width_cap == 0:
                break
            block |= 1 << (r * n)
            for width in range(1, width_cap + 1):
                mask = block * (((1 << width) - 1) << c0)
                rects.append(((r - r0 + 1) * width, mask, Rect(r0 + 1, r + 1, c0 + 1, c0 + width)))
        rects.sort(key=lambda t: (-t[0], t[2].r2, t[2].c2))
        return [(mask, rect) for _, mask, rect in rects]

    def bound(self, free: int) -> int:
        """Lower bound on tiles needed for ``free``.

        A free cell whose upper and left neighbours are both unavailable must be
        the top-left corner of its own tile; likewise for the other corners.
        Registered fooling sets give a second bound.
        """
        n = self.n
        up = free << n
        down = free >> n
        left = (free << 1) & self.not_first_col
        right = (free >> 1) & self.not_last_col
        blocked_v = free & ~up
        blocked_vd = free & ~down
        best = max(
            (blocked_v & ~left).bit_count(),
            (blocked_v & ~right).bit_count(),
            (blocked_vd & ~left).bit_count(),
            (blocked_vd & ~right).bit_count(),
        )
        # A tile covers at most one cell of any fooling set.
        for mask in self.fooling:
            k = (mask & free).bit_count()
            if k > best:
                best = k
        return best


def _run_search(board: _Board, cutoff: int, budget: SearchBudget, first_only=False, floor=0,
                memo=False):
    """Depth-first branch and bound.

    Returns ``(best_count, best_rects, nodes, complete)`` where only tilings with
    strictly fewer than ``cutoff`` tiles are reported.  With ``memo`` a table
    of exhausted occupancy states (and the tile count they were reached with)
    cuts repeated subtrees.
    """
    cands = board.cands
    bound = board.bound
    max_nodes = budget.max_nodes
    deadline = None if budget.max_time is None else time.monotonic() + budget.max_time
    state = {"best": cutoff, "rects": None, "nodes": 0}
    stack: list[Rect] = []
    seen: dict[int, int] | None = {} if memo else None

    class _Stop(Exception):
        pass

    class _Done(Exception):
        pass

    def search(free, count):
        nodes = state["nodes"] = state["nodes"] + 1
        if max_nodes is not None and nodes > max_nodes:
            raise _Stop
        if deadline is not None and not nodes & 1023 and time.monotonic() > deadline:
            raise _Stop
        if not free:
            state["best"] = count
            state["rects"] = tuple(stack)
            if first_only or count <= floor:
                raise _Done
            return
        if count + bound(free) >= state["best"]:
            return
        if seen is not None:
            # reached before with no more tiles and the incumbent only tightens
            if seen.get(free, cutoff) <= count:
                return
            seen[free] = count
        low = free & -free
        for mask, rect in cands[low.bit_length() - 1]:
            if mask & free == mask:
                stack.append(rect)
                search(free ^ mask, count + 1)
                stack.pop()
                if count + 1 >= state["best"]:
                    return

    complete = True
    try:
        search(board.start, 0)
    except _Done:
        pass
    except _Stop:
        complete = False
    return state["best"], state["rects"], state["nodes"], complete


def greedy_tiling(perm: Permutation) -> Tiling:
    """Quick feasible tiling: first leaf of the largest-first search."""
    board = _Board(perm)
    _, rects, _, _ = _run_search(board, perm.n * perm.n + 1, SearchBudget(), first_only=True)
    return Tiling(perm.n, rects)


def _remaining(deadline, budget, nodes):
    max_time = None if deadline is None else max(deadline - time.monotonic(), 0.0)
    max_nodes = None if budget.max_nodes is None else max(budget.max_nodes - nodes, 0)
    return SearchBudget(max_nodes, max_time)


def symmetric_fooling_sets(perm: Permutation) -> list[tuple]:
    """Repaired fanning sets of all eight symmetric images, mapped back to ``perm``."""
    from .foolingset import certify
    from .symmetry import SYMMETRIES, apply_to_perm, unmap_cell

    out = []
    for sym in SYMMETRIES:
        cert = certify(apply_to_perm(sym, perm))
        if cert.valid:
            out.append(tuple(unmap_cell(sym, perm.n, r, c) for r, c in cert.cells))
    return out


def min_partition(perm: Permutation, budget: SearchBudget | None = None, *,
                  upper_bound: int | None = None, fooling_bound: bool = True,
                  memo: bool = False) -> SolveResult | None:
    """Minimum number of hole-free rects partitioning the non-hole cells.

    ``upper_bound`` restricts the search to tilings with strictly fewer tiles;
    when none exists ``None`` is returned.  With ``fooling_bound`` fanning
    fooling sets seed the lower bound and prune nodes, and the target count is
    deepened upward from the largest one, so the first tiling found is optimal.
    ``memo`` turns on a transposition table keyed by the occupancy bitset.  On
    budget exhaustion :class:`BudgetExceeded` carries the incumbent, flagged
    non-optimal.
    """
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    deadline = None if budget.max_time is None else t0 + budget.max_time
    board = _Board(perm)
    n = perm.n
    floor = 0
    if fooling_bound:
        sets = symmetric_fooling_sets(perm)
        board.add_fooling_sets(sets)
        floor = max(map(len, sets), default=0)
    floor = max(floor, board.bound(board.start))
    if upper_bound is not None and floor >= upper_bound:
        return None
    seed = greedy_tiling(perm)
    limit = len(seed) if upper_bound is None else min(upper_bound, len(seed) + 1)
    nodes = 0
    rects = None
    target = floor
    while target < limit:
        # one complete pass per target: either a tiling with exactly ``target``
        # tiles, or proof that none exists
        _, found, used, complete = _run_search(board, target + 1,
                                               _remaining(deadline, budget, nodes), floor=target,
                                               memo=memo)
        nodes += used
        if not complete:
            partial = SolveResult(len(seed), seed, nodes, time.monotonic() - t0,
                                  optimal=False, perm=perm)
            if upper_bound is not None and len(seed) >= upper_bound:
                partial = None
            raise BudgetExceeded(f"search budget exhausted after {nodes} nodes", partial)
        if found is not None:
            rects = found
            break
        target += 1
    elapsed = time.monotonic() - t0
    if rects is None:
        if upper_bound is not None and len(seed) >= upper_bound:
            return None
        rects = seed.rects
    return SolveResult(len(rects), Tiling(n, rects), nodes, elapsed, optimal=True, perm=perm)


@dataclass
class GlobalResult:
    n: int
    min_count: int
    best_perm: Permutation
    witness: Tiling
    perms_examined: int = 0
    nodes_explored: int = 0
    elapsed: float = 0.0


def global_min(n: int, budget: SearchBudget | None = None, *, symmetry: bool = True) -> GlobalResult:
    """Exact minimum of :func:`min_partition` over all ``n!`` permutations.

    Permutations are visited in lexicographic order with an incumbent cutoff,
    so the reported ``best_perm`` is the lexicographically least optimum.
    With ``symmetry`` only orbit-minimal permutations are solved; a
    permutation whose fooling-set bound already reaches the incumbent is
    dismissed without search.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the solver limit of {MAX_N}")
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    deadline = None if budget.max_time is None else t0 + budget.max_time
    best = None
    examined = 0
    nodes = 0
    for values in itertools.permutations(range(1, n + 1)):
        if symmetry and not is_canonical(values):
            continue
        perm = Permutation(n, values)
        examined += 1
        try:
            res = min_partition(perm, _remaining(deadline, budget, nodes),
                                upper_bound=None if best is None else best.min_count)
        except BudgetExceeded as exc:
            partial = None
            if best is not None:
                partial = GlobalResult(n, best.min_count, best.perm, best.witness, examined,
                                       nodes, time.monotonic() - t0)
            raise BudgetExceeded(f"global search for n={n} stopped after {examined} permutations",
                                 partial) from exc
        if res is None:
            continue
        nodes += res.nodes_explored
        if best is None or res.min_count < best.min_count:
            best = res
            log.debug("n=%d new incumbent %d at %s", n, res.min_count, values)
    return GlobalResult(n, best.min_count, best.perm, best.witness, examined, nodes,
                        time.monotonic() - t0)


def naive_global_min(n: int) -> tuple[int, Permutation]:
    """Reference oracle: solve every permutation independently with the plain
    corner bound, no symmetry reduction and no fooling sets."""
    best = None
    for values in itertools.permutations(range(1, n + 1)):
        perm = Permutation(n, values)
        count = min_partition(perm, fooling_bound=False).min_count
        if best is None or count < best[0]:
            best = (count, perm)
    return best


def refute_formula(formula: Callable[[int], int], n_range: Iterable[int],
                   budget: SearchBudget | None = None, *, known: dict[int, int] | None = None):
    """First ``n`` where ``formula(n)`` differs from the exact minimum.

    Returns ``(n, predicted, actual)`` or ``None``.  ``known`` may supply
    already-computed minima.
    """
    for n in n_range:
        actual = known[n] if known and n in known else global_min(n, budget).min_count
        predicted = formula(n)
        if predicted != actual:
            return n, predicted, actual
    return None


def check_witness(res: SolveResult) -> bool:
    return bool(verify_tiling(res.perm, res.witness)) and len(res.witness) == res.min_count
