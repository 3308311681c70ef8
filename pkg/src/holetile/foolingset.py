"""Fooling-set lower bounds via orthogonal fanning around a pivot hole.

Two cells are *separated* when the rectangle they span contains a hole; no
tile can then cover both.  A set of pairwise separated cells (a fooling set)
therefore needs at least that many tiles.

The fanning construction marks neighbours of holes, pointing away from a
pivot hole ``P``.  Inside each quadrant around ``P`` one monotone chain
through ``P`` (increasing in the NW/SE quadrants, decreasing in NE/SW) splits
the holes into two sides: each side gets the neighbour pointing away from the
chain, chain holes get both.  Two marked cells can only clash when each is
displaced towards the other's hole across an empty box, and this orientation
rules that out, so the result is a fooling set of size at least
``n + |inc| + |dec| - 3`` (up to four neighbours fall off the border).
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .core import Cell, MarkedSet, Permutation, Tiling, rect_contains, verify_tiling


@dataclass(frozen=True)
class Chain:
    kind: str  # "LIS" or "LDS"
    indices: tuple[int, ...]
    values: tuple[int, ...]

    def __len__(self):
        return len(self.indices)


def _longest_from(values: Sequence[int]) -> list[int]:
    """``out[i]`` = length of the longest strictly increasing run starting at ``i``."""
    tails: list[int] = []  # patience piles over negated values, scanned right to left
    out = [0] * len(values)
    for i in range(len(values) - 1, -1, -1):
        v = -values[i]
        k = bisect.bisect_left(tails, v)
        if k == len(tails):
            tails.append(v)
        else:
            tails[k] = v
        out[i] = k + 1
    return out


def _canonical_increasing(values: Sequence[int]) -> list[int]:
    """0-based positions of the lexicographically least longest increasing subsequence."""
    if not values:
        return []
    from_here = _longest_from(values)
    need = max(from_here)
    picked = []
    last = -math.inf
    for i, v in enumerate(values):
        if need and from_here[i] == need and v > last:
            picked.append(i)
            last = v
            need -= 1
    return picked


def lis(perm: Permutation) -> Chain:
    idx = _canonical_increasing(perm.map)
    return Chain("LIS", tuple(i + 1 for i in idx), tuple(perm.map[i] for i in idx))


def lds(perm: Permutation) -> Chain:
    idx = _canonical_increasing([-v for v in perm.map])
    return Chain("LDS", tuple(i + 1 for i in idx), tuple(perm.map[i] for i in idx))


def _chain_through(perm: Permutation, pivot_row: int, kind: str) -> Chain:
    """Canonical longest monotone chain containing the pivot hole."""
    sign = 1 if kind == "LIS" else -1
    pv = perm(pivot_row)
    before = [i for i in range(1, pivot_row) if sign * perm(i) < sign * pv]
    after = [i for i in range(pivot_row + 1, perm.n + 1) if sign * perm(i) > sign * pv]
    head = [before[k] for k in _canonical_increasing([sign * perm(i) for i in before])]
    tail = [after[k] for k in _canonical_increasing([sign * perm(i) for i in after])]
    rows = tuple(head + [pivot_row] + tail)
    return Chain(kind, rows, tuple(perm(i) for i in rows))


def _through_lengths(perm: Permutation, sign: int) -> list[int]:
    vals = [sign * v for v in perm.map]
    ending = _longest_from([-v for v in reversed(vals)])[::-1]
    starting = _longest_from(vals)
    return [e + s - 1 for e, s in zip(ending, starting)]


def choose_pivot(perm: Permutation) -> int:
    """Row of the pivot hole.

    The pivot maximises (longest increasing chain through it) + (longest
    decreasing chain through it).  A hole shared by the canonical LIS and LDS
    wins ties, then the smallest row.
    """
    inc = _through_lengths(perm, 1)
    dec = _through_lengths(perm, -1)
    score = [a + b for a, b in zip(inc, dec)]
    best = max(score)
    shared = set(lis(perm).indices) & set(lds(perm).indices)
    for row in sorted(shared):
        if score[row - 1] == best:
            return row
    return score.index(best) + 1


@dataclass(frozen=True)
class Fanning:
    """A fanning construction with the chains that oriented it."""

    pivot: Cell
    inc: Chain
    dec: Chain
    cells: MarkedSet


def _side(perm, row, chain_rows, increasing):
    """+1 if the hole lies NE (increasing chain) / SE (decreasing chain) of some
    chain hole, -1 for the opposite side, 0 on the chain."""
    if row in chain_rows:
        return 0
    col = perm(row)
    for c in chain_rows:
        cc = perm(c)
        if increasing:
            if row < c and col > cc:
                return 1
            if row > c and col < cc:
                return -1
        else:
            if row > c and col > cc:
                return 1
            if row < c and col < cc:
                return -1
    # only reachable if the chain is not maximal through the pivot
    raise AssertionError(f"hole in row {row} extends the chain {chain_rows}")


def fanning(perm: Permutation) -> Fanning:
    n = perm.n
    if n == 1:
        p = Cell(1, perm(1))
        return Fanning(p, Chain("LIS", (1,), (1,)), Chain("LDS", (1,), (1,)), MarkedSet(1, ()))
    q = choose_pivot(perm)
    p = perm(q)
    inc = _chain_through(perm, q, "LIS")
    dec = _chain_through(perm, q, "LDS")
    inc_rows, dec_rows = set(inc.indices), set(dec.indices)
    marked: list[Cell] = []

    def mark(row, col):
        if 1 <= row <= n and 1 <= col <= n:
            marked.append(Cell(row, col))

    for row, col in perm.holes:
        h = 1 if col > p else -1  # horizontal outward step
        v = 1 if row > q else -1  # vertical outward step
        if row == q:
            for dr, dc in ((0, -1), (0, 1), (-1, 0), (1, 0)):
                mark(row + dr, col + dc)
            continue
        if (row < q) == (col < p):  # NW or SE: split by the increasing chain
            side = _side(perm, row, inc_rows, True)
            # NE side of the chain: in SE that is "right" (h), in NW that is "up" (v)
            horizontal = side == 0 or (side == 1) == (col > p)
        else:  # NE or SW: split by the decreasing chain
            side = _side(perm, row, dec_rows, False)
            # SE side of the chain: in NE that is "right", in SW that is "down"
            horizontal = side == 0 or (side == 1) == (col > p)
        vertical = side == 0 or not horizontal
        if horizontal:
            mark(row, col + h)
        if vertical:
            mark(row + v, col)
    # Separation rules out coincident cells; dedupe anyway so the set stays
    # well-formed for the verifier to judge.
    cells = tuple(dict.fromkeys(marked))
    return Fanning(Cell(q, p), inc, dec, MarkedSet(n, cells))


def build_fanning(perm: Permutation) -> MarkedSet:
    return fanning(perm).cells


class MarkedHoleError(ValueError):
    """A marked cell coincides with a hole."""


class FoolingCheck(NamedTuple):
    valid: bool
    pair: tuple[Cell, Cell] | None = None

    def __bool__(self):
        return self.valid


def _hole_prefix(perm: Permutation) -> np.ndarray:
    n = perm.n
    grid = np.zeros((n + 1, n + 1), dtype=np.int32)
    grid[np.arange(1, n + 1), np.asarray(perm.map)] = 1
    return grid.cumsum(0).cumsum(1)


def _check_cells(perm, cells):
    n = perm.n
    for r, c in cells:
        if not (1 <= r <= n and 1 <= c <= n):
            raise ValueError(f"cell {(r, c)} lies outside the {n}x{n} grid")
        if perm(r) == c:
            raise MarkedHoleError(f"cell {(r, c)} is a hole")


def verify_fooling_set(perm: Permutation, cells: MarkedSet | Sequence) -> FoolingCheck:
    """Check that every pair of cells spans a rectangle containing a hole.

    Returns the first offending pair in index order when not.
    """
    cells = tuple(Cell(*c) for c in cells)
    if len(set(cells)) != len(cells):
        raise ValueError("duplicate cells")
    _check_cells(perm, cells)
    m = len(cells)
    if m < 2:
        return FoolingCheck(True)
    pre = _hole_prefix(perm)
    rows = np.array([c.row for c in cells])
    cols = np.array([c.col for c in cells])
    block = max(1, 4_000_000 // m)
    for start in range(0, m, block):
        a = slice(start, min(start + block, m))
        r1 = np.minimum.outer(rows[a], rows)
        r2 = np.maximum.outer(rows[a], rows)
        c1 = np.minimum.outer(cols[a], cols)
        c2 = np.maximum.outer(cols[a], cols)
        count = pre[r2, c2] - pre[r1 - 1, c2] - pre[r2, c1 - 1] + pre[r1 - 1, c1 - 1]
        i_idx = np.arange(a.start, a.stop)[:, None]
        bad = (count == 0) & (np.arange(m)[None, :] > i_idx)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return FoolingCheck(False, (cells[start + i], cells[j]))
    return FoolingCheck(True)


def verify_fooling_set_naive(perm: Permutation, cells) -> FoolingCheck:
    """Reference checker: scan all holes for every pair."""
    cells = tuple(Cell(*c) for c in cells)
    _check_cells(perm, cells)
    holes = perm.holes
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            r1, r2 = sorted((a.row, b.row))
            c1, c2 = sorted((a.col, b.col))
            if not any(r1 <= hr <= r2 and c1 <= hc <= c2 for hr, hc in holes):
                return FoolingCheck(False, (a, b))
    return FoolingCheck(True)


def target_size(n: int) -> int:
    """``n + 2*ceil(sqrt(n)) - 3``, a reference line only."""
    return n + 2 * (math.isqrt(n - 1) + 1) - 3


@dataclass(frozen=True)
class Certificate:
    perm: Permutation
    cells: MarkedSet
    size: int
    valid: bool
    target: int
    removed: int = field(default=0, compare=False)

    @property
    def n(self):
        return self.perm.n


def _repair(perm, cells):
    cells = list(cells)
    removed = 0
    while True:
        check = verify_fooling_set(perm, cells)
        if check.valid:
            return cells, removed
        a, b = check.pair
        drop = max((a, b), key=lambda c: (c.row + c.col, c.row))
        cells.remove(drop)
        removed += 1


def certify(perm: Permutation) -> Certificate:
    """Fanning set for ``perm``, repaired if needed, packaged as a certificate."""
    cells = build_fanning(perm).cells
    cells, removed = _repair(perm, cells)
    ms = MarkedSet(perm.n, tuple(cells))
    valid = verify_fooling_set(perm, ms).valid
    return Certificate(perm, ms, len(ms), valid, target_size(perm.n), removed)


class LemmaViolation(AssertionError):
    """A tile covers two cells of a verified fooling set."""


def key_lemma_check(perm: Permutation, cert: Certificate, tiling: Tiling) -> bool:
    if not cert.valid or not verify_fooling_set(perm, cert.cells).valid:
        raise ValueError("certificate is not a valid fooling set")
    res = verify_tiling(perm, tiling)
    if not res:
        raise ValueError(f"tiling rejected: {res.message}")
    for rect in tiling.rects:
        inside = [c for c in cert.cells if rect_contains(rect, c)]
        if len(inside) > 1:
            raise LemmaViolation(f"{rect} covers marked cells {inside[0]} and {inside[1]}")
    if len(tiling.rects) < cert.size:
        raise LemmaViolation(f"{len(tiling.rects)} tiles but fooling set of size {cert.size}")
    return True


def render_certificate(cert: Certificate) -> str:
    """Grid with holes ``.``, marked cells ``#`` and a margin tagging rows of the
    increasing chain ``>`` and of the decreasing chain ``v``."""
    from .core import render_ascii

    perm = cert.perm
    margin = {}
    if perm.n > 1:
        fan = fanning(perm)
        for row in fan.inc.indices:
            margin[row] = ">"
        for row in fan.dec.indices:
            margin[row] = margin.get(row, "") + "v"
    return render_ascii(perm, cert.cells, margin=margin)
