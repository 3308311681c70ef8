"""The eight symmetries of the square acting on hole permutations and tilings."""
from __future__ import annotations

from .core import Permutation, Rect, Tiling

# Each symmetry is (transpose, flip_rows, flip_cols), applied in that order.
SYMMETRIES = tuple((t, fr, fc) for t in (False, True) for fr in (False, True) for fc in (False, True))


def _map_cell(sym, n, row, col):
    t, fr, fc = sym
    if t:
        row, col = col, row
    if fr:
        row = n + 1 - row
    if fc:
        col = n + 1 - col
    return row, col


def apply_to_perm(sym, perm: Permutation) -> Permutation:
    n = perm.n
    out = [0] * n
    for row, col in perm.holes:
        r, c = _map_cell(sym, n, row, col)
        out[r - 1] = c
    return Permutation(n, tuple(out))


def apply_to_rect(sym, n: int, rect: Rect) -> Rect:
    ra, ca = _map_cell(sym, n, rect.r1, rect.c1)
    rb, cb = _map_cell(sym, n, rect.r2, rect.c2)
    return Rect(min(ra, rb), max(ra, rb), min(ca, cb), max(ca, cb))


def apply_to_tiling(sym, tiling: Tiling) -> Tiling:
    return Tiling(tiling.n, tuple(apply_to_rect(sym, tiling.n, r) for r in tiling.rects))


def orbit(perm: Permutation) -> set[tuple[int, ...]]:
    return {apply_to_perm(s, perm).map for s in SYMMETRIES}


def is_canonical(values) -> bool:
    """True if ``values`` is the lexicographically least map in its orbit."""
    values = tuple(values)
    n = len(values)
    inv = [0] * n
    for i, v in enumerate(values):
        inv[v - 1] = i + 1
    candidates = (
        tuple(n + 1 - v for v in values),
        values[::-1],
        tuple(n + 1 - v for v in values[::-1]),
        tuple(inv),
        tuple(n + 1 - v for v in inv),
        tuple(inv[::-1]),
        tuple(n + 1 - v for v in inv[::-1]),
    )
    return all(values <= c for c in candidates)


def unmap_cell(sym, n, row, col):
    """Inverse of the cell action of ``sym``."""
    t, fr, fc = sym
    if fc:
        col = n + 1 - col
    if fr:
        row = n + 1 - row
    if t:
        row, col = col, row
    return row, col
