"""Upper-bound side: residue-block permutations for ``n = k*k`` and fixtures."""
from __future__ import annotations

from .core import Permutation, Rect, Tiling, verify_tiling
from .solver import SearchBudget, SolveResult, min_partition


def residue_permutation(k: int) -> Permutation:
    """Residue-block hole pattern on a ``k^2`` grid.

    Rows come in ``k`` blocks of ``k``; block ``b`` places its holes on the
    columns congruent to ``b`` mod ``k``, in descending order.  For ``k=3``
    this is ``(7,4,1,8,5,2,9,6,3)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    values = [(k - j) * k + b for b in range(1, k + 1) for j in range(1, k + 1)]
    return Permutation(k * k, tuple(values))


def has_block_structure(perm: Permutation, k: int) -> bool:
    """True if each block of ``k`` consecutive rows is one residue class mod ``k``
    listed in descending order, block ``b`` holding the class of ``b``."""
    if perm.n != k * k:
        return False
    for b in range(1, k + 1):
        block = perm.map[(b - 1) * k: b * k]
        if list(block) != sorted(block, reverse=True):
            return False
        if any((v - b) % k for v in block):
            return False
    return True


def conjectured_min(k: int) -> int:
    """``k^2 + 2k - 3`` tiles for the ``k^2 x k^2`` grid."""
    if k < 2:
        raise ValueError("formula is stated for k >= 2")
    return k * k + 2 * k - 3


_TILING_9 = {
    "A": (1, 2, 1, 3),
    "B": (1, 3, 8, 9),
    "L": (1, 1, 4, 6),
    "C": (2, 4, 5, 7),
    "D": (3, 5, 2, 4),
    "E": (4, 6, 1, 1),
    "F": (4, 6, 9, 9),
    "G": (5, 7, 6, 8),
    "H": (6, 8, 3, 5),
    "I": (7, 9, 1, 2),
    "J": (8, 9, 7, 9),
    "K": (9, 9, 4, 6),
}


def reference_tiling_9() -> tuple[Permutation, Tiling]:
    """The hand-drawn optimal 12-tile covering of the 9x9 residue pattern."""
    perm = Permutation(9, (7, 4, 1, 8, 5, 2, 9, 6, 3))
    return perm, Tiling(9, tuple(Rect(*v) for v in _TILING_9.values()))


def reference_labels_9() -> dict[str, Rect]:
    return {name: Rect(*v) for name, v in _TILING_9.items()}


def residue_upper_bound(k: int, budget: SearchBudget | None = None) -> SolveResult:
    """Solve the residue pattern exactly; checks it meets the conjectured count."""
    perm = residue_permutation(k)
    res = min_partition(perm, budget)
    assert verify_tiling(perm, res.witness)
    if k >= 2 and res.optimal and res.min_count != conjectured_min(k):
        raise AssertionError(f"k={k}: solver found {res.min_count}, formula gives {conjectured_min(k)}")
    return res
