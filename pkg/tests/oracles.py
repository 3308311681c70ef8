"""Independent reference computations used as test oracles."""
import itertools

from hypothesis import strategies as st

from holetile.core import Permutation, Rect


def perms(min_n=1, max_n=7):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(Permutation.from_sequence))


def hole_free_rects(perm):
    n = perm.n
    holes = set(perm.holes)
    for r1, r2 in itertools.combinations_with_replacement(range(1, n + 1), 2):
        for c1, c2 in itertools.combinations_with_replacement(range(1, n + 1), 2):
            rect = Rect(r1, r2, c1, c2)
            if not any(cell in holes for cell in rect.cells()):
                yield rect


def brute_min_partition(perm):
    """Smallest exact cover of the non-hole cells by hole-free rects, by plain
    enumeration of every cover (no bounds, no ordering tricks)."""
    rects = [(frozenset(r.cells()), r) for r in hole_free_rects(perm)]
    target = frozenset((r, c) for r in range(1, perm.n + 1) for c in range(1, perm.n + 1)
                       if perm(r) != c)
    best = [len(target) + 1]

    def go(uncovered, count):
        if not uncovered:
            best[0] = min(best[0], count)
            return
        cell = min(uncovered)
        for cells, _ in rects:
            if cell in cells and cells <= uncovered:
                go(uncovered - cells, count + 1)

    go(target, 0)
    return best[0]


