"""Grid vocabulary: cells, rectangles, hole permutations and tilings.

Coordinates are 1-based everywhere, rows first.  A ``Rect`` is an
inclusive block ``rows r1..r2 x cols c1..c2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence


class Cell(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True, order=True)
class Rect:
    r1: int
    r2: int
    c1: int
    c2: int

    def __post_init__(self):
        if self.r1 > self.r2 or self.c1 > self.c2:
            raise ValueError(f"degenerate rect {self!r}")

    @property
    def area(self) -> int:
        return (self.r2 - self.r1 + 1) * (self.c2 - self.c1 + 1)

    @property
    def height(self) -> int:
        return self.r2 - self.r1 + 1

    @property
    def width(self) -> int:
        return self.c2 - self.c1 + 1

    def cells(self) -> Iterator[Cell]:
        for r in range(self.r1, self.r2 + 1):
            for c in range(self.c1, self.c2 + 1):
                yield Cell(r, c)

    def sort_key(self):
        return (self.r1, self.c1, self.r2, self.c2)


def rect_contains(rect: Rect, cell) -> bool:
    row, col = cell
    return rect.r1 <= row <= rect.r2 and rect.c1 <= col <= rect.c2


def rects_overlap(a: Rect, b: Rect) -> bool:
    return a.r1 <= b.r2 and b.r1 <= a.r2 and a.c1 <= b.c2 and b.c1 <= a.c2


def span(a, b) -> Rect:
    """Smallest rect containing both cells."""
    return Rect(min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]))


@dataclass(frozen=True)
class Permutation:
    """Hole configuration: row ``i`` has its hole at column ``map[i-1]``."""

    n: int
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if self.n < 1:
            raise ValueError(f"grid size must be >= 1, got {self.n}")
        if len(self.map) != self.n:
            raise ValueError(f"map has {len(self.map)} entries, expected n={self.n}")
        if sorted(self.map) != list(range(1, self.n + 1)):
            raise ValueError(f"not a bijection on 1..{self.n}: {list(self.map)}")

    @classmethod
    def from_sequence(cls, values: Sequence[int]) -> "Permutation":
        return cls(len(values), tuple(values))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.map[i - 1]

    def __len__(self):
        return self.n

    @property
    def holes(self) -> tuple[Cell, ...]:
        return tuple(Cell(i, c) for i, c in enumerate(self.map, start=1))

    def is_hole(self, cell) -> bool:
        row, col = cell
        return 1 <= row <= self.n and self.map[row - 1] == col

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, c in enumerate(self.map, start=1):
            inv[c - 1] = i
        return Permutation(self.n, tuple(inv))


@dataclass(frozen=True)
class Tiling:
    n: int
    rects: tuple[Rect, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))

    def __len__(self):
        return len(self.rects)

    def __eq__(self, other):
        # rects are an unordered collection
        if not isinstance(other, Tiling):
            return NotImplemented
        return self.n == other.n and sorted(self.rects) == sorted(other.rects)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.rects))))

    def sorted(self) -> "Tiling":
        return Tiling(self.n, tuple(sorted(self.rects, key=Rect.sort_key)))


@dataclass(frozen=True)
class MarkedSet:
    """Cells marked on an ``n x n`` grid, e.g. a candidate fooling set."""

    n: int
    cells: tuple[Cell, ...] = ()

    def __post_init__(self):
        cells = tuple(Cell(int(r), int(c)) for r, c in self.cells)
        if len(set(cells)) != len(cells):
            raise ValueError("duplicate cells in marked set")
        object.__setattr__(self, "cells", cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __eq__(self, other):
        if not isinstance(other, MarkedSet):
            return NotImplemented
        return self.n == other.n and set(self.cells) == set(other.cells)

    def __hash__(self):
        return hash((self.n, frozenset(self.cells)))


class TilingSizeError(ValueError):
    """Permutation and tiling describe different grid sizes."""


class VerifyResult(NamedTuple):
    accepted: bool
    clause: str | None = None  # bounds | overlap | hole | coverage
    message: str = ""
    witness: object = None

    def __bool__(self):
        return self.accepted


ACCEPT = VerifyResult(True)


def verify_tiling(perm: Permutation, tiling: Tiling) -> VerifyResult:
    """Check that ``tiling`` exactly covers the non-hole cells of ``perm``.

    Clauses are checked in the fixed order bounds, overlap, hole, coverage and
    the first failure is returned with a witness.
    """
    if perm.n != tiling.n:
        raise TilingSizeError(f"permutation has n={perm.n}, tiling has n={tiling.n}")
    n = perm.n
    rects = tiling.rects
    for r in rects:
        if r.r1 < 1 or r.c1 < 1 or r.r2 > n or r.c2 > n:
            return VerifyResult(False, "bounds", f"{r} leaves the {n}x{n} grid", r)
    for a_idx in range(len(rects)):
        a = rects[a_idx]
        for b in rects[a_idx + 1:]:
            if rects_overlap(a, b):
                return VerifyResult(False, "overlap", f"{a} overlaps {b}", (a, b))
    for r in rects:
        for hole in perm.holes:
            if rect_contains(r, hole):
                return VerifyResult(False, "hole", f"{r} covers hole {tuple(hole)}", (r, hole))
    # Disjoint and in-grid, so coverage reduces to an area count; still locate
    # a witness cell when it fails.
    covered = sum(r.area for r in rects)
    if covered != n * n - n:
        grid = [[False] * (n + 1) for _ in range(n + 1)]
        for r in rects:
            for cell in r.cells():
                grid[cell.row][cell.col] = True
        for row in range(1, n + 1):
            for col in range(1, n + 1):
                if not grid[row][col] and not perm.is_hole((row, col)):
                    return VerifyResult(False, "coverage", f"cell {(row, col)} is uncovered",
                                        Cell(row, col))
    return ACCEPT


def covered_cells(tiling: Tiling) -> set[Cell]:
    return {cell for r in tiling.rects for cell in r.cells()}


def _labels() -> Iterator[str]:
    yield from "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    yield from "abcdefghijklmnopqrstuvwxyz"
    while True:
        yield "?"


def render_ascii(perm: Permutation, shapes: Tiling | MarkedSet | Iterable[Rect] = (),
                 margin: dict[int, str] | None = None) -> str:
    """Draw the grid one row per line.

    Holes print as ``.``, tiles by a label in sorted rect order, marked cells as
    ``#``.  Nothing is validated: overlapping rects simply overwrite.  ``margin``
    optionally maps row numbers to a tag printed after the row.
    """
    n = perm.n
    if getattr(shapes, "n", n) != n:
        raise TilingSizeError(f"permutation has n={n}, shapes have n={shapes.n}")
    grid = [[" "] * n for _ in range(n)]
    if isinstance(shapes, MarkedSet):
        for r, c in shapes.cells:
            if 1 <= r <= n and 1 <= c <= n:
                grid[r - 1][c - 1] = "#"
    else:
        rects = shapes.rects if isinstance(shapes, Tiling) else tuple(shapes)
        for label, rect in zip(_labels(), sorted(rects, key=Rect.sort_key)):
            for r, c in rect.cells():
                if 1 <= r <= n and 1 <= c <= n:
                    grid[r - 1][c - 1] = label
    for r, c in perm.holes:
        grid[r - 1][c - 1] = "."
    lines = []
    for i, row in enumerate(grid, start=1):
        line = " ".join(row).rstrip() if not margin else " ".join(row)
        if margin:
            line = f"{line} {margin.get(i, ' ')}".rstrip()
        lines.append(line)
    return "\n".join(lines)
