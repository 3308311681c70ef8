"""Minimum rectangle tilings of grids with one hole per row and column."""
from .constructions import conjectured_min, reference_tiling_9, residue_permutation
from .core import Cell, MarkedSet, Permutation, Rect, Tiling, render_ascii, verify_tiling
from .foolingset import Certificate, certify, lds, lis, verify_fooling_set
from .solver import BudgetExceeded, SearchBudget, global_min, min_partition

__all__ = [
    "BudgetExceeded", "Cell", "Certificate", "MarkedSet", "Permutation", "Rect", "SearchBudget",
    "Tiling", "certify", "conjectured_min", "global_min", "lds", "lis", "min_partition",
    "reference_tiling_9", "render_ascii", "residue_permutation", "verify_fooling_set",
    "verify_tiling",
]

__version__ = "0.1.0"
