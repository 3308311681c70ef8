"""Input coercion for the estimator and CLI layers."""
from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .core import Permutation, Tiling


def check_permutation(obj, n: int | None = None) -> Permutation:
    """Coerce a 1-based sequence, array, ``{"n", "map"}`` dict or ``Permutation``."""
    if isinstance(obj, Permutation):
        perm = obj
    elif isinstance(obj, Mapping):
        from .io import perm_from_dict

        perm = perm_from_dict(obj)
    elif isinstance(obj, str):
        try:
            values = [int(tok) for tok in obj.replace(",", " ").split()]
        except ValueError:
            raise ValueError(f"cannot read a permutation from {obj!r}") from None
        perm = Permutation.from_sequence(values)
    else:
        arr = np.asarray(obj)
        if arr.ndim != 1:
            raise ValueError(f"expected a 1-d sequence, got shape {arr.shape}")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.mod(arr, 1) == 0):
                raise ValueError("permutation entries must be integers")
        perm = Permutation.from_sequence([int(v) for v in arr])
    if n is not None and perm.n != n:
        raise ValueError(f"expected a permutation of size {n}, got {perm.n}")
    return perm


def check_permutations(X) -> list[Permutation]:
    """Coerce one permutation or a batch (2-d array, list of sequences) to a list."""
    if isinstance(X, (Permutation, Mapping, str)):
        return [check_permutation(X)]
    if isinstance(X, (list, tuple)) and X and all(isinstance(x, Permutation) for x in X):
        return list(X)
    arr = np.asarray(X, dtype=object if _ragged(X) else None)
    if arr.ndim == 1 and arr.dtype != object:
        return [check_permutation(arr)]
    if arr.ndim == 2 or arr.dtype == object:
        return [check_permutation(row) for row in X]
    raise ValueError(f"expected permutations, got array of shape {arr.shape}")


def _ragged(X) -> bool:
    try:
        lengths = {len(x) for x in X}
    except TypeError:
        return False
    return len(lengths) > 1


def check_tiling(obj, n: int | None = None) -> Tiling:
    if isinstance(obj, Tiling):
        tiling = obj
    elif isinstance(obj, Mapping):
        from .io import tiling_from_dict

        tiling = tiling_from_dict(obj)
    else:
        raise TypeError(f"cannot read a tiling from {type(obj).__name__}")
    if n is not None and tiling.n != n:
        raise ValueError(f"expected a tiling of size {n}, got {tiling.n}")
    return tiling
