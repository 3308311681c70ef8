"""JSON text forms of permutations, tilings, certificates and solve results.

All coordinates are 1-based, field names are fixed::

    {"n": 3, "map": [2, 3, 1]}
    {"n": 2, "rects": [{"r1": 1, "r2": 1, "c1": 2, "c2": 2}, ...]}
    {"n": .., "perm": [..], "cells": [{"row": .., "col": ..}], "size": .., "valid": .., "target": ..}
"""
from __future__ import annotations

import json
from pathlib import Path

from .core import Cell, MarkedSet, Permutation, Rect, Tiling
from .foolingset import Certificate


class ParseError(ValueError):
    """Malformed input; the message names the offending field."""


def _require(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"{where}.{key}: expected integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__}, got {value!r}")
    return value


def _int_list(obj, key, where):
    values = _require(obj, key, list, where)
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"{where}.{key}[{i}]: expected integer, got {v!r}")
    return values


def perm_to_dict(perm: Permutation) -> dict:
    return {"n": perm.n, "map": list(perm.map)}


def perm_from_dict(obj, where="permutation") -> Permutation:
    n = _require(obj, "n", int, where)
    values = _int_list(obj, "map", where)
    if len(values) != n:
        raise ParseError(f"{where}.map: has {len(values)} entries, expected {n}")
    if sorted(values) != list(range(1, n + 1)):
        raise ParseError(f"{where}.map: not a bijection on 1..{n}")
    return Permutation(n, tuple(values))


def tiling_to_dict(tiling: Tiling) -> dict:
    return {"n": tiling.n,
            "rects": [{"r1": r.r1, "r2": r.r2, "c1": r.c1, "c2": r.c2} for r in tiling.rects]}


def tiling_from_dict(obj, where="tiling") -> Tiling:
    n = _require(obj, "n", int, where)
    rects = []
    for i, item in enumerate(_require(obj, "rects", list, where)):
        loc = f"{where}.rects[{i}]"
        r1, r2, c1, c2 = (_require(item, key, int, loc) for key in ("r1", "r2", "c1", "c2"))
        if r1 > r2 or c1 > c2:
            raise ParseError(f"{loc}: empty range r1={r1} r2={r2} c1={c1} c2={c2}")
        rects.append(Rect(r1, r2, c1, c2))
    return Tiling(n, tuple(rects))


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "n": cert.n,
        "perm": list(cert.perm.map),
        "cells": [{"row": c.row, "col": c.col} for c in cert.cells],
        "size": cert.size,
        "valid": cert.valid,
        "target": cert.target,
    }


def certificate_from_dict(obj, where="certificate") -> Certificate:
    n = _require(obj, "n", int, where)
    perm = perm_from_dict({"n": n, "map": _int_list(obj, "perm", where)}, where)
    cells = []
    for i, item in enumerate(_require(obj, "cells", list, where)):
        loc = f"{where}.cells[{i}]"
        cells.append(Cell(_require(item, "row", int, loc), _require(item, "col", int, loc)))
    if len(set(cells)) != len(cells):
        raise ParseError(f"{where}.cells: duplicate cells")
    size = _require(obj, "size", int, where)
    if size != len(cells):
        raise ParseError(f"{where}.size: {size} but {len(cells)} cells listed")
    return Certificate(perm, MarkedSet(n, tuple(cells)), size,
                       _require(obj, "valid", bool, where), _require(obj, "target", int, where))


_WRITERS = {Permutation: perm_to_dict, Tiling: tiling_to_dict, Certificate: certificate_to_dict}
_READERS = {"permutation": perm_from_dict, "tiling": tiling_from_dict,
            "certificate": certificate_from_dict}


def to_dict(obj) -> dict:
    for kind, writer in _WRITERS.items():
        if isinstance(obj, kind):
            return writer(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=None) -> str:
    return json.dumps(to_dict(obj), indent=indent)


def loads(text: str, kind: str):
    """Parse ``text`` as a ``permutation``, ``tiling`` or ``certificate``."""
    try:
        reader = _READERS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    # accept CLI output that wraps the object, e.g. {"permutation": ..., "tiling": ...}
    if isinstance(obj, dict) and "n" not in obj and isinstance(obj.get(kind), dict):
        obj = obj[kind]
    return reader(obj)


def load(path, kind: str):
    return loads(Path(path).read_text(encoding="utf-8"), kind)


def dump(obj, path, indent=2):
    Path(path).write_text(dumps(obj, indent=indent) + "\n", encoding="utf-8")
