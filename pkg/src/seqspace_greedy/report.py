"""Deterministic JSON text: sorted keys, floats as %.12g, non-finite floats as strings."""

from __future__ import annotations

import json
import math

import numpy as np

FLOAT_FMT = "%.12g"


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return FLOAT_FMT % x


def to_json(obj, indent: int = 2) -> str:
    return _emit(obj, 0, indent) + "\n"


def _emit(obj, level: int, indent: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(obj[k], level + 1, indent)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_emit(v, level + 1, indent) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, level + 1, indent) for v in seq) + "\n" + end + "]"
    if hasattr(obj, "to_dict"):
        return _emit(obj.to_dict(), level, indent)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
