"""Canonical payload serialization.

Canonical form: JSON with sorted keys, compact separators, and floats in
their shortest round-trip decimal representation. Non-finite floats are
encoded as the strings "NaN", "Infinity" and "-Infinity"; fields that are
numeric by schema convert them back on load, so round-trips are lossless
while the files remain strict JSON.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

_NONFINITE = {"NaN": math.nan, "Infinity": math.inf, "-Infinity": -math.inf}


def _encode(obj):
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return "NaN"
        if math.isinf(f):
            return "Infinity" if f > 0 else "-Infinity"
        return f
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def canonical_dumps(obj) -> str:
    return json.dumps(_encode(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)


def canonical_loads(text: str):
    return json.loads(text)


def as_float(value) -> float:
    """Decode a numeric field that may carry a non-finite sentinel string."""
    if isinstance(value, str):
        if value in _NONFINITE:
            return _NONFINITE[value]
        raise ValueError(f"not a numeric value: {value!r}")
    return float(value)


def write_canonical(obj, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_dumps(obj) + "\n", encoding="utf-8")
    return path


def read_canonical(path: str | Path):
    return canonical_loads(Path(path).read_text(encoding="utf-8"))
