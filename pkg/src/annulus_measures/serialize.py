"""Deterministic JSON emission with 17-significant-digit floats.

The standard json module formats floats with repr (shortest round-trip);
the output contract here pins 17 significant digits so emitted artifacts
are byte-stable across Python versions and parse back exactly.
"""

from __future__ import annotations

import json
import math


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x} cannot be serialized")
    return format(float(x), ".17g")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _emit(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _emit(obj, out: list, indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    pad_close = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            if not isinstance(k, str):
                raise TypeError(f"JSON object keys must be strings, got {type(k)}")
            out.append(pad + json.dumps(k) + ": ")
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad_close + "}")
    elif isinstance(obj, (list, tuple)):
        if not len(obj):
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad_close + "]")
    else:
        try:
            import numpy as np
            if isinstance(obj, np.integer):
                out.append(str(int(obj)))
                return
            if isinstance(obj, np.floating):
                out.append(format_float(float(obj)))
                return
            if isinstance(obj, np.ndarray):
                _emit(obj.tolist(), out, indent, level)
                return
        except ImportError:
            pass
        raise TypeError(f"cannot serialize {type(obj)}")
