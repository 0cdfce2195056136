"""Deterministic JSON and table rendering of reports.

Rationals are written as "p/q" strings (integers as "p"), floats as JSON
numbers with 17 significant digits, so every value round-trips exactly.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction as Q
from typing import Any

import numpy as np

SCHEMA_VERSION = 1


def rational(x) -> str:
    return str(Q(x))


def encode(obj: Any) -> Any:
    """Convert report values into plain JSON-ready Python objects."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Q):
        return rational(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [encode(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "value") and isinstance(obj.value, str):  # enums
        return obj.value
    raise TypeError(f"cannot encode {type(obj).__name__}")


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite float in report")
    text = f"{x:.17g}"
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialize an encoded report; key order is preserved."""
    return "".join(_emit(encode(obj), indent, 0)) + "\n"


def _emit(obj, indent: int, level: int):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{\n"
        for i, (k, v) in enumerate(obj.items()):
            yield f"{pad}{json.dumps(k)}: "
            yield from _emit(v, indent, level + 1)
            yield ",\n" if i < len(obj) - 1 else "\n"
        yield end + "}"
    elif isinstance(obj, list):
        if not obj:
            yield "[]"
            return
        if all(not isinstance(x, (dict, list)) for x in obj):
            yield "[" + ", ".join("".join(_emit(x, indent, level)) for x in obj) + "]"
            return
        yield "[\n"
        for i, v in enumerate(obj):
            yield pad
            yield from _emit(v, indent, level + 1)
            yield ",\n" if i < len(obj) - 1 else "\n"
        yield end + "]"
    elif isinstance(obj, bool) or obj is None:
        yield json.dumps(obj)
    elif isinstance(obj, float):
        yield format_float(obj)
    elif isinstance(obj, (int, str)):
        yield json.dumps(obj)
    else:  # pragma: no cover
        raise TypeError(type(obj).__name__)


def loads(text: str) -> Any:
    return json.loads(text)


def parse_rational(text: str) -> Q:
    return Q(text)


# --------------------------------------------------------------------------
# tables


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_cell(v) for v in x) + ")"
    if x is None:
        return "-"
    return str(x)


def table(headers: list[str], rows: list[list]) -> str:
    cells = [[_cell(x) for x in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def key_values(pairs: list[tuple[str, Any]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in pairs)
