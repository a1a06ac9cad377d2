"""Deterministic JSON serialization for command results.

Exact rationals travel as strings so no precision is lost; floats are
printed with 17 significant digits, enough to round-trip a double.  The
emitter below is byte-deterministic: key order is the insertion order of the
payload builders, and no locale or platform state leaks into the output.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .errors import FreeLatticeError


def rational_str(q: Fraction) -> str:
    """'p/q' in lowest terms, 'p' when the denominator is one."""
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FreeLatticeError(f"not a rational number: {text!r}") from exc


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise FreeLatticeError("non-finite float in JSON payload")
    text = format(x, ".17g")
    # Keep the token a JSON number and visibly floating point.
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def to_jsonable(value):
    """Recursively rewrites Fractions to rational strings and tuples to
    lists, leaving a structure the canonical emitter accepts."""
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    return value


def canonical_dumps(doc) -> str:
    """Serializes with stable bytes: insertion-ordered keys, ASCII only,
    floats at 17 significant digits."""
    out: list[str] = []
    _emit(doc, out)
    return "".join(out)


def _emit(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, Fraction):
        out.append(json.dumps(rational_str(value)))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=True))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(", ")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key), ensure_ascii=True))
            out.append(": ")
            _emit(item, out)
        out.append("}")
    else:
        raise FreeLatticeError(
            f"cannot serialize {type(value).__name__} in a JSON payload"
        )
