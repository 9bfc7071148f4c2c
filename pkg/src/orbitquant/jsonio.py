"""Shared JSON encoding conventions.

Rationals travel as exact strings ("p/q" or "p"), matrices as row-major
nested lists, floats as decimal strings with 17 significant digits so
that every value round-trips bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import StructuralError


def frac_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def frac_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise StructuralError(f"expected an exact rational string, got {s!r}")


def float_to_str(x: float) -> str:
    return format(float(x), ".17g")


def matrix_to_json(m) -> list:
    out = []
    for row in m:
        out.append([
            frac_to_str(x) if isinstance(x, (Fraction, int)) else float_to_str(x)
            for x in row
        ])
    return out


def matrix_from_json(data, exact: bool = True):
    if exact:
        return [[frac_from_str(x) for x in row] for row in data]
    return [[float(x) for x in row] for row in data]


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def content_hash(obj, exclude_keys: tuple[str, ...] = ("elapsed_s", "content_hash")) -> str:
    """Stable sha256 over a JSON document, ignoring timing-style fields."""

    def strip(o):
        if isinstance(o, dict):
            return {k: strip(v) for k, v in o.items() if k not in exclude_keys}
        if isinstance(o, list):
            return [strip(v) for v in o]
        return o

    return hashlib.sha256(canonical_dumps(strip(obj)).encode()).hexdigest()
