"""Coefficient handling shared by the exact and floating point code paths.

Every algebraic routine in this package is written against plain Python
arithmetic, so a "scalar" is anything supporting ``+``, ``-``, ``*`` and
division by integers.  In practice two instantiations are used: exact
``fractions.Fraction`` values and ``float``.  The helpers here parse and
serialize both, and provide exact integer roots for the places where the
theory produces perfect powers.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

DEFAULT_TOL = 1e-10


def tolerance() -> float:
    """Numeric comparison tolerance, overridable via the G2KIT_TOL env var."""
    raw = os.environ.get("G2KIT_TOL")
    if raw is None:
        return DEFAULT_TOL
    return float(raw)


def parse_scalar(value):
    """Parse a JSON-level scalar: int, float, or a string fraction "n/d"."""
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool):
        raise TypeError("boolean is not a valid coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise TypeError(f"cannot parse scalar {value!r}")


def scalar_to_json(value):
    """Serialize a coefficient for the JSON form schema."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    return float(value)


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def as_float(value) -> float:
    return float(value)


def _integer_nth_root(n: int, k: int):
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def exact_nth_root(value, k: int):
    """Exact k-th root of an int/Fraction, or None when irrational.

    Negative inputs are allowed for odd k.
    """
    frac = Fraction(value)
    sign = 1
    if frac < 0:
        if k % 2 == 0:
            return None
        sign, frac = -1, -frac
    num = _integer_nth_root(frac.numerator, k)
    den = _integer_nth_root(frac.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def exact_sqrt(value):
    return exact_nth_root(value, 2)


def scalar_sqrt(value):
    """Square root, staying exact when possible."""
    if is_exact(value):
        root = exact_sqrt(value)
        if root is not None:
            return root
    return math.sqrt(float(value))


def scalar_nth_root(value, k: int):
    """Real k-th root (odd k accepts negatives), staying exact when possible."""
    if is_exact(value):
        root = exact_nth_root(value, k)
        if root is not None:
            return root
    x = float(value)
    if x < 0:
        if k % 2 == 0:
            raise ValueError("even root of a negative number")
        return -((-x) ** (1.0 / k))
    return x ** (1.0 / k)
