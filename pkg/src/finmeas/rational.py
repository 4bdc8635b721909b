"""Exact rational plumbing: parsing, formatting, and the subset-enumeration cap."""

import os
from fractions import Fraction

DEFAULT_ATOM_CAP = 16


def as_fraction(value):
    """Coerce ints, Fractions and 'p/q' strings to Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not a rational: {value!r} (floats are not exact, use 'p/q')")


def format_fraction(value):
    """Render a Fraction as 'p/q' (or a bare integer when q = 1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value):
    """Render a float with 12 significant digits."""
    return format(float(value), ".12g")


def atom_cap():
    """Current subset-enumeration cap; FINMEAS_ATOM_CAP overrides the default.

    Raising the cap only affects runtime, never correctness.
    """
    raw = os.environ.get("FINMEAS_ATOM_CAP")
    if raw is None:
        return DEFAULT_ATOM_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError("FINMEAS_ATOM_CAP must be a positive integer")
    return cap
