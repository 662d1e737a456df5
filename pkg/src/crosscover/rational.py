"""Exact rational scalars: construction, parsing, and p/q serialization.

gmpy2's mpq is the scalar type for every exact computation in this
package.  It is always reduced to lowest terms with a positive
denominator, and arithmetic never rounds.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

Rat = mpq


def rat(value, den=None) -> Rat:
    """Coerce ints, "p/q" strings, Fractions, or a (num, den) pair to Rat.

    Floats are rejected: they carry binary rounding error, and every
    caller of this function is on an exact path.  Convert floats
    deliberately with rat_from_float at the search/exact boundary.
    """
    if den is not None:
        return mpq(value, den)
    if isinstance(value, float):
        raise TypeError(
            "refusing implicit float -> rational conversion; use rat_from_float"
        )
    return mpq(value)


def rat_from_float(x: float) -> Rat:
    """Exact value of a binary float, with no denominator limit."""
    return mpq(Fraction(x))


def parse_rat(text: str) -> Rat:
    """Parse "p/q" or a bare integer string."""
    try:
        return mpq(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def fmt_rat(q) -> str:
    """Render as "p/q", or "n" when the denominator is 1."""
    return str(mpq(q))


def to_fraction(q) -> Fraction:
    q = mpq(q)
    return Fraction(int(q.numerator), int(q.denominator))
