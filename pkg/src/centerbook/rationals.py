"""Exact rational values, serialized as "p/q" strings.

Fractions carry every probability, payoff, and expected value in the
engine. Floats never enter a computation: whether a book is a Dutch book
can hinge on a strict inequality, and no rounding error may decide it.
The one place a float appears is the optional decimal display mode,
applied after all arithmetic is done.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DocumentError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:\s*/\s*\d+)?$")


def parse_rational(value: object, where: str = "value") -> Fraction:
    """Parse "p/q" (or a bare integer) into a Fraction, rejecting decimals."""
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise DocumentError(
            f'{where}: decimal numbers are not accepted, write a "p/q" string'
        )
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL_RE.match(text):
            num, slash, den = (part.strip() for part in text.partition("/"))
            if not slash:
                return Fraction(int(num))
            if int(den) == 0:
                raise DocumentError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(num), int(den))
    raise DocumentError(f'{where}: {value!r} is not a "p/q" rational')


def format_rational(x: Fraction, decimal: bool = False) -> str:
    """Render a Fraction as "p/q" ("p" when integral), or as a decimal for display."""
    if decimal:
        return f"{float(x):g}"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
