"""Rational numbers: ``fractions.Fraction`` plus parsing and formatting."""

from fractions import Fraction
import math
import re

from ..errors import ParseError

Rat = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_rat(x):
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise ParseError(f"not a rational number: {x!r}")


def parse_rat(text):
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(x):
    """``"a/b"`` with ``b`` omitted when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_part(x):
    """Canonical orbit representative: the unique ``p`` in ``[0, 1)`` with ``x - p`` integral."""
    x = Fraction(x)
    return x - math.floor(x)


def is_integer(x):
    return Fraction(x).denominator == 1
