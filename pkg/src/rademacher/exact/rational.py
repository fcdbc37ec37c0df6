"""Exact rationals.

The standard library :class:`fractions.Fraction` already keeps values in
lowest terms with a positive denominator, so it is used directly.
"""
from fractions import Fraction

Rational = Fraction


def parse_rational(text):
    """Parse the canonical ``"num/den"`` (or bare integer) text form."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
