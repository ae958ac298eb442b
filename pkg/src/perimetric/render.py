"""Exact-value rendering helpers for reports."""

from __future__ import annotations

from fractions import Fraction

_ROMAN = (
    (1000, "M"), (900, "CM"), (500, "D"), (400, "CD"),
    (100, "C"), (90, "XC"), (50, "L"), (40, "XL"),
    (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I"),
)


def format_fixed(value: Fraction | int, digits: int = 6) -> str:
    """Render an exact non-negative rational with fixed decimals, half-to-even."""
    frac = Fraction(value)
    num, den = frac.numerator, frac.denominator
    scaled = num * 10**digits
    q, r = divmod(scaled, den)
    if 2 * r > den or (2 * r == den and q % 2 == 1):
        q += 1
    whole, part = divmod(q, 10**digits)
    return f"{whole}.{part:0{digits}d}"


def fraction_str(value: Fraction | int) -> str:
    """Exact rational as 'p/q' (or a bare integer when q is 1)."""
    return str(Fraction(value))


def roman(n: int) -> str:
    if n <= 0:
        raise ValueError("roman numerals start at 1")
    out = []
    for base, glyph in _ROMAN:
        while n >= base:
            out.append(glyph)
            n -= base
    return "".join(out)
