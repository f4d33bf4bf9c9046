"""Parsing and rendering of exact rationals as ``"p/q"`` strings."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` into a Fraction; floats are rejected."""
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise InputError(f"not a rational: {text!r}")
    value = Fraction(text)
    if value.denominator == 0:  # pragma: no cover - Fraction raises first
        raise InputError(f"zero denominator: {text!r}")
    return value


def is_canonical_rational(text: str) -> bool:
    """True iff ``text`` is already in lowest terms with the ``/1`` omitted."""
    try:
        return fmt(parse_rational(text)) == text
    except (InputError, ZeroDivisionError):
        return False


def fmt(value: Fraction | int) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
