"""Divisor classes on the Kawamata blowup of a terminal quotient point."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .singularities import QuotientType, is_terminal, kawamata_numbers


@dataclass(frozen=True)
class BlowupContext:
    """The point type and A^3 that fix the intersection form on Y."""

    point: QuotientType
    a3: Fraction

    def __post_init__(self):
        if not is_terminal(self.point):
            raise InputError(f"{self.point} is not terminal")
        object.__setattr__(self, "a3", Fraction(self.a3))

    @property
    def r(self) -> int:
        return self.point.r

    @property
    def e3(self) -> Fraction:
        return kawamata_numbers(self.point, self.a3).e3


@dataclass(frozen=True)
class BlowupDivisorClass:
    """The class alpha * phi^*A - (e/r) E."""

    alpha: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "e", Fraction(self.e))

    def __add__(self, other: "BlowupDivisorClass") -> "BlowupDivisorClass":
        return BlowupDivisorClass(self.alpha + other.alpha, self.e + other.e)

    def scale(self, k: Fraction | int) -> "BlowupDivisorClass":
        return BlowupDivisorClass(self.alpha * k, self.e * k)

    def __str__(self) -> str:
        return f"({self.alpha}, {self.e})"


def anticanonical() -> BlowupDivisorClass:
    """B = -K_Y = phi^*A - (1/r) E."""
    return BlowupDivisorClass(Fraction(1), Fraction(1))


def pullback() -> BlowupDivisorClass:
    return BlowupDivisorClass(Fraction(1), Fraction(0))


def exceptional(ctx: BlowupContext) -> BlowupDivisorClass:
    return BlowupDivisorClass(Fraction(0), Fraction(-ctx.r))


def triple_product(ctx: BlowupContext, c1: BlowupDivisorClass, c2: BlowupDivisorClass,
                   c3: BlowupDivisorClass) -> Fraction:
    """Intersection number on Y; the mixed terms (phi^*A)^2 E and phi^*A E^2 vanish."""
    r = ctx.r
    return (c1.alpha * c2.alpha * c3.alpha * ctx.a3
            - c1.e * c2.e * c3.e / (r ** 3) * ctx.e3)
