"""Weighted projective spaces and graded monomial combinatorics."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .errors import InputError


@dataclass(frozen=True)
class WeightedSpace:
    """Ambient space P(a_0, ..., a_n) with named coordinates.

    ``coordinates`` is sorted by weight (stable, so equal weights keep the
    caller's order); ``display`` keeps the order the caller supplied.
    """

    coordinates: tuple[tuple[str, int], ...]
    display: tuple[tuple[str, int], ...] = field(compare=False)
    well_formed: bool = field(compare=False)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.coordinates)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.coordinates)

    def weight(self, name: str) -> int:
        for n, w in self.coordinates:
            if n == name:
                return w
        raise InputError(f"unknown coordinate {name!r}")

    def __len__(self) -> int:
        return len(self.coordinates)

    def __str__(self) -> str:
        return "P(" + ",".join(str(w) for w in self.weights) + ")"


def _is_well_formed(weights: Sequence[int]) -> bool:
    # gcd of any n of the n+1 weights is 1
    if len(weights) < 2:
        return True
    for i in range(len(weights)):
        others = weights[:i] + weights[i + 1:]
        if reduce(gcd, others) != 1:
            return False
    return True


def validate_space(raw: Iterable[tuple[str, int]]) -> WeightedSpace:
    """Build a WeightedSpace from ``(name, weight)`` pairs."""
    pairs = [tuple(p) for p in raw]
    if not pairs:
        raise InputError("a weighted projective space needs at least one coordinate")
    seen: set[str] = set()
    for name, w in pairs:
        if not isinstance(name, str) or not name:
            raise InputError(f"bad coordinate name {name!r}")
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise InputError(f"weight of {name!r} must be a positive integer, got {w!r}")
        if name in seen:
            raise InputError(f"duplicate coordinate name {name!r}")
        seen.add(name)
    display = tuple((n, w) for n, w in pairs)
    ordered = tuple(sorted(display, key=lambda p: p[1]))
    return WeightedSpace(ordered, display, _is_well_formed([w for _, w in ordered]))


def space_from_weights(weights: Sequence[int], names: Sequence[str] | None = None) -> WeightedSpace:
    """Convenience constructor using the conventional names x, y, z, s, t, u, v."""
    if names is None:
        names = default_names(len(weights))
    return validate_space(zip(names, weights))


def default_names(n: int) -> tuple[str, ...]:
    base = ("x", "y", "z", "s", "t", "u", "v")
    if n <= len(base):
        return base[:n]
    return tuple(f"x{i}" for i in range(n))


@dataclass(frozen=True)
class Monomial:
    """A monomial over a fixed space; ``exponents`` follows the space's coordinate order."""

    names: tuple[str, ...]
    exponents: tuple[int, ...]
    degree: int

    def as_dict(self) -> dict[str, int]:
        return {n: e for n, e in zip(self.names, self.exponents) if e}

    def __str__(self) -> str:
        parts = []
        for n, e in zip(self.names, self.exponents):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"


def _exponent_vectors(weights: Sequence[int], d: int) -> Iterator[tuple[int, ...]]:
    # lex order: higher powers of earlier coordinates first (x^3, x^2*y, ...)
    if not weights:
        if d == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(d // w, -1, -1):
        for tail in _exponent_vectors(rest, d - e * w):
            yield (e,) + tail


def monomials_of_degree(space: WeightedSpace, d: int) -> list[Monomial]:
    """All monomials of weighted degree exactly ``d``, lexicographic by exponent vector."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise InputError(f"degree must be a non-negative integer, got {d!r}")
    names = space.names
    return [Monomial(names, exps, d) for exps in _exponent_vectors(space.weights, d)]


def is_representable(d: int, weights: Iterable[int]) -> bool:
    """True iff some monomial in variables of the given weights has degree ``d``."""
    ws = sorted(set(weights))
    if d < 0:
        return False
    if d == 0:
        return True
    reachable = [False] * (d + 1)
    reachable[0] = True
    for w in ws:
        for k in range(w, d + 1):
            if reachable[k - w]:
                reachable[k] = True
    return reachable[d]


def anticanonical_degree_wci(space: WeightedSpace, d1: int, d2: int) -> Fraction:
    """A^3 = d1 d2 / prod(weights) for a codimension-two complete intersection."""
    return Fraction(d1 * d2, prod(space.weights))


def h0_anticanonical(space: WeightedSpace) -> int:
    """Number of degree-one monomials, i.e. of weight-one coordinates."""
    return sum(1 for w in space.weights if w == 1)
