"""Cyclic quotient singularities, singular strata and baskets.

Baskets of codimension-two weighted complete intersections are computed
stratum by stratum.  For a stratum P_T (all coordinates whose weight is
divisible by r) the restricted equations cut out finitely many points; the
weighted count prod(d_j)/prod(a_i) equals the sum of 1/|stabiliser| over
those points, so subtracting the contributions of deeper strata and
multiplying by r yields the number of index-r points.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Protocol, Sequence

from .errors import BasketError, InputError
from .results import CheckResult, passed
from .wps import WeightedSpace, h0_anticanonical, is_representable


# ---------------------------------------------------------------- types


@dataclass(frozen=True, eq=False)
class QuotientType:
    """The germ 1/r(b1,b2,b3); ``canonical`` is (1,a,r-a) with a <= r-a when terminal."""

    r: int
    weights: tuple[int, int, int]
    canonical: tuple[int, int, int] | None = field(default=None, compare=False)

    @property
    def a(self) -> int:
        if self.canonical is None:
            raise InputError(f"{self} is not terminal")
        return self.canonical[1]

    @property
    def key(self) -> tuple:
        """Identity of the analytic type: canonical triple when terminal."""
        if self.canonical:
            return (self.r, self.canonical)
        # smallest sorted unit multiple, so the key ignores the choice of generator
        units = (u for u in range(1, self.r) if gcd(u, self.r) == 1)
        return (self.r, min(tuple(sorted(u * x % self.r for x in self.weights)) for u in units))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientType):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        b = self.canonical or self.weights
        return f"1/{self.r}({b[0]},{b[1]},{b[2]})"

    def as_list(self) -> list[int]:
        b = self.canonical or self.weights
        return [self.r, *b]


def normalize_quotient_type(r: int, triple: Sequence[int]) -> QuotientType:
    """Search units and permutations for the terminal form 1/r(1,a,r-a)."""
    if isinstance(r, bool) or not isinstance(r, int) or r < 2:
        raise InputError(f"index must be an integer >= 2, got {r!r}")
    if len(triple) != 3:
        raise InputError("a quotient type needs exactly three weights")
    b = tuple(int(x) % r for x in triple)
    best: int | None = None
    for u in range(1, r):
        if gcd(u, r) != 1:
            continue
        m = sorted(u * x % r for x in b)
        # need some entry equal to 1 and the other two summing to r
        for i in range(3):
            if m[i] != 1:
                continue
            p, q = (m[j] for j in range(3) if j != i)
            if p and q and (p + q) == r and gcd(p, r) == 1:
                a = min(p, q)
                if best is None or a < best:
                    best = a
    canonical = (1, best, r - best) if best is not None else None
    return QuotientType(r, b, canonical)  # type: ignore[arg-type]


def is_terminal(t: QuotientType) -> bool:
    return t.canonical is not None


def rr_parameter(t: QuotientType) -> int:
    """The b of the presentation 1/r(1, r-1, b)."""
    r = t.r
    for u in range(1, r):
        if gcd(u, r) != 1:
            continue
        m = [u * x % r for x in t.weights]
        for i, j in itertools.permutations(range(3), 2):
            if m[i] == 1 and m[j] == r - 1:
                k = 3 - i - j
                return m[k]
    raise InputError(f"{t} has no presentation 1/r(1,r-1,b)")


# ---------------------------------------------------------------- strata


@dataclass(frozen=True)
class Stratum:
    r: int
    coords: tuple[str, ...]

    def __str__(self) -> str:
        return f"({self.r},{{{','.join(self.coords)}}})"


def singular_strata(space: WeightedSpace) -> list[Stratum]:
    """Maximal coordinate strata P_T for each index r > 1 occurring as a gcd of weights."""
    weights = space.weights
    indices: set[int] = set()
    for k in range(1, len(weights) + 1):
        for combo in itertools.combinations(weights, k):
            g = reduce(gcd, combo)
            if g > 1:
                indices.add(g)
    out = []
    for r in sorted(indices):
        coords = tuple(n for n, w in space.coordinates if w % r == 0)
        out.append(Stratum(r, coords))
    out.sort(key=lambda s: (s.r, s.coords))
    return out


class WciLike(Protocol):
    kind: str
    space: WeightedSpace
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class Empty:
    annotation: str = ""

    def __str__(self) -> str:
        return "Empty"


@dataclass(frozen=True)
class Points:
    orbifold_degree: Fraction
    effective: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"Points({self.orbifold_degree})"


@dataclass(frozen=True)
class Curve:
    def __str__(self) -> str:
        return "Curve"


def _require_wci(family: WciLike) -> None:
    if family.kind != "wci2" or len(family.degrees) != 2:
        raise InputError("stratum analysis needs a codimension-two complete intersection")


def stratum_orbifold_degree(family: WciLike, s: Stratum) -> Empty | Points | Curve:
    """Intersect X with the coordinate stratum P_T."""
    _require_wci(family)
    space = family.space
    weights = [space.weight(c) for c in s.coords]
    dim = len(s.coords) - 1
    effective = tuple(d for d in family.degrees if is_representable(d, weights))
    if len(effective) > dim:
        note = "pure power present" if dim == 0 else "over-determined stratum"
        return Empty(note)
    if len(effective) < dim:
        return Curve()
    return Points(Fraction(prod(effective), prod(weights)), effective)


# ---------------------------------------------------------------- baskets


@dataclass(frozen=True)
class StratumPoints:
    """Index-r points found on one stratum, with the data used to type them."""

    stratum: Stratum
    orbifold_degree: Fraction
    deeper: Fraction
    count: int
    qtype: QuotientType | None
    tangents: tuple[tuple[int, str], ...]
    assumptions: tuple[str, ...]


@dataclass(frozen=True)
class BasketAnalysis:
    strata: tuple[StratumPoints, ...]

    def basket(self) -> "Basket":
        counts: Counter = Counter()
        for sp in self.strata:
            if sp.count:
                counts[sp.qtype] += sp.count
        return Basket.from_counts(counts)


@dataclass(frozen=True)
class Basket:
    """Multiset of quotient types, kept sorted by (r, a)."""

    entries: tuple[tuple[QuotientType, int], ...]

    @classmethod
    def from_counts(cls, counts) -> "Basket":
        merged: Counter = Counter()
        items = counts.items() if hasattr(counts, "items") else counts
        for t, n in items:
            if n:
                merged[t] += n
        return cls(tuple(sorted(merged.items(), key=lambda kv: kv[0].key)))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict[QuotientType, int]:
        return dict(self.entries)

    def total(self) -> int:
        return sum(n for _, n in self.entries)

    def __str__(self) -> str:
        return ", ".join(f"{n} x {t}" if n > 1 else str(t) for t, n in self.entries)


def _tangent_choice(space: WeightedSpace, s: Stratum, lost: Sequence[tuple[int, int]]) -> tuple[tuple[int, str], ...] | None:
    """Pick one transverse coordinate per equation that vanishes on the stratum.

    ``lost`` lists (equation index, degree).  Coordinate c is valid for degree
    d when d - a_c is a positive degree realised by a monomial in the stratum
    coordinates.  Pairs are tried in lexicographic coordinate order.
    """
    t_weights = [space.weight(c) for c in s.coords]
    outside = [n for n in space.names if n not in s.coords]
    options = []
    for _, d in lost:
        valid = [c for c in outside
                 if d - space.weight(c) > 0 and is_representable(d - space.weight(c), t_weights)]
        options.append(valid)
    for combo in itertools.product(*options):
        if len(set(combo)) == len(combo):
            return tuple((j, c) for (j, _), c in zip(lost, combo))
    return None


def _transverse_type(space: WeightedSpace, s: Stratum, removed: set[str]) -> QuotientType:
    rest = [space.weight(n) for n in space.names if n not in s.coords and n not in removed]
    if len(rest) != 3:
        raise BasketError(f"stratum {s}: expected three transverse coordinates, got {len(rest)}")
    return normalize_quotient_type(s.r, rest)


def basket_analysis(family: WciLike) -> BasketAnalysis:
    """Stratum-by-stratum basket computation; raises BasketError on degenerate data."""
    _require_wci(family)
    space = family.space
    if not space.well_formed:
        raise InputError(f"{space} is not well formed")
    strata = singular_strata(space)
    found: dict[Stratum, StratumPoints] = {}
    for s in sorted(strata, key=lambda s: -s.r):
        res = stratum_orbifold_degree(family, s)
        if isinstance(res, Empty):
            found[s] = StratumPoints(s, Fraction(0), Fraction(0), 0, None, (), ())
            continue
        if isinstance(res, Curve):
            raise BasketError(f"X meets stratum {s} in a curve: singularities are not isolated")
        deeper = sum((Fraction(sp.count, sp.stratum.r) for t, sp in found.items()
                      if t != s and set(t.coords) < set(s.coords)), Fraction(0))
        raw = s.r * (res.orbifold_degree - deeper)
        if raw.denominator != 1 or raw < 0:
            raise BasketError(f"stratum {s}: non-integral point count {raw}")
        count = int(raw)
        qtype = None
        tangents: tuple[tuple[int, str], ...] = ()
        assumptions: tuple[str, ...] = ()
        if count:
            # equations not effective on the stratum each kill a transverse coordinate
            lost = [(j, d) for j, d in enumerate(family.degrees)
                    if not is_representable(d, [space.weight(c) for c in s.coords])]
            choice = _tangent_choice(space, s, lost)
            if choice is None:
                raise BasketError(f"stratum {s}: no tangent coordinates; X is not quasi-smooth there")
            tangents = choice
            qtype = _transverse_type(space, s, {c for _, c in choice})
            if not is_terminal(qtype):
                raise BasketError(f"stratum {s}: non-terminal type {qtype}")
            if len(s.coords) > 1:
                assumptions = ("restricted equations have simple zeros on the stratum",)
        found[s] = StratumPoints(s, res.orbifold_degree, deeper, count, qtype, tangents, assumptions)
    ordered = tuple(found[s] for s in strata)
    return BasketAnalysis(ordered)


def basket_wci(family: WciLike) -> Basket:
    """Full basket of a codimension-two weighted complete intersection."""
    return basket_analysis(family).basket()


# ---------------------------------------------------------------- numerics


@dataclass(frozen=True)
class KawamataNumbers:
    e3: Fraction
    b3: Fraction
    plus: bool


def kawamata_numbers(t: QuotientType, a3: Fraction) -> KawamataNumbers:
    """E^3 and B^3 for the Kawamata blowup of a 1/r(1,a,r-a) point."""
    if not is_terminal(t):
        raise InputError(f"{t} is not terminal")
    r, a = t.r, t.a
    e3 = Fraction(r * r, a * (r - a))
    b3 = Fraction(a3) - Fraction(1, r * a * (r - a))
    return KawamataNumbers(e3, b3, b3 > 0)


def rr_consistency(family, basket: Basket | Sequence[tuple[QuotientType, int]], a3: Fraction | None = None) -> CheckResult:
    """h0(-K) = A^3/2 + 3 - sum b(r-b)/2r over the basket."""
    if a3 is None:
        a3 = family.a3
    entries = basket.entries if isinstance(basket, Basket) else tuple(basket)
    correction = Fraction(0)
    for t, n in entries:
        if not is_terminal(t):
            raise InputError(f"{t} is not terminal")
        b = rr_parameter(t)
        correction += n * Fraction(b * (t.r - b), 2 * t.r)
    rhs = Fraction(a3) / 2 + 3 - correction
    lhs = h0_anticanonical(family.space)
    return CheckResult(
        name="riemann_roch",
        status=passed(rhs == lhs),
        values={"lhs": lhs, "rhs": rhs, "a3": Fraction(a3), "correction": correction},
    )


def curve_class_degree(a3: Fraction, m1: Fraction, m2: Fraction) -> Fraction:
    """A.(m1 A).(m2 A) = m1 m2 A^3."""
    m1, m2 = Fraction(m1), Fraction(m2)
    if m1 <= 0 or m2 <= 0:
        raise InputError("divisor multiples must be positive")
    return m1 * m2 * Fraction(a3)
