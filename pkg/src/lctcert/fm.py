"""Exact Fourier-Motzkin elimination for small systems of linear inequalities.

A constraint ``coeffs . g + const REL 0`` is kept as a pair (linear form,
strict flag) after rewriting it as ``form >= 0`` or ``form > 0``.  Strictness
survives elimination: the combination of two bounds is strict when either
bound is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .rational import parse_rational

RELATIONS = (">", ">=", "<=", "<", "=")
MAX_UNKNOWNS = 3
MAX_CONSTRAINTS = 16


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    rel: str

    def holds(self, point: Sequence[Fraction]) -> bool:
        value = sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0)) + self.const
        return {
            ">": value > 0,
            ">=": value >= 0,
            "<=": value <= 0,
            "<": value < 0,
            "=": value == 0,
        }[self.rel]

    def __str__(self) -> str:
        terms = [f"{c}*g{i + 1}" for i, c in enumerate(self.coeffs) if c]
        terms.append(str(self.const))
        return " + ".join(terms) + f" {self.rel} 0"


@dataclass(frozen=True)
class Infeasible:
    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Feasible:
    witness: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return True


# internal row: (coefficients, constant, strict) meaning coeffs.g + const (> or >=) 0
_Row = tuple[tuple[Fraction, ...], Fraction, bool]


def constraint(coeffs: Sequence, const, rel: str) -> Constraint:
    if rel not in RELATIONS:
        raise InputError(f"unknown relation {rel!r}")
    return Constraint(tuple(parse_rational(c) for c in coeffs), parse_rational(const), rel)


def _normalize(c: Constraint) -> list[_Row]:
    pos = (c.coeffs, c.const)
    neg = (tuple(-x for x in c.coeffs), -c.const)
    if c.rel == ">":
        return [(*pos, True)]
    if c.rel == ">=":
        return [(*pos, False)]
    if c.rel == "<":
        return [(*neg, True)]
    if c.rel == "<=":
        return [(*neg, False)]
    return [(*pos, False), (*neg, False)]


def _eliminate(rows: list[_Row], k: int) -> list[_Row]:
    lower, upper, keep = [], [], []
    for row in rows:
        a = row[0][k]
        (lower if a > 0 else upper if a < 0 else keep).append(row)
    out = list(keep)
    for lc, lk, ls in lower:
        for uc, uk, us in upper:
            p, q = lc[k], -uc[k]
            # q * lower + p * upper cancels variable k
            coeffs = tuple(q * x + p * y for x, y in zip(lc, uc))
            out.append((coeffs, q * lk + p * uk, ls or us))
    return _dedupe(out)


def _dedupe(rows: list[_Row]) -> list[_Row]:
    seen, out = set(), []
    for row in rows:
        scale = next((abs(x) for x in row[0] if x), abs(row[1]) or Fraction(1))
        key = (tuple(x / scale for x in row[0]), row[1] / scale, row[2])
        if key not in seen:
            seen.add(key)
            out.append(row)
    return out


def _constant_ok(row: _Row) -> bool:
    return row[1] > 0 if row[2] else row[1] >= 0


def _pick(rows: list[_Row], k: int, assigned: dict[int, Fraction]) -> Fraction:
    """Choose a value for variable k consistent with rows, given later variables."""
    lo: tuple[Fraction, bool] | None = None
    hi: tuple[Fraction, bool] | None = None
    for coeffs, const, strict in rows:
        a = coeffs[k]
        if not a:
            continue
        rest = const + sum((coeffs[j] * v for j, v in assigned.items()), Fraction(0))
        bound = -rest / a
        if a > 0:
            if lo is None or bound > lo[0] or (bound == lo[0] and strict):
                lo = (bound, strict)
        else:
            if hi is None or bound < hi[0] or (bound == hi[0] and strict):
                hi = (bound, strict)
    if lo and hi:
        return lo[0] if lo[0] == hi[0] else (lo[0] + hi[0]) / 2
    if lo:
        return lo[0] + (1 if lo[1] else 0)
    if hi:
        return hi[0] - (1 if hi[1] else 0)
    return Fraction(0)


def fm_infeasible(system: Sequence[Constraint]) -> Infeasible | Feasible:
    """Decide a system exactly; a Feasible answer carries a checked witness."""
    if len(system) > MAX_CONSTRAINTS:
        raise InputError(f"at most {MAX_CONSTRAINTS} constraints are supported")
    widths = {len(c.coeffs) for c in system}
    if len(widths) > 1:
        raise InputError("constraints disagree on the number of unknowns")
    n = widths.pop() if widths else 0
    if n > MAX_UNKNOWNS:
        raise InputError(f"at most {MAX_UNKNOWNS} unknowns are supported")

    stages: list[list[_Row]] = []
    rows = [row for c in system for row in _normalize(c)]
    for k in range(n):
        stages.append(rows)
        rows = _eliminate(rows, k)
    if not all(_constant_ok(row) for row in rows):
        return Infeasible()

    assigned: dict[int, Fraction] = {}
    for k in reversed(range(n)):
        assigned[k] = _pick(stages[k], k, assigned)
    witness = tuple(assigned[k] for k in range(n))
    if not all(c.holds(witness) for c in system):  # pragma: no cover - guards the elimination
        raise AssertionError(f"witness {witness} fails the system")
    return Feasible(witness)
