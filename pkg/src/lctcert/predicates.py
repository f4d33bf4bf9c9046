"""Numeric exclusion lemmas, each gated on the geometric facts it needs.

Every predicate evaluates its inequality exactly and then looks for the
facts that make the inequality meaningful.  A true inequality with a
missing fact is INDETERMINATE; a false inequality is FAIL regardless of
facts.  Equality in a non-strict comparison is a PASS marked ``tight``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .blowup import BlowupContext, BlowupDivisorClass, triple_product
from .errors import InputError
from .records import GeometricFact
from .results import CheckResult, Status

DEFAULT_EPSILON = Fraction(1, 1000)


def _find(facts: Iterable[GeometricFact], kind: str, target: str | None = None,
          at_most: Fraction | None = None) -> GeometricFact | None:
    for f in facts:
        if f.kind != kind:
            continue
        if target is not None and f.target != target:
            continue
        if at_most is not None and (f.bound is None or f.bound > at_most):
            continue
        return f
    return None


def _result(name: str, ok: bool, values: dict, found: Sequence[GeometricFact | None],
            wanted: Sequence[str], tight: bool = False, note: str = "") -> CheckResult:
    missing = tuple(w for f, w in zip(found, wanted) if f is None)
    used = tuple(sorted(f.id for f in found if f is not None))
    if not ok:
        status = Status.FAIL
    elif missing:
        status = Status.INDETERMINATE
    else:
        status = Status.PASS
    return CheckResult(name, status, values, used, note, missing, tight=ok and tight)


def check_exclL(c1, c2, a3, facts: Iterable[GeometricFact], s1: str | None = None,
                gamma: str | None = None) -> CheckResult:
    """Multiplicity exclusion along a curve: c1 c2 A^3 <= 1."""
    facts = list(facts)
    c1, c2, a3 = Fraction(c1), Fraction(c2), Fraction(a3)
    lhs = c1 * c2 * a3
    found = [
        _find(facts, "mult_bound", s1, c1),
        _find(facts, "irreducible_reduced", gamma),
        _find(facts, "mult_bound", gamma, c2) if gamma is not None
        else _find([f for f in facts if f.target != s1], "mult_bound", None, c2),
    ]
    wanted = [f"mult_bound({s1 or 'S1'} <= {c1})", f"irreducible_reduced({gamma or 'Gamma'})",
              f"mult_bound({gamma or 'Gamma'} <= {c2})"]
    return _result("exclL", lhs <= 1, {"c1": c1, "c2": c2, "a3": a3, "lhs": lhs, "rhs": Fraction(1)},
                   found, wanted, tight=lhs == 1)


def check_exclG(l: int, c_or_pair, a3, facts: Iterable[GeometricFact], s: str | None = None,
                pair: tuple[str, str] | None = None, isolating: str | None = None) -> CheckResult:
    """Exclusion through an isolating class lA.

    ``c_or_pair`` is a single bound c (a surface S with mult_p(S) <= c) or a
    pair (c1, c2) of degrees of two distinct prime divisors through p.
    """
    if isinstance(l, bool) or not isinstance(l, int) or l < 1:
        raise InputError(f"isolating multiple must be a positive integer, got {l!r}")
    facts = list(facts)
    a3 = Fraction(a3)
    iso = _find(facts, "finiteness", isolating)
    if isinstance(c_or_pair, (tuple, list)):
        c1, c2 = (Fraction(x) for x in c_or_pair)
        c = max(c1, c2)
        t1, t2 = pair or (None, None)
        first = _find(facts, "irreducible_reduced", t1)
        rest = [f for f in facts if first is None or f.id != first.id]
        second = _find(rest, "irreducible_reduced", t2)
        found = [first, second, iso]
        wanted = [f"irreducible_reduced({t1 or 'S1'})", f"irreducible_reduced({t2 or 'S2'})",
                  f"finiteness({isolating or 'isolating class'})"]
        values = {"c1": c1, "c2": c2, "l": l, "a3": a3}
        name = "exclG(1)"
    else:
        c = Fraction(c_or_pair)
        found = [_find(facts, "mult_bound", s, c), iso]
        wanted = [f"mult_bound({s or 'S'} <= {c})", f"finiteness({isolating or 'isolating class'})"]
        values = {"c": c, "l": l, "a3": a3}
        name = "exclG(2)"
    lhs = c * l * a3
    values.update(lhs=lhs, rhs=Fraction(1))
    return _result(name, lhs <= 1, values, found, wanted, tight=lhs == 1)


def check_singpt_cone(facts: Iterable[GeometricFact], point: str | None = None) -> CheckResult:
    """Cone condition at a singular point: purely fact-gated."""
    facts = list(facts)
    cone = _find(facts, "cone_boundary")
    lift = None
    for f in facts:
        if f.kind == "proper_transform_class":
            try:
                m = Fraction(f.subject.get("multiple", "0"))
            except (TypeError, ValueError):
                continue
            if m > 0:
                lift = f
                break
    values: dict = {}
    if lift is not None:
        values["multiple"] = Fraction(lift.subject["multiple"])
    return _result("singpt_cone", True, values, [cone, lift],
                   ["cone_boundary(B^2 not in Int NE(Y))", "proper_transform_class(S ~ mB, m > 0)"],
                   note=f"point {point}" if point else "")


def check_singpt_nef(ctx: BlowupContext, n: BlowupDivisorClass,
                     divisors: Sequence[tuple[int, int]], facts: Iterable[GeometricFact],
                     epsilon: Fraction = DEFAULT_EPSILON) -> CheckResult:
    """Nef-divisor exclusion: r^3 a a_i A^3 <= e e_i E^3 for both divisors.

    The adversarial divisor D has class (1, e_D) with e_D > 1.  The check
    also evaluates N.D.S_i at the boundary e_D = 1 (must be <= 0) and at
    e_D = 1 + epsilon (must be < 0), which is where the contradiction lives.
    """
    if len(divisors) != 2:
        raise InputError("the nef lemma takes exactly two divisors")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    facts = list(facts)
    r, a3, e3 = ctx.r, ctx.a3, ctx.e3
    values: dict = {"r": r, "a3": a3, "E3": e3, "N": f"({n.alpha}, {n.e})", "epsilon": epsilon}
    ok = True
    tight = False
    for i, (ai, ei) in enumerate(divisors, start=1):
        ai, ei = Fraction(ai), Fraction(ei)
        lhs = r ** 3 * n.alpha * ai * a3
        rhs = n.e * ei * e3
        s = BlowupDivisorClass(ai, ei)
        at_boundary = triple_product(ctx, n, BlowupDivisorClass(1, 1), s)
        beyond = triple_product(ctx, n, BlowupDivisorClass(1, 1 + epsilon), s)
        values.update({f"lhs{i}": lhs, f"rhs{i}": rhs,
                       f"NDS{i}_boundary": at_boundary, f"NDS{i}_strict": beyond})
        ok = ok and lhs <= rhs and at_boundary <= 0 and beyond < 0
        tight = tight or lhs == rhs
    nef = None
    for f in facts:
        if f.kind != "nef":
            continue
        cls = f.subject.get("class")
        if cls is not None and [Fraction(x) for x in cls] == [n.alpha, n.e]:
            nef = f
            break
    return _result("singpt_nef", ok, values, [nef], [f"nef(N = ({n.alpha}, {n.e}))"], tight=tight)


def check_singpt_cover(r: int, c1, c2, a3, facts: Iterable[GeometricFact],
                       s1: str | None = None, curve: str | None = None) -> CheckResult:
    """Index-cover exclusion: r c1 c2 A^3 <= 1."""
    facts = list(facts)
    c1, c2, a3 = Fraction(c1), Fraction(c2), Fraction(a3)
    lhs = r * c1 * c2 * a3
    found = [_find(facts, "ord_bound", s1, c1 / r), _find(facts, "cover_mult_bound", curve, c2)]
    wanted = [f"ord_bound({s1 or 'S1'} <= {c1 / r})", f"cover_mult_bound({curve or 'L'} <= {c2})"]
    return _result("singpt_cover", lhs <= 1,
                   {"r": r, "c1": c1, "c2": c2, "a3": a3, "lhs": lhs, "rhs": Fraction(1)},
                   found, wanted, tight=lhs == 1)


def mult_bound_wps(m: int, e: int) -> int:
    """Multiplicity bound 1 + floor((m - 1)/e) at the singular point of a weighted plane curve."""
    if isinstance(e, bool) or not isinstance(e, int) or e < 2:
        raise InputError(f"e must be an integer >= 2, got {e!r}")
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    return 1 + (m - 1) // e


_OPS = {
    "<=": lambda x, y: x <= y,
    "<": lambda x, y: x < y,
    "=": lambda x, y: x == y,
    ">=": lambda x, y: x >= y,
    ">": lambda x, y: x > y,
}


def evaluate_terms(terms: Sequence[Sequence[str]], a3) -> Fraction:
    """Sum of products; each factor is a rational string or the symbol ``A3``."""
    from .rational import parse_rational

    total = Fraction(0)
    for term in terms:
        value = Fraction(1)
        for factor in term:
            value *= Fraction(a3) if factor == "A3" else parse_rational(factor)
        total += value
    return total


def check_numeric(lhs: Sequence[Sequence[str]], op: str, rhs: Sequence[Sequence[str]], a3) -> CheckResult:
    """A displayed comparison between two rational expressions."""
    if op not in _OPS:
        raise InputError(f"unknown comparison {op!r}")
    left, right = evaluate_terms(lhs, a3), evaluate_terms(rhs, a3)
    ok = _OPS[op](left, right)
    return CheckResult("numeric", Status.PASS if ok else Status.FAIL,
                       {"lhs": left, "op": op, "rhs": right, "a3": Fraction(a3)},
                       tight=ok and op in ("<=", ">=") and left == right)
