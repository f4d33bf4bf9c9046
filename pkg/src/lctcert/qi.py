"""Numerical checks behind the quadratic-involution self-links."""

from __future__ import annotations

from fractions import Fraction
from math import floor, prod

from .blowup import BlowupContext, anticanonical, exceptional, triple_product
from .errors import InputError
from .predicates import mult_bound_wps
from .records import FamilyRecord
from .results import CheckResult, Status, passed
from .singularities import kawamata_numbers

BUDGETS = ("wps_bound", "theta_xi", "line")


def qi_subchecks(family: FamilyRecord) -> list[CheckResult]:
    """Every sub-check of the involution record, in a fixed order."""
    rec = family.qi_record
    if rec is None:
        raise InputError(f"family {family.id} has no quadratic-involution record")
    sp = family.space
    w = sp.weight
    small, large = sorted(family.degrees)
    a_xi, a_zeta, a_i0, a_i1 = w(rec.xi), w(rec.zeta), w(rec.x_i0), w(rec.x_i1)
    bar_zeta = a_zeta - a_xi
    others = [n for n in sp.names if n not in (rec.x_i0, rec.x_i1, rec.xi, rec.zeta)]
    out: list[CheckResult] = []

    out.append(CheckResult(
        "qi(a) degrees",
        passed(small == a_xi + a_i1 and large == 2 * a_xi + a_i0 == 2 * a_zeta),
        {"d1": small, "a_xi+a_i1": a_xi + a_i1, "d2": large,
         "2a_xi+a_i0": 2 * a_xi + a_i0, "2a_zeta": 2 * a_zeta},
    ))

    kn = kawamata_numbers(rec.point, family.a3)
    e_weights = sorted([*(w(n) for n in others), bar_zeta])
    e3_alt = Fraction(a_xi ** 2, prod(e_weights)) if len(others) == 2 and bar_zeta > 0 else None
    out.append(CheckResult(
        "qi(a) exceptional divisor",
        passed(rec.point.r == a_xi and e_weights == sorted(rec.exceptional_weights)
               and e3_alt == kn.e3),
        {"r": rec.point.r, "a_xi": a_xi, "E weights": " ".join(map(str, e_weights)),
         "E3": kn.e3, "a_xi^2/prod": e3_alt if e3_alt is not None else "undefined"},
    ))

    out.append(CheckResult("qi(b) n_G = 2 a_i1", passed(rec.n_g == 2 * a_i1),
                           {"n_G": rec.n_g, "2a_i1": 2 * a_i1}))

    ctx = BlowupContext(rec.point, family.a3)
    b = anticanonical()
    b3 = triple_product(ctx, b, b, b)
    b2e = triple_product(ctx, b, b, exceptional(ctx))
    ratio = 2 * b2e / b3 if b3 else None
    out.append(CheckResult(
        "qi(c) n_G = 2 B^2E / B^3",
        passed(b3 > 0 and ratio == rec.n_g and b2e == kn.e3 / rec.point.r ** 2),
        {"B3": b3, "B2E": b2e, "2B2E/B3": ratio if ratio is not None else "undefined", "n_G": rec.n_g},
    ))

    d_theta = small - a_zeta
    out.append(CheckResult(
        "qi(e) curve degrees",
        passed(rec.d_xi == small + bar_zeta and rec.c_degree == d_theta),
        {"d_Xi": rec.d_xi, "d1+bar_a_zeta": small + bar_zeta, "d_Theta": rec.c_degree, "d1-a_zeta": d_theta},
    ))

    out.append(_budget(rec, e_weights))
    return out


def _budget(rec, e_weights: list[int]) -> CheckResult:
    name = "qi(d) multiplicity budget"
    if rec.budget == "wps_bound":
        e = max(e_weights)
        bound = mult_bound_wps(rec.d_xi, e)
        return CheckResult(name, passed(bound <= rec.n_g - 2),
                           {"d_Xi": rec.d_xi, "e": e, "N": bound, "n_G-2": rec.n_g - 2},
                           tight=bound == rec.n_g - 2)
    if rec.budget == "theta_xi":
        # off Theta the wps bound alone must fit in n_G - 1; on Theta the
        # intersection number Theta.Xi bounds mult(Xi) instead
        n_bound = mult_bound_wps(rec.d_xi, max(e_weights))
        theta_xi = Fraction(rec.c_degree * rec.d_xi, prod(e_weights))
        mult = floor(theta_xi)
        ok = n_bound <= rec.n_g - 1 and 1 + mult <= rec.n_g - 1
        return CheckResult(name, passed(ok),
                           {"N": n_bound, "Theta.Xi": theta_xi, "mult(Xi)<=": mult, "1+mult": 1 + mult,
                            "n_G-1": rec.n_g - 1},
                           tight=1 + mult == rec.n_g - 1 or n_bound == rec.n_g - 1)
    if rec.budget == "line":
        values = {"1+1": 2, "n_G-1": rec.n_g - 1}
        ok = 2 <= rec.n_g - 1
        note = ""
        if rec.text_n is not None and rec.text_n != rec.n_g:
            values["text n-1"] = rec.text_n - 1
            ok = ok and 2 <= rec.text_n - 1
            note = f"prose states n = {rec.text_n}, table gives n_G = {rec.n_g}; both satisfy the budget"
        return CheckResult(name, passed(ok), values, note=note)
    raise InputError(f"unknown budget kind {rec.budget!r}")


def qi_verify(family: FamilyRecord) -> CheckResult:
    """Aggregate of :func:`qi_subchecks`; a failure names the failing sub-checks."""
    subs = qi_subchecks(family)
    failing = [s.name for s in subs if s.status is not Status.PASS]
    values: dict = {}
    for s in subs:
        for k, v in s.values.items():
            values[f"{s.name.split(' ')[0]} {k}"] = v
    notes = [s.note for s in subs if s.note]
    if failing:
        notes.insert(0, "failed: " + ", ".join(failing))
    return CheckResult("qi", passed(not failing), values, note="; ".join(notes),
                       tight=any(s.tight for s in subs))
