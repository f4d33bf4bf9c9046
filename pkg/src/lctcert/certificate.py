"""Per-family certificates: the plan of point classes, evaluated in order."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Mapping

from .blowup import BlowupContext, BlowupDivisorClass
from .errors import DataError
from .fm import Feasible, constraint, fm_infeasible
from .predicates import (
    DEFAULT_EPSILON,
    check_exclG,
    check_exclL,
    check_numeric,
    check_singpt_cone,
    check_singpt_cover,
    check_singpt_nef,
)
from .qi import qi_verify
from .rational import fmt, parse_rational
from .records import FamilyRecord, GeometricFact, PlanEntry
from .results import CheckResult, Status
from .singularities import QuotientType, basket_wci, normalize_quotient_type

TEMPLATES = ("exclL", "exclG", "singpt_cone", "singpt_nef", "singpt_cover", "qi", "fm_system", "numeric")

LCT_GE_1 = "LCT_GE_1"
NOT_ESTABLISHED = "NOT_ESTABLISHED"


@dataclass(frozen=True)
class CertificateEntry:
    locus: str
    template: str
    params: Mapping[str, Any]
    result: CheckResult


@dataclass(frozen=True)
class Certificate:
    family_id: int | str
    kind: str
    a3: Fraction
    entries: tuple[CertificateEntry, ...]
    strict: bool

    @property
    def verdict(self) -> str:
        ok = all(e.result.effective(self.strict) is Status.PASS for e in self.entries)
        return LCT_GE_1 if ok else NOT_ESTABLISHED

    def statuses(self) -> list[Status]:
        return [e.result.effective(self.strict) for e in self.entries]

    def facts_consumed(self) -> list[str]:
        return sorted({f for e in self.entries for f in e.result.facts_used})

    def to_json(self) -> dict:
        return {
            "family": self.family_id,
            "kind": self.kind,
            "a3": fmt(self.a3),
            "strict": self.strict,
            "verdict": self.verdict,
            "point_classes": [
                {"locus": e.locus, "template": e.template, "params": e.params,
                 "result": e.result.to_json(self.strict)}
                for e in self.entries
            ],
            "facts_consumed": self.facts_consumed(),
        }


def point_type(raw) -> QuotientType:
    r, *b = raw
    return normalize_quotient_type(int(r), [int(x) for x in b])


def evaluate_entry(family: FamilyRecord, entry: PlanEntry, facts: Mapping[str, GeometricFact],
                   epsilon: Fraction = DEFAULT_EPSILON) -> CheckResult:
    """Instantiate one plan entry; fact ids absent from the store make it INDETERMINATE."""
    present = [facts[f] for f in entry.facts if f in facts]
    absent = tuple(f for f in entry.facts if f not in facts)
    p = entry.params
    a3 = family.a3
    t = entry.template
    if t == "exclL":
        res = check_exclL(parse_rational(p["c1"]), parse_rational(p["c2"]), a3, present,
                          s1=p.get("S1"), gamma=p.get("Gamma"))
    elif t == "exclG":
        if "pair" in p:
            pair = tuple(parse_rational(x) for x in p["pair"])
            roles = tuple(p["divisors"]) if "divisors" in p else None
            res = check_exclG(int(p["l"]), pair, a3, present, pair=roles, isolating=p.get("isolating"))
        else:
            res = check_exclG(int(p["l"]), parse_rational(p["c"]), a3, present,
                              s=p.get("S"), isolating=p.get("isolating"))
    elif t == "singpt_cone":
        res = check_singpt_cone(present, point=str(point_type(p["point"])))
    elif t == "singpt_nef":
        ctx = BlowupContext(point_type(p["point"]), a3)
        n = BlowupDivisorClass(*(parse_rational(x) for x in p["N"]))
        divisors = [tuple(int(x) for x in d) for d in p["divisors"]]
        eps = parse_rational(p["epsilon"]) if "epsilon" in p else epsilon
        res = check_singpt_nef(ctx, n, divisors, present, epsilon=eps)
    elif t == "singpt_cover":
        pt = point_type(p["point"])
        res = check_singpt_cover(pt.r, parse_rational(p["c1"]), parse_rational(p["c2"]), a3, present,
                                 s1=p.get("S1"), curve=p.get("curve"))
    elif t == "qi":
        res = _qi_entry(family, p, present)
    elif t == "fm_system":
        res = replace(_fm_entry(p), facts_used=tuple(sorted(f.id for f in present)))
    elif t == "numeric":
        res = replace(check_numeric(p["lhs"], p["op"], p["rhs"], a3),
                      facts_used=tuple(sorted(f.id for f in present)))
    else:
        raise DataError(f"family {family.id}: unknown template {t!r}")
    if absent:
        status = Status.FAIL if res.status is Status.FAIL else Status.INDETERMINATE
        res = replace(res, status=status, missing_facts=tuple(sorted(set(res.missing_facts) | set(absent))),
                      tight=False)
    if entry.annotation:
        res = res.annotate(entry.annotation)
    return res


def _qi_entry(family: FamilyRecord, p: Mapping[str, Any], present: list[GeometricFact]) -> CheckResult:
    rec = family.qi_record
    if rec is None:
        raise DataError(f"family {family.id}: qi template without an involution record")
    res = qi_verify(family)
    if "point" in p and point_type(p["point"]) != rec.point:
        return replace(res, status=Status.FAIL, note=f"plan point {p['point']} is not the record's {rec.point}")
    member = next((f for f in present if f.kind == "quasi_smooth_member"), None)
    if member is None:
        status = Status.FAIL if res.status is Status.FAIL else Status.INDETERMINATE
        return replace(res, status=status, missing_facts=("quasi_smooth_member(Xi)",))
    return replace(res, facts_used=(member.id,))


def _fm_entry(p: Mapping[str, Any]) -> CheckResult:
    system = [constraint(c["coeffs"], c["const"], c["rel"]) for c in p["constraints"]]
    outcome = fm_infeasible(system)
    expect = p.get("expect", "infeasible")
    values: dict = {"unknowns": " ".join(p.get("unknowns", [])), "constraints": len(system)}
    if isinstance(outcome, Feasible):
        values["outcome"] = "feasible"
        values["witness"] = " ".join(fmt(x) for x in outcome.witness) or "()"
    else:
        values["outcome"] = "infeasible"
    ok = values["outcome"] == expect
    return CheckResult("fm_system", Status.PASS if ok else Status.FAIL, values)


def singular_types(family: FamilyRecord) -> list[QuotientType]:
    """Point types a plan must cover: computed basket for wci2, stored basket otherwise."""
    if family.kind == "wci2":
        return [t for t, _ in basket_wci(family)]
    return sorted({e.qtype for e in family.basket_printed}, key=lambda t: t.key)


def coverage(family: FamilyRecord) -> CheckResult:
    covered = {point_type(e.params["point"]) for e in family.plan if "point" in e.params}
    needed = singular_types(family)
    missing = tuple(f"plan entry for {t}" for t in needed if t not in covered)
    nonsingular = any(e.locus.startswith("nonsingular") for e in family.plan)
    if not nonsingular:
        missing += ("plan entry for nonsingular points",)
    return CheckResult("coverage", Status.INDETERMINATE if missing else Status.PASS,
                       {"singular types": len(needed), "covered": len(needed) - sum(
                           1 for m in missing if m.startswith("plan entry for 1/"))},
                       missing_facts=missing)


def assemble_certificate(family: FamilyRecord, db, strict: bool = False,
                         epsilon: Fraction = DEFAULT_EPSILON) -> Certificate:
    """Walk the family's plan in order and collect every evaluated check."""
    entries = [CertificateEntry(e.locus, e.template, e.params, evaluate_entry(family, e, db.facts, epsilon))
               for e in family.plan]
    entries.append(CertificateEntry("all point classes", "coverage", {}, coverage(family)))
    return Certificate(family.id, family.kind, family.a3, tuple(entries), strict)
