"""Isolating classes for nonsingular points via finite projections."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DataError, IndeterminateError, InputError, TableMismatchError
from .records import FamilyRecord, GeometricFact, family_sort_key
from .results import CheckResult, Status, passed
from .wps import WeightedSpace

# the coordinate whose non-vanishing defines each column of the isolating-class table
LOCUS_COORDINATE = {"off_Hx": "x", "on_Hx_off_Hy": "y"}


class Absent:
    """A blank table cell: no isolating class is printed or needed there."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Absent"

    def __str__(self) -> str:
        return "-"


ABSENT = Absent()


@dataclass(frozen=True)
class IsolatingEntry:
    family: int | str
    locus: str
    class_multiple: int | Absent
    source: str
    printed: int | Absent = ABSENT
    fact: str | None = None

    @property
    def matches(self) -> bool:
        return self.class_multiple == self.printed


def lcm_isolating_class(space: WeightedSpace, kept: Iterable[str], j: str,
                        finiteness: GeometricFact | None) -> int:
    """Largest lcm(a_j, a_k) over the other kept coordinates k.

    The projection onto ``kept`` must be finite; that is a geometric fact,
    so without one the answer is indeterminate.
    """
    kept = list(kept)
    if j not in kept:
        raise InputError(f"{j!r} is not among the kept coordinates {kept}")
    for name in kept:
        space.weight(name)
    if finiteness is None or finiteness.kind != "finiteness":
        raise IndeterminateError(f"no finiteness fact for the projection onto {','.join(kept)}")
    aj = space.weight(j)
    others = [space.weight(k) for k in kept if k != j]
    if not others:
        raise InputError("at least two kept coordinates are needed")
    return max(lcm(aj, ak) for ak in others)


def pfaffian_isolating(space: WeightedSpace, a3: Fraction | None = None) -> tuple[int, int]:
    """Isolating multiples (on H_x, off H_x) for a Pfaffian in P(1, a1, ..., a6).

    The projection to P(1, a1, a2, a3) is finite.  On H_x the fibre is cut
    out by binomials in the first three weighted coordinates, so the class is
    the largest pairwise lcm of a1, a2, a3; off H_x it is a3.  When ``a3``
    (the degree) is given, the first value must equal 1/A^3.
    """
    w = space.weights
    if len(w) != 7 or w[0] != 1:
        raise InputError(f"expected seven weights starting with 1, got {space}")
    a1, a2, a3w = w[1], w[2], w[3]
    on_hx = max(lcm(a1, a2), lcm(a1, a3w), lcm(a2, a3w))
    if a3 is not None and Fraction(on_hx) != 1 / Fraction(a3):
        raise DataError(f"{space}: on-H_x class {on_hx}A but 1/A^3 = {1 / Fraction(a3)}")
    return on_hx, a3w


def family_entries(family: FamilyRecord, facts: dict[str, GeometricFact]) -> list[IsolatingEntry]:
    """Recompute each printed cell of one family; never raises on a mismatch."""
    data = family.isolating
    if data is None:
        return []
    out = []
    kept = [n for n in family.space.names if n not in data.dropped]
    for cell in data.cells:
        printed = ABSENT if cell.printed is None else cell.printed
        if cell.source == "absent":
            out.append(IsolatingEntry(family.id, cell.locus, ABSENT, "absent", printed, cell.fact))
        elif cell.source == "paper_fact":
            out.append(IsolatingEntry(family.id, cell.locus, printed, "paper_fact", printed, cell.fact))
        else:
            fact = facts.get(cell.fact) if cell.fact else None
            j = LOCUS_COORDINATE[cell.locus]
            value = lcm_isolating_class(family.space, kept, j, fact)
            out.append(IsolatingEntry(family.id, cell.locus, value, "lcm_formula", printed, cell.fact))
    return out


def isolating_entries(db) -> list[IsolatingEntry]:
    out = []
    for fid in sorted(db.families, key=family_sort_key):
        out.extend(family_entries(db.families[fid], db.facts))
    return out


def isolating_table(db) -> list[IsolatingEntry]:
    """Every printed isolating class recomputed; a disagreement raises naming the cells."""
    entries = isolating_entries(db)
    bad = [e for e in entries if not e.matches]
    if bad:
        names = [f"{e.family}/{e.locus}: computed {e.class_multiple}, printed {e.printed}" for e in bad]
        raise TableMismatchError("isolating classes disagree: " + "; ".join(names), cells=bad)
    return entries


def isolating_checks(family: FamilyRecord, facts: dict[str, GeometricFact]) -> list[CheckResult]:
    out = []
    try:
        entries = family_entries(family, facts)
    except IndeterminateError as exc:
        return [CheckResult("isolating class", Status.INDETERMINATE, {}, missing_facts=(str(exc),))]
    for e in entries:
        out.append(CheckResult(
            f"isolating class {e.locus}", passed(e.matches),
            {"computed": str(e.class_multiple), "printed": str(e.printed), "source": e.source},
            facts_used=(e.fact,) if e.fact else (),
        ))
    return out


def pfaffian_checks(family: FamilyRecord) -> list[CheckResult]:
    try:
        on_hx, off_hx = pfaffian_isolating(family.space, family.a3)
        ok = True
    except DataError:
        on_hx, off_hx = pfaffian_isolating(family.space)
        ok = False
    return [CheckResult("pfaffian isolating", passed(ok),
                        {"dA": on_hx, "a3A": off_hx, "1/A3": 1 / family.a3})]


def kept_coordinates(family: FamilyRecord) -> Sequence[str]:
    data = family.isolating
    dropped = data.dropped if data else ()
    return [n for n in family.space.names if n not in dropped]
