"""Immutable records held by the family database."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .singularities import QuotientType
from .wps import WeightedSpace, anticanonical_degree_wci

FACT_KINDS = (
    "mult_bound",
    "irreducible_reduced",
    "nef",
    "big_nef",
    "cone_boundary",
    "proper_transform_class",
    "quasi_smooth_member",
    "finiteness",
    "cover_mult_bound",
    "ord_bound",
)

# subject keys each kind must carry besides ``family`` and ``target``
FACT_PAYLOAD = {
    "mult_bound": (),
    "irreducible_reduced": (),
    "nef": ("class",),
    "big_nef": (),
    "cone_boundary": ("points",),
    "proper_transform_class": ("points", "multiple"),
    "quasi_smooth_member": (),
    "finiteness": ("evidence",),
    "cover_mult_bound": ("point",),
    "ord_bound": ("point",),
}

# kinds whose meaning is a numeric bound
BOUNDED_KINDS = ("mult_bound", "cover_mult_bound", "ord_bound")


@dataclass(frozen=True)
class Citation:
    locator: str
    quote: str


@dataclass(frozen=True)
class GeometricFact:
    """A non-numeric hypothesis taken on trust from its citation."""

    id: str
    kind: str
    subject: Mapping[str, Any]
    citation: Citation
    bound: Fraction | None = None

    @property
    def target(self) -> str:
        return str(self.subject.get("target", ""))


@dataclass(frozen=True)
class PrintedBasketEntry:
    qtype: QuotientType
    count: int
    plus: bool


@dataclass(frozen=True)
class QIRecord:
    """One row of the quadratic-involution table."""

    point: QuotientType
    x_i0: str
    x_i1: str
    xi: str
    zeta: str
    n_g: int
    exceptional_weights: tuple[int, int, int]
    exceptional_label: str
    d_xi: int
    c_polynomial: str
    c_degree: int
    budget: str
    text_n: int | None = None


@dataclass(frozen=True)
class IsolatingCell:
    locus: str
    printed: int | None
    source: str
    fact: str | None


@dataclass(frozen=True)
class IsolatingData:
    """Printed isolating classes, plus the projection used to recompute them."""

    projection: str | None
    dropped: tuple[str, ...]
    cells: tuple[IsolatingCell, ...]


@dataclass(frozen=True)
class PlanEntry:
    locus: str
    template: str
    params: Mapping[str, Any]
    facts: tuple[str, ...]
    annotation: str = ""


@dataclass(frozen=True)
class FamilyRecord:
    id: int | str
    kind: str
    space: WeightedSpace
    degrees: tuple[int, ...]
    stored_a3: Fraction | None
    basket_printed: tuple[PrintedBasketEntry, ...]
    facts: tuple[str, ...]
    plan: tuple[PlanEntry, ...]
    qi_record: QIRecord | None = None
    isolating: IsolatingData | None = None
    annotations: Mapping[str, str] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def derived_a3(self) -> Fraction | None:
        if self.kind == "wci2":
            return anticanonical_degree_wci(self.space, *self.degrees)
        return None

    @property
    def a3(self) -> Fraction:
        derived = self.derived_a3
        if derived is not None:
            return derived
        assert self.stored_a3 is not None
        return self.stored_a3

    @property
    def label(self) -> str:
        return str(self.id)


def family_sort_key(family_id: int | str) -> tuple:
    """Numbered families first, in numeric order, then tagged ones."""
    if isinstance(family_id, int):
        return (0, family_id, "")
    return (1, 0, str(family_id))


def parse_family_id(text: str) -> int | str:
    return int(text) if text.lstrip("-").isdigit() else text
