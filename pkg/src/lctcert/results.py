"""Check results shared by the validators, the lemma predicates and the reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .rational import fmt


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one exact check.

    ``status`` is always the honest evaluation.  A non-empty ``annotation``
    marks a failure that the dataset records as a known discrepancy; such a
    result counts as a pass unless the caller asks for strict mode.
    """

    name: str
    status: Status
    values: Mapping[str, Fraction | int | bool | str] = field(default_factory=dict)
    facts_used: tuple[str, ...] = ()
    note: str = ""
    missing_facts: tuple[str, ...] = ()
    annotation: str = ""
    tight: bool = False

    def effective(self, strict: bool = False) -> Status:
        if self.status is Status.FAIL and self.annotation and not strict:
            return Status.PASS
        return self.status

    @property
    def annotated(self) -> bool:
        return bool(self.annotation)

    def annotate(self, text: str) -> "CheckResult":
        return replace(self, annotation=text)

    def renamed(self, name: str) -> "CheckResult":
        return replace(self, name=name)

    def to_json(self, strict: bool = False) -> dict:
        out: dict = {
            "name": self.name,
            "status": self.status.value,
            "effective_status": self.effective(strict).value,
            "values": {k: _render(v) for k, v in self.values.items()},
            "facts_used": sorted(self.facts_used),
        }
        if self.missing_facts:
            out["missing_facts"] = sorted(self.missing_facts)
        if self.tight:
            out["tight"] = True
        if self.annotation:
            out["annotation"] = self.annotation
        if self.note:
            out["note"] = self.note
        return out


def _render(v):
    if isinstance(v, bool) or isinstance(v, str):
        return v
    if isinstance(v, (int, Fraction)):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return [_render(x) for x in v]
    return str(v)


def worst(statuses: Iterable[Status]) -> Status:
    """FAIL dominates INDETERMINATE, which dominates PASS."""
    seen = set(statuses)
    if Status.FAIL in seen:
        return Status.FAIL
    if Status.INDETERMINATE in seen:
        return Status.INDETERMINATE
    return Status.PASS


def passed(ok: bool) -> Status:
    return Status.PASS if ok else Status.FAIL
