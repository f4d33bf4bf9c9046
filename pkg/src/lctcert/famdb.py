"""The family database: loading, canonical serialization and cross-checks."""

from __future__ import annotations

import hashlib
import json
import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import IO, Any, Mapping

import jsonschema

from .certificate import coverage
from .errors import BasketError, DataError, InputError
from .isolating import isolating_checks, pfaffian_checks
from .qi import qi_verify
from .rational import fmt, is_canonical_rational, parse_rational
from .records import (
    BOUNDED_KINDS,
    FACT_PAYLOAD,
    Citation,
    FamilyRecord,
    GeometricFact,
    IsolatingCell,
    IsolatingData,
    PlanEntry,
    PrintedBasketEntry,
    QIRecord,
    family_sort_key,
)
from .results import CheckResult, Status, passed
from .singularities import Basket, basket_wci, is_terminal, kawamata_numbers, normalize_quotient_type, rr_consistency
from .wps import validate_space

DATA_ENV = "LCT_CERT_DATA"


@dataclass(frozen=True)
class Database:
    families: Mapping[int | str, FamilyRecord]
    facts: Mapping[str, GeometricFact]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def family(self, family_id: int | str) -> FamilyRecord:
        try:
            return self.families[family_id]
        except KeyError:
            raise InputError(f"unknown family {family_id!r}") from None

    def sorted_ids(self) -> list[int | str]:
        return sorted(self.families, key=family_sort_key)


# ---------------------------------------------------------------- paths


def default_data_path() -> Path:
    return Path(str(resources.files("lctcert") / "data" / "families.json"))


def schema() -> dict:
    text = (resources.files("lctcert") / "data" / "families.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=1)
def _validator() -> jsonschema.Draft202012Validator:
    return jsonschema.Draft202012Validator(schema())


def resolve_data_path(explicit: str | None = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else default_data_path()


# ---------------------------------------------------------------- loading


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else ""


def load_database(source: bytes | str | IO[bytes] | IO[str] | os.PathLike) -> Database:
    """Parse, schema-check and cross-check a dataset."""
    if isinstance(source, os.PathLike):
        raw = Path(source).read_bytes()
    elif isinstance(source, (bytes, str)):
        raw = source.encode("utf-8") if isinstance(source, str) else source
    else:
        data = source.read()
        raw = data.encode("utf-8") if isinstance(data, str) else data
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DataError(f"not valid JSON: {exc}") from None
    validator = _validator()
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is not None:
        raise DataError(error.message, _pointer(error.absolute_path))
    facts = _load_facts(doc["facts"])
    families: dict[int | str, FamilyRecord] = {}
    for i, raw_family in enumerate(doc["families"]):
        fam = _load_family(raw_family, f"/families/{i}", facts)
        if fam.id in families:
            raise DataError(f"duplicate family id {fam.id!r}", f"/families/{i}/id")
        families[fam.id] = fam
    metadata = {
        "format": doc["format"],
        "version": doc["version"],
        "source_tag": doc["source_tag"],
        "checksum": hashlib.sha256(raw).hexdigest(),
    }
    return Database(families, facts, metadata)


def _rational(text: str, pointer: str) -> Fraction:
    if not is_canonical_rational(text):
        raise DataError(f"{text!r} is not a rational in lowest terms", pointer)
    return parse_rational(text)


def _load_facts(items: list[dict]) -> dict[str, GeometricFact]:
    out: dict[str, GeometricFact] = {}
    for i, f in enumerate(items):
        ptr = f"/facts/{i}"
        if f["id"] in out:
            raise DataError(f"duplicate fact id {f['id']!r}", ptr + "/id")
        for key in FACT_PAYLOAD[f["kind"]]:
            if key not in f["subject"]:
                raise DataError(f"{f['kind']} fact needs subject.{key}", ptr + "/subject")
        bound = None
        if "bound" in f:
            bound = _rational(f["bound"], ptr + "/bound")
        elif f["kind"] in BOUNDED_KINDS:
            raise DataError(f"{f['kind']} fact needs a bound", ptr)
        if f["kind"] == "nef":
            for j, x in enumerate(f["subject"]["class"]):
                _rational(x, f"{ptr}/subject/class/{j}")
        cit = f["citation"]
        out[f["id"]] = GeometricFact(f["id"], f["kind"], f["subject"], Citation(cit["locator"], cit["quote"]), bound)
    return out


def _qtype(raw: list[int], pointer: str):
    try:
        t = normalize_quotient_type(raw[0], raw[1:])
    except InputError as exc:
        raise DataError(str(exc), pointer) from None
    if not is_terminal(t):
        raise DataError(f"{t} is not a terminal quotient type", pointer)
    return t


def _load_family(f: dict, ptr: str, facts: Mapping[str, GeometricFact]) -> FamilyRecord:
    try:
        space = validate_space(tuple(c) for c in f["coordinates"])
    except InputError as exc:
        raise DataError(str(exc), ptr + "/coordinates") from None
    degrees = tuple(f["degrees"])
    kind = f["kind"]
    stored = None if f["stored_a3"] is None else _rational(f["stored_a3"], ptr + "/stored_a3")
    if kind == "wci2":
        if len(degrees) != 2:
            raise DataError("a wci2 family has two degrees", ptr + "/degrees")
        if sum(space.weights) - sum(degrees) != 1:
            raise DataError("not index one: sum of weights minus sum of degrees is not 1", ptr + "/degrees")
    else:
        if len(degrees) != 5:
            raise DataError("a pfaffian3 family has five Pfaffian degrees", ptr + "/degrees")
        if stored is None:
            raise DataError("a pfaffian3 family needs stored_a3", ptr + "/stored_a3")

    basket = tuple(
        PrintedBasketEntry(_qtype(e["type"], f"{ptr}/basket_printed/{k}/type"), e["count"], e["plus"])
        for k, e in enumerate(f["basket_printed"])
    )
    for k, fid in enumerate(f["facts"]):
        if fid not in facts:
            raise DataError(f"unknown fact {fid!r}", f"{ptr}/facts/{k}")

    plan = []
    for k, e in enumerate(f["plan"]):
        for m, fid in enumerate(e["facts"]):
            if fid not in facts:
                raise DataError(f"unknown fact {fid!r}", f"{ptr}/plan/{k}/facts/{m}")
        if "point" in e["params"]:
            _qtype(e["params"]["point"], f"{ptr}/plan/{k}/params/point")
        plan.append(PlanEntry(e["locus"], e["template"], e["params"], tuple(e["facts"]), e.get("annotation", "")))

    qi = None
    if "qi_record" in f:
        q = f["qi_record"]
        for role in ("x_i0", "x_i1", "xi", "zeta"):
            if q[role] not in space.names:
                raise DataError(f"unknown coordinate {q[role]!r}", f"{ptr}/qi_record/{role}")
        qi = QIRecord(
            _qtype(q["point"], ptr + "/qi_record/point"), q["x_i0"], q["x_i1"], q["xi"], q["zeta"],
            q["n_G"], tuple(q["exceptional_weights"]), q["exceptional_label"], q["d_Xi"],
            q["c_polynomial"], q["c_degree"], q["budget"], q.get("text_n"),
        )

    iso = None
    if "isolating" in f:
        d = f["isolating"]
        for name in d["dropped"]:
            if name not in space.names:
                raise DataError(f"unknown coordinate {name!r}", f"{ptr}/isolating/dropped")
        cells = []
        for k, c in enumerate(d["cells"]):
            if c.get("fact") is not None and c["fact"] not in facts:
                raise DataError(f"unknown fact {c['fact']!r}", f"{ptr}/isolating/cells/{k}/fact")
            if c["source"] == "lcm_formula" and (c["locus"] not in ("off_Hx", "on_Hx_off_Hy") or d["projection"] is None):
                raise DataError("the lcm formula needs a projection and a locus column", f"{ptr}/isolating/cells/{k}")
            if c["source"] == "paper_fact" and not c.get("fact"):
                raise DataError("a paper_fact cell needs a citation fact", f"{ptr}/isolating/cells/{k}")
            cells.append(IsolatingCell(c["locus"], c["printed"], c["source"], c.get("fact")))
        iso = IsolatingData(d["projection"], tuple(d["dropped"]), tuple(cells))

    family = FamilyRecord(
        id=f["id"], kind=kind, space=space, degrees=degrees, stored_a3=stored, basket_printed=basket,
        facts=tuple(f["facts"]), plan=tuple(plan), qi_record=qi, isolating=iso,
        annotations=dict(f.get("annotations", {})), notes=tuple(f.get("notes", [])),
    )
    if kind == "wci2" and stored is not None and family.derived_a3 != stored:
        raise DataError(f"stored A^3 {fmt(stored)} differs from derived {fmt(family.derived_a3)}", ptr + "/stored_a3")
    return family


# ---------------------------------------------------------------- serialization


def to_document(db: Database) -> dict:
    return {
        "format": db.metadata.get("format", "lctcert-families"),
        "version": db.metadata.get("version", 1),
        "source_tag": db.metadata.get("source_tag", ""),
        "facts": [_fact_doc(f) for f in db.facts.values()],
        "families": [_family_doc(f) for f in db.families.values()],
    }


def _fact_doc(f: GeometricFact) -> dict:
    out: dict = {"id": f.id, "kind": f.kind, "subject": dict(f.subject)}
    if f.bound is not None:
        out["bound"] = fmt(f.bound)
    out["citation"] = {"locator": f.citation.locator, "quote": f.citation.quote}
    return out


def _family_doc(f: FamilyRecord) -> dict:
    out: dict = {
        "id": f.id,
        "kind": f.kind,
        "coordinates": [[n, w] for n, w in f.space.display],
        "degrees": list(f.degrees),
        "stored_a3": None if f.stored_a3 is None else fmt(f.stored_a3),
        "basket_printed": [{"type": e.qtype.as_list(), "count": e.count, "plus": e.plus} for e in f.basket_printed],
        "facts": list(f.facts),
    }
    if f.qi_record is not None:
        q = f.qi_record
        rec = {
            "point": q.point.as_list(), "x_i0": q.x_i0, "x_i1": q.x_i1, "xi": q.xi, "zeta": q.zeta,
            "n_G": q.n_g, "exceptional_weights": list(q.exceptional_weights),
            "exceptional_label": q.exceptional_label, "d_Xi": q.d_xi, "c_polynomial": q.c_polynomial,
            "c_degree": q.c_degree, "budget": q.budget,
        }
        if q.text_n is not None:
            rec["text_n"] = q.text_n
        out["qi_record"] = rec
    if f.isolating is not None:
        d = f.isolating
        cells = []
        for c in d.cells:
            cell: dict = {"locus": c.locus, "printed": c.printed, "source": c.source}
            if c.fact is not None:
                cell["fact"] = c.fact
            cells.append(cell)
        out["isolating"] = {"projection": d.projection, "dropped": list(d.dropped), "cells": cells}
    if f.annotations:
        out["annotations"] = dict(f.annotations)
    if f.notes:
        out["notes"] = list(f.notes)
    plan = []
    for e in f.plan:
        entry: dict = {"locus": e.locus, "template": e.template, "params": e.params, "facts": list(e.facts)}
        if e.annotation:
            entry["annotation"] = e.annotation
        plan.append(entry)
    out["plan"] = plan
    return out


def dumps_document(doc: dict) -> bytes:
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def serialize(db: Database) -> bytes:
    """Canonical bytes: two-space indentation, insertion order, trailing newline."""
    return dumps_document(to_document(db))


def load_default(path: str | None = None) -> Database:
    p = resolve_data_path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {p}: {exc.strerror}") from None
    return load_database(raw)


# ---------------------------------------------------------------- validation


def _basket_text(entries) -> str:
    return str(Basket.from_counts(entries))


def validate_family(family: FamilyRecord, db: Database) -> list[CheckResult]:
    """All consistency checks for one family, with known discrepancies annotated."""
    out: list[CheckResult] = []
    w = family.space.weights
    printed = [(e.qtype, e.count) for e in family.basket_printed]
    if family.kind == "wci2":
        out.append(CheckResult("index one", passed(sum(w) - sum(family.degrees) == 1),
                               {"sum weights": sum(w), "sum degrees": sum(family.degrees)}))
        out.append(CheckResult("A3", passed(family.stored_a3 is None or family.derived_a3 == family.stored_a3),
                               {"derived": family.derived_a3,
                                "stored": family.stored_a3 if family.stored_a3 is not None else "none"}))
        try:
            computed = basket_wci(family)
        except (BasketError, InputError) as exc:
            out.append(CheckResult("basket", Status.FAIL, {}, note=str(exc)))
            computed = None
        if computed is not None:
            diff = _basket_diff(computed.as_dict(), Basket.from_counts(printed).as_dict())
            out.append(CheckResult("basket", passed(not diff),
                                   {"computed": str(computed), "printed": _basket_text(printed)},
                                   note="; ".join(diff)))
            out.append(rr_consistency(family, computed))
        out.append(rr_consistency(family, printed).renamed("riemann_roch printed"))
    else:
        half = Fraction(sum(family.degrees), 2)
        out.append(CheckResult("index one", passed(sum(w) - half == 1),
                               {"sum weights": sum(w), "half sum of Pfaffian degrees": half}))
        out.extend(pfaffian_checks(family))
        out.append(rr_consistency(family, printed))
    flags = []
    for e in family.basket_printed:
        kn = kawamata_numbers(e.qtype, family.a3)
        if kn.plus != e.plus:
            flags.append(f"{e.qtype}: B^3 = {fmt(kn.b3)}, printed plus = {e.plus}")
    out.append(CheckResult("plus flags", passed(not flags), {"points": len(family.basket_printed)},
                           note="; ".join(flags)))
    if family.qi_record is not None:
        out.append(qi_verify(family))
    out.extend(isolating_checks(family, dict(db.facts)))
    out.append(coverage(family))
    return [_annotate(r, family) for r in out]


def _basket_diff(computed: dict, printed: dict) -> list[str]:
    diff = []
    for t in sorted(set(computed) | set(printed), key=lambda t: t.key):
        c, p = computed.get(t, 0), printed.get(t, 0)
        if c != p:
            diff.append(f"{t}: computed {c}, printed {p}")
    return diff


def _annotate(result: CheckResult, family: FamilyRecord) -> CheckResult:
    text = family.annotations.get(result.name)
    if text and result.status is Status.FAIL:
        return result.annotate(text)
    return result


def validate_database(db: Database) -> list[CheckResult]:
    """Every family's checks, named ``[id] check`` and ordered by family id."""
    out = []
    for fid in db.sorted_ids():
        for r in validate_family(db.families[fid], db):
            out.append(r.renamed(f"[{fid}] {r.name}"))
    return out


def lint_facts(db: Database) -> dict[str, list[str]]:
    """Fact ids grouped by citation locator, for auditing."""
    groups: dict[str, list[str]] = defaultdict(list)
    for f in db.facts.values():
        groups[f.citation.locator].append(f.id)
    return {k: sorted(v) for k, v in sorted(groups.items())}
