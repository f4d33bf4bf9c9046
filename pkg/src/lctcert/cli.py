"""Command-line front end: ``lctcert validate|tables|basket|isolate|certify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Sequence

from .certificate import Certificate, assemble_certificate
from .errors import LctCertError
from .famdb import Database, DATA_ENV, load_default, resolve_data_path, validate_database, validate_family
from .isolating import isolating_checks, pfaffian_checks
from .qi import qi_subchecks
from .rational import fmt
from .records import FamilyRecord, parse_family_id
from .results import CheckResult, Status, worst

FORMATS = ("text", "md", "json", "csv")
TABLES = ("degrees", "baskets", "isolating", "qi")

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INDETERMINATE = 0, 1, 2, 3


@dataclass(frozen=True)
class Item:
    group: str
    result: CheckResult


@dataclass
class Report:
    command: str
    items: list[Item]
    strict: bool
    certificates: list[Certificate] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def summary(self) -> dict[str, int]:
        counts = {"total": len(self.items), "pass": 0, "fail": 0, "indeterminate": 0, "annotated": 0}
        for item in self.items:
            counts[item.result.effective(self.strict).value.lower()] += 1
            if item.result.annotated:
                counts["annotated"] += 1
        return counts

    def status(self) -> Status:
        return worst(i.result.effective(self.strict) for i in self.items)

    def exit_code(self) -> int:
        s = self.status()
        if s is Status.PASS:
            return EXIT_PASS
        if s is Status.FAIL or self.strict:
            return EXIT_FAIL
        return EXIT_INDETERMINATE


# ---------------------------------------------------------------- commands


def _items(group, results) -> list[Item]:
    return [Item(str(group), r) for r in results]


def _annotated(family: FamilyRecord, results) -> list[CheckResult]:
    out = []
    for r in results:
        text = family.annotations.get(r.name)
        out.append(r.annotate(text) if text and r.status is Status.FAIL else r)
    return out


def cmd_validate(db: Database, args) -> Report:
    items = []
    for r in validate_database(db):
        group, _, name = r.name.partition("] ")
        items.append(Item(group.lstrip("["), r.renamed(name)))
    return Report("validate", items, args.strict)


def cmd_tables(db: Database, args) -> Report:
    items: list[Item] = []
    which = args.which
    for fid in db.sorted_ids():
        fam = db.families[fid]
        if which == "degrees" and fam.kind == "wci2":
            derived, printed = fam.derived_a3, fam.stored_a3
            ok = printed is not None and derived == printed
            items.append(Item(str(fid), CheckResult(
                "A3", Status.PASS if ok else Status.FAIL,
                {"space": str(fam.space), "degrees": " ".join(map(str, fam.degrees)),
                 "derived": derived, "printed": printed if printed is not None else "none"})))
        elif which == "baskets":
            wanted = ("basket", "plus flags") if fam.kind == "wci2" else ("riemann_roch", "plus flags")
            items.extend(_items(fid, [r for r in validate_family(fam, db) if r.name in wanted]))
        elif which == "isolating" and (fam.isolating is not None or fam.kind == "pfaffian3"):
            checks = pfaffian_checks(fam) if fam.kind == "pfaffian3" else isolating_checks(fam, dict(db.facts))
            items.extend(_items(fid, _annotated(fam, checks)))
        elif which == "qi" and fam.qi_record is not None:
            items.extend(_items(fid, qi_subchecks(fam)))
    return Report(f"tables --which {which}", items, args.strict)


def _family(db: Database, raw: str) -> FamilyRecord:
    return db.family(parse_family_id(raw))


def cmd_basket(db: Database, args) -> Report:
    fam = _family(db, args.family)
    wanted = ("basket", "riemann_roch", "riemann_roch printed", "plus flags")
    results = [r for r in validate_family(fam, db) if r.name in wanted]
    return Report(f"basket {fam.id}", _items(fam.id, results), args.strict)


def cmd_isolate(db: Database, args) -> Report:
    fam = _family(db, args.family)
    if fam.kind == "pfaffian3":
        results = pfaffian_checks(fam)
    elif fam.isolating is not None:
        results = _annotated(fam, isolating_checks(fam, dict(db.facts)))
    else:
        raise LctCertError(f"family {fam.id} has no isolating-class entries")
    return Report(f"isolate {fam.id}", _items(fam.id, results), args.strict)


def cmd_certify(db: Database, args) -> Report:
    if args.all == bool(args.family):
        raise LctCertError("certify takes either a family id or --all")
    ids = db.sorted_ids() if args.all else [parse_family_id(args.family)]
    certs = [assemble_certificate(db.family(fid), db, strict=args.strict) for fid in ids]
    items = []
    for c in certs:
        for e in c.entries:
            items.append(Item(str(c.family_id), e.result.renamed(f"{e.locus}: {e.template}")))
    command = "certify --all" if args.all else f"certify {args.family}"
    return Report(command, items, args.strict, certificates=certs)


COMMANDS = {
    "validate": cmd_validate,
    "tables": cmd_tables,
    "basket": cmd_basket,
    "isolate": cmd_isolate,
    "certify": cmd_certify,
}


# ---------------------------------------------------------------- rendering


def _value_text(values) -> str:
    return "; ".join(f"{k}={v}" for k, v in CheckResult("", Status.PASS, values).to_json()["values"].items())


def _flags(r: CheckResult) -> str:
    flags = []
    if r.tight:
        flags.append("tight")
    if r.annotated:
        flags.append("annotated")
    return ",".join(flags)


def render_text(report: Report, verbose: bool) -> str:
    lines = [f"# {report.command}"]
    verdicts = {str(c.family_id): c.verdict for c in report.certificates}
    current = None
    for item in report.items:
        r = item.result
        if item.group in verdicts and item.group != current:
            lines.append(f"[{item.group}] {verdicts[item.group]}")
            current = item.group
        status = r.effective(report.strict).value
        extra = f" ({_flags(r)})" if _flags(r) else ""
        lines.append(f"{status:<13} [{item.group}] {r.name}{extra}")
        if verbose or r.status is not Status.PASS:
            if r.values:
                lines.append(f"    {_value_text(r.values)}")
            if r.missing_facts:
                lines.append(f"    missing: {', '.join(r.missing_facts)}")
            if r.annotation:
                lines.append(f"    annotation: {r.annotation}")
            if r.note:
                lines.append(f"    note: {r.note}")
    s = report.summary()
    lines.append(f"summary: {s['total']} checks, {s['pass']} pass, {s['fail']} fail, "
                 f"{s['indeterminate']} indeterminate, {s['annotated']} annotated")
    if report.certificates:
        good = sum(1 for c in report.certificates if c.verdict == "LCT_GE_1")
        lines.append(f"certificates: {good}/{len(report.certificates)} LCT_GE_1")
    return "\n".join(lines) + "\n"


def render_md(report: Report, verbose: bool) -> str:
    lines = [f"## `{report.command}`", "", "| family | check | status | values | note |", "|---|---|---|---|---|"]
    for item in report.items:
        r = item.result
        note = " ".join(x for x in (_flags(r), r.annotation, r.note, ", ".join(r.missing_facts)) if x)
        cells = [item.group, r.name, r.effective(report.strict).value, _value_text(r.values), note]
        lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
    s = report.summary()
    lines += ["", f"**summary**: {s['total']} checks, {s['pass']} pass, {s['fail']} fail, "
                  f"{s['indeterminate']} indeterminate, {s['annotated']} annotated"]
    for c in report.certificates:
        lines.append(f"- {c.family_id}: {c.verdict}")
    return "\n".join(lines) + "\n"


def render_json(report: Report, verbose: bool) -> str:
    doc: dict = {
        "command": report.command,
        "strict": report.strict,
        "items": [{"family": i.group, **i.result.to_json(report.strict)} for i in report.items],
        "summary": report.summary(),
        "exit_code": report.exit_code(),
    }
    if report.certificates:
        doc["certificates"] = [c.to_json() for c in report.certificates]
    if verbose:
        doc["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        doc["dataset"] = dict(report.metadata)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_csv(report: Report, verbose: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "check", "status", "effective_status", "flags", "values", "facts_used", "note"])
    for item in report.items:
        r = item.result
        w.writerow([item.group, r.name, r.status.value, r.effective(report.strict).value, _flags(r),
                    _value_text(r.values), " ".join(sorted(r.facts_used)),
                    " ".join(x for x in (r.annotation, r.note) if x)])
    return buf.getvalue()


RENDERERS = {"text": render_text, "md": render_md, "json": render_json, "csv": render_csv}


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--data", metavar="PATH", help=f"dataset file (default: ${DATA_ENV} or the bundled file)")
    common.add_argument("--strict", action="store_true", help="count annotated discrepancies as failures")
    common.add_argument("--verbose", action="store_true", help="show every value; add a timestamp to JSON")

    parser = argparse.ArgumentParser(prog="lctcert", description="Exact checks for codimension 2 and 3 Fano tables.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="run every dataset consistency check")
    p = sub.add_parser("tables", parents=[common], help="recompute a table and diff it against the dataset")
    p.add_argument("--which", choices=TABLES, required=True)
    p = sub.add_parser("basket", parents=[common], help="basket and Riemann-Roch checks for one family")
    p.add_argument("family")
    p = sub.add_parser("isolate", parents=[common], help="isolating classes for one family")
    p.add_argument("family")
    p = sub.add_parser("certify", parents=[common], help="evaluate certification plans")
    p.add_argument("family", nargs="?")
    p.add_argument("--all", action="store_true")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        db = load_default(args.data)
        report = COMMANDS[args.command](db, args)
    except LctCertError as exc:
        err.write(f"lctcert: error: {exc}\n")
        return EXIT_INPUT
    report.metadata = {**db.metadata, "path": str(resolve_data_path(args.data))}
    out.write(RENDERERS[args.format](report, args.verbose))
    return report.exit_code()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
