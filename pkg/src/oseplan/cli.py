"""Command-line interface.

Verbs: transform, match, plan, audit, whatif, report, serve. Exit codes are
a stable contract: 0 success, 1 input error (unreadable or malformed
files), 2 validation findings, 3 pipeline infeasibility.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io_formats
from .automation_report import report_statistics
from .match_engine import match_face, select_candidate
from .ose_db import OSEDatabase, validate_db, what_if_expand, audit_database
from .part_model import Part, validate_part
from .pipeline import run_pipeline
from .setup_plan import PartitionError
from .transform import GeometryType, Tolerances, transform_part

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_json(path: str) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_INPUT) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            EXIT_INPUT,
        ) from exc


def _load_part(path: str) -> Part:
    data = _load_json(path)
    try:
        part = io_formats.parse_part(data)
    except io_formats.SchemaError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc
    violations = validate_part(part)
    if violations:
        report = "\n".join(f"  {v}" for v in violations)
        raise CliError(f"{path}: part validation failed:\n{report}", EXIT_VALIDATION)
    return part


def _load_db(path: str) -> tuple[OSEDatabase, str]:
    data = _load_json(path)
    try:
        db = io_formats.parse_osedb(data)
    except io_formats.SchemaError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc
    findings = validate_db(db)
    if findings:
        report = "\n".join(f"  {f}" for f in findings)
        raise CliError(f"{path}: database validation failed:\n{report}", EXIT_VALIDATION)
    return db, io_formats.database_version(data)


def _load_tools(path: str):
    data = _load_json(path)
    try:
        return io_formats.parse_tools(data)
    except io_formats.SchemaError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc


def _load_tolerances(path: str | None) -> Tolerances | None:
    if path is None:
        return None
    data = _load_json(path)
    if not isinstance(data, dict):
        raise CliError(f"{path}: tolerances file must be a JSON object", EXIT_INPUT)
    try:
        return Tolerances.from_dict(data)
    except TypeError as exc:
        raise CliError(f"{path}: unknown tolerance field ({exc})", EXIT_INPUT) from exc


def _emit(data: object, out: str | None, as_text: bool = False) -> None:
    rendered = data if as_text else io_formats.dumps(data) + "\n"
    if out:
        Path(out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)


def _cmd_transform(args) -> int:
    part = _load_part(args.part)
    result = transform_part(part, _load_tolerances(args.tolerances))
    synthesis = report_statistics(result.counts)
    _emit(io_formats.serialize_attributes(result, synthesis), args.out)
    return EXIT_OK


def _cmd_match(args) -> int:
    part = _load_part(args.part)
    db, _ = _load_db(args.osedb)
    tools = _load_tools(args.tools)
    result = transform_part(part, _load_tolerances(args.tolerances))
    candidates = {}
    for attrs in result.attributes:
        if attrs.inaccessible:
            continue
        face_candidates = match_face(attrs, db, tools)
        if face_candidates:
            face_candidates = select_candidate(face_candidates, level=1)
        candidates[attrs.face] = face_candidates
    _emit(io_formats.serialize_candidates(candidates), args.out)
    return EXIT_OK


def _cmd_plan(args) -> int:
    part = _load_part(args.part)
    db, version = _load_db(args.osedb)
    tools = _load_tools(args.tools)
    try:
        result = run_pipeline(
            part, db, tools, _load_tolerances(args.tolerances), database_ver=version
        )
    except (PartitionError, RuntimeError) as exc:
        raise CliError(f"pipeline infeasibility: {exc}", EXIT_INFEASIBLE) from exc
    _emit(result.document, args.out)
    if args.text:
        Path(args.text).write_text(result.text + "\n", encoding="utf-8")
    return EXIT_OK


def _cmd_audit(args) -> int:
    db, _ = _load_db(args.osedb)
    report = audit_database(db)
    payload = {
        "shadowing": [
            {"kind": f.kind, "oses": list(f.subject), "detail": f.detail}
            for f in report.shadowing
        ],
        "unsatisfiable": [
            {"kind": f.kind, "oses": list(f.subject), "detail": f.detail}
            for f in report.unsatisfiable
        ],
        "duplicates": [
            {"kind": f.kind, "oses": list(f.subject), "detail": f.detail}
            for f in report.duplicates
        ],
        "clean": report.is_clean(),
    }
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_whatif(args) -> int:
    db, _ = _load_db(args.osedb)
    if args.ose not in db.oses:
        raise CliError(f"unknown OSE {args.ose!r}", EXIT_INPUT)
    vary = tuple(v.strip() for v in args.vary.split(",") if v.strip())
    unknown = set(vary) - {"mfg_type", "mode", "tmc"}
    if unknown:
        raise CliError(f"unknown what-if dimensions: {sorted(unknown)}", EXIT_INPUT)
    variants = what_if_expand(db.oses[args.ose], db, vary)
    payload = {
        "ose": args.ose,
        "variants": [
            {
                "field": v.field,
                "value": v.value,
                "descriptor": {k: val for k, val in v.descriptor},
                "covered": v.covered,
            }
            for v in variants
        ],
    }
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_report(args) -> int:
    if args.attributes:
        data = _load_json(args.attributes)
        result = io_formats.parse_attributes(data)
        counts = result.counts
    elif args.counts:
        try:
            raw = json.loads(args.counts)
        except json.JSONDecodeError as exc:
            raise CliError(f"--counts: malformed JSON: {exc.msg}", EXIT_INPUT) from exc
        try:
            counts = {GeometryType(k): int(v) for k, v in raw.items()}
        except ValueError as exc:
            raise CliError(f"--counts: {exc}", EXIT_INPUT) from exc
    else:
        raise CliError("report needs --attributes or --counts", EXIT_INPUT)
    try:
        table = report_statistics(counts)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    _emit(table.to_json(), args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(store_dir=args.store)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oseplan",
        description="Knowledge-based milling process planning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, part=False, db=False, tools=False):
        if part:
            p.add_argument("--part", required=True, help="part JSON file")
        if db:
            p.add_argument("--osedb", required=True, help="OSE database JSON file")
        if tools:
            p.add_argument("--tools", required=True, help="tools JSON file")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--tolerances", help="JSON file overriding tolerance defaults")

    p = sub.add_parser("transform", help="classify faces and compute attributes")
    common(p, part=True)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("match", help="rank OSE candidates per face")
    common(p, part=True, db=True, tools=True)
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("plan", help="run the full pipeline and emit the plan document")
    common(p, part=True, db=True, tools=True)
    p.add_argument("--text", help="also write the text rendering here")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("audit", help="shadowing/unsatisfiable/duplicate findings")
    common(p, db=True)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("whatif", help="expand single-field variants of one OSE")
    common(p, db=True)
    p.add_argument("--ose", required=True, help="OSE id to expand")
    p.add_argument("--vary", default="mfg_type,mode,tmc",
                   help="comma-separated dimensions (mfg_type,mode,tmc)")
    p.set_defaults(func=_cmd_whatif)

    p = sub.add_parser("report", help="synthesis statistics table")
    p.add_argument("--attributes", help="attributes JSON produced by transform")
    p.add_argument("--counts", help="inline JSON object of counts per geometry type")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--store", default="sessions", help="session persistence directory")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
