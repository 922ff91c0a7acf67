"""Command-line entry point: ``stpa-priv check | derive | report | export | rules``.

Exit codes: 0 success, 1 error diagnostics (or warnings with ``--strict``),
2 usage or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, TextIO

from stpapriv import checks, derive, dsl, report
from stpapriv.diagnostics import Diagnostic, Severity, has_errors
from stpapriv.model import AnalysisModel
from stpapriv.structure import export_dot

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_USAGE = 0, 1, 2

_COLORS = {Severity.ERROR: "31", Severity.WARNING: "33", Severity.INFO: "36"}


class _InputError(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load(path: str) -> tuple[Optional[AnalysisModel], list[Diagnostic], str]:
    """Read ``path`` (``-`` for stdin) as ``.stpa`` text or an exported JSON document."""
    data = _read(path)
    name = "<stdin>" if path == "-" else path
    if path.endswith(".json") or data.lstrip()[:1] == b"{":
        model, diags = dsl.load_json(data)
    else:
        model, diags = dsl.parse(data, name)
    return model, diags, name


def _use_color(stream: TextIO) -> bool:
    return "STPA_NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _format_text(diag: Diagnostic, file_name: str, color: bool) -> str:
    line = diag.render(file_name)
    if color:
        label = f"{diag.severity.value}[{diag.code}]"
        line = line.replace(label, f"\x1b[{_COLORS[diag.severity]}m{label}\x1b[0m", 1)
    return line


def _print_diagnostics(diags: list[Diagnostic], file_name: str, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps([d.to_dict() for d in diags], indent=2, ensure_ascii=False) + "\n")
        return
    color = _use_color(out)
    for d in diags:
        out.write(_format_text(d, file_name, color) + "\n")


def _parse_overrides(pairs: list[str]) -> dict[str, Severity]:
    overrides = {}
    for pair in pairs:
        code, sep, level = pair.partition("=")
        if not sep:
            raise ValueError(f"--severity expects CODE=LEVEL, got {pair!r}")
        try:
            overrides[code.strip()] = Severity(level.strip().lower())
        except ValueError:
            raise ValueError(f"unknown severity {level!r} (use error, warning or info)") from None
    return overrides


def cmd_check(args, out: TextIO) -> int:
    config = checks.RuleConfig(_parse_overrides(args.severity), strict=args.strict)
    model, diags, name = load(args.file)
    if model is not None:
        diags = diags + checks.run_checks(model, config)
    _print_diagnostics(diags, name, args.format, out)
    return checks.exit_status(diags, config.strict)


def _load_clean(args, out: TextIO) -> Optional[AnalysisModel]:
    model, diags, name = load(args.file)
    if model is None or has_errors(diags):
        _print_diagnostics(diags, name, "text", out)
        return None
    return model


def cmd_derive(args, out: TextIO) -> int:
    model = _load_clean(args, out)
    if model is None:
        return EXIT_DIAGNOSTICS
    produce = {
        "constraints": derive.suggest_constraints,
        "pcca": derive.generate_pcca_candidates,
        "corresponding": derive.derive_corresponding_constraints,
    }[args.what]
    out.write(derive.render(produce(model), model, args.format))
    return EXIT_OK


def cmd_report(args, out: TextIO) -> int:
    model = _load_clean(args, out)
    if model is None:
        return EXIT_DIAGNOSTICS
    if args.what == "stats":
        out.write(report.render_stats(report.stats(model), args.format))
        return EXIT_OK
    rows = report.traceability_matrix(model)
    if args.format == "json":
        out.write(json.dumps([dict(zip(report.MATRIX_COLUMNS, r.cells())) for r in rows],
                             indent=2) + "\n")
    else:
        out.write(report.render_matrix(rows, "csv" if args.format == "csv" else "markdown"))
    return EXIT_OK


def cmd_export(args, out: TextIO) -> int:
    model = _load_clean(args, out)
    if model is None:
        return EXIT_DIAGNOSTICS
    if args.what == "dot":
        out.write(export_dot(model.structure))
    else:
        out.write(report.export_json(model))
    return EXIT_OK


def cmd_rules(args, out: TextIO) -> int:
    rules = checks.list_rules()
    if args.format == "json":
        out.write(json.dumps([{"code": r.code, "severity": r.severity.value,
                               "description": r.description, "step": r.step} for r in rules],
                             indent=2) + "\n")
        return EXIT_OK
    out.write(f"{'CODE':<6}{'SEVERITY':<10}{'STEP':<18}DESCRIPTION\n")
    for r in rules:
        out.write(f"{r.code:<6}{r.severity.value:<10}{r.step:<18}{r.description}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stpa-priv",
        description="Check, derive and report on STPA-Priv privacy analysis models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the rule suite and print diagnostics")
    p.add_argument("file", help="analysis file (.stpa or exported .json); '-' reads stdin")
    p.add_argument("--strict", action="store_true", help="exit 1 on warnings as well")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--severity", action="append", default=[], metavar="CODE=LEVEL",
                   help="override a rule's severity (repeatable)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", help="print suggested artifacts")
    p.add_argument("what", choices=("constraints", "pcca", "corresponding"))
    p.add_argument("file")
    p.add_argument("--format", choices=("dsl", "json"), default="dsl")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("report", help="print the traceability matrix or statistics")
    p.add_argument("what", choices=("trace", "stats"))
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "markdown", "csv", "json"), default="text")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("export", help="print the model as DOT or JSON")
    p.add_argument("what", choices=("dot", "json"))
    p.add_argument("file")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("rules", help="list the rule table")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_rules)
    return parser


def main(argv: Optional[list[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except _InputError as exc:
        print(f"stpa-priv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"stpa-priv: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
