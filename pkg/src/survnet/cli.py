"""Command-line interface. One model file per invocation.

Exit codes: 0 success, 1 validation or coverage failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import analyze
from .corpus import CORPORA, corpus_bytes
from .errors import ModelSyntaxError, ModelValidationError, ModificationError, Severity
from .modelfile import ModelFile, load_model, parse_model, serialize_model, to_json, validate_model
from .modifications import apply_modifications, diff_architectures, verify_mitigation_coverage
from .render import export_graph, render_analysis, render_coverage, render_diff, render_map
from .requirements import derive_requirements, render_requirements

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read(path: str) -> ModelFile:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_model(data)


def _parse_refs(spec: str) -> list[int]:
    refs: list[int] = []
    for part in filter(None, (p.strip() for p in spec.split(","))):
        lo, sep, hi = part.partition("..")
        try:
            if sep:
                refs.extend(range(int(lo), int(hi) + 1))
            else:
                refs.append(int(part))
        except ValueError:
            raise UsageError(f"bad --refs value {part!r}") from None
    return refs


def _parse_params(pairs: Sequence[str]) -> dict[str, str]:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


def _subject(m: ModelFile) -> str:
    names = []
    for tag in m.essential_assets:
        asset = m.architecture.asset(tag.asset)
        names.append((asset.name or asset.id).lower())
    return " and ".join(names) + " data" if names else "essential data"


def _require_map(m: ModelFile):
    if m.map is None:
        raise UsageError("model has no survivability map")
    return m.map


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        data = Path(args.model).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {args.model}: {exc.strerror or exc}") from None
    diags = validate_model(load_model(data), "strict" if args.strict else "lax")
    for d in diags:
        print(d, file=sys.stderr)
    return EXIT_FAILED if any(d.severity is Severity.ERROR for d in diags) else EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    m = _read(args.model)
    result = analyze(m.architecture, m.scenarios, m.essential_assets, args.threshold)
    sys.stdout.write(to_json(result) if args.format == "json" else render_analysis(result))
    return EXIT_OK


def cmd_map(args: argparse.Namespace) -> int:
    m = _read(args.model)
    result = analyze(m.architecture, m.scenarios, m.essential_assets, args.threshold)
    sys.stdout.write(render_map(
        _require_map(m), m.intrusions, m.modifications, result, gaps=args.gaps, coverage=args.coverage,
    ))
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    m = _read(args.model)
    by_ref = {mod.ref: mod for mod in m.modifications}
    refs = _parse_refs(args.refs) if args.refs else sorted(by_ref)
    unknown = [r for r in refs if r not in by_ref]
    if unknown:
        raise UsageError("undeclared modification(s): " + ", ".join(map(str, unknown)))
    modified = apply_modifications(m.architecture, [by_ref[r] for r in refs])
    out = m.model_copy(update={"architecture": modified})
    Path(args.output).write_bytes(serialize_model(out))
    print(f"applied {len(refs)} modification(s) to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    m = _read(args.model)
    report = verify_mitigation_coverage(m.architecture, _require_map(m), m.intrusions, m.modifications)
    sys.stdout.write(render_coverage(report))
    return EXIT_OK if report.all_covered else EXIT_FAILED


def cmd_graph(args: argparse.Namespace) -> int:
    m = _read(args.model)
    result = analyze(m.architecture, m.scenarios, m.essential_assets, args.threshold) if args.with_analysis else None
    sys.stdout.write(export_graph(m.architecture, result))
    return EXIT_OK


def cmd_requirements(args: argparse.Namespace) -> int:
    m = _read(args.model)
    statements = derive_requirements(
        _require_map(m), m.modifications, _parse_params(args.param), subject=_subject(m),
    )
    if args.format == "json":
        sys.stdout.write(to_json([s.model_dump(mode="json") for s in statements]))
    else:
        sys.stdout.write(render_requirements(statements))
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    diff = diff_architectures(_read(args.before).architecture, _read(args.after).architecture)
    sys.stdout.write(to_json(diff) if args.format == "json" else render_diff(diff))
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    sys.stdout.buffer.write(corpus_bytes(args.name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="survnet", description="Survivability analysis of architecture models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("model")
    p.add_argument("--strict", action="store_true", help="also check trace connectivity and custodian access")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="essential, compromisable and softspot elements")
    p.add_argument("model")
    p.add_argument("--threshold", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("map", help="render the survivability map")
    p.add_argument("model")
    p.add_argument("--gaps", action="store_true", help="append the gap summary")
    p.add_argument("--coverage", action="store_true", help="append the modification coverage matrix")
    p.add_argument("--threshold", type=int, default=1)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("apply", help="apply modifications and write the modified model")
    p.add_argument("model")
    p.add_argument("--refs", help="comma-separated references, ranges as 1..6 (default: all)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", help="mitigation coverage of the model's architecture")
    p.add_argument("model")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="DOT export of the architecture")
    p.add_argument("model")
    p.add_argument("--with-analysis", action="store_true", help="highlight reported softspots")
    p.add_argument("--threshold", type=int, default=1)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("requirements", help="derive requirement statements from the map")
    p.add_argument("model")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_requirements)

    p = sub.add_parser("diff", help="structural difference between two models' architectures")
    p.add_argument("before")
    p.add_argument("after")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("example", help="print a bundled model file")
    p.add_argument("name", nargs="?", default="sentinel", choices=CORPORA)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ModelSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelValidationError as exc:
        for d in exc.diagnostics:
            print(d, file=sys.stderr)
        return EXIT_FAILED
    except (ModificationError, ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
