"""Command line interface.

Subcommands: verdict, catalog list|run, ls-max, tube-check, report.
Exit codes: 0 success, 1 input error, 2 expectation mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as cat
from .report import ConfigError, dumps_canonical, render, run_config

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_common(parser):
    parser.add_argument("--format", choices=("json", "markdown"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=100)
    parser.add_argument("--out", type=Path, default=None, help="write output to a file")


def _emit(text: str, out: Path | None):
    if out is not None:
        out.write_text(text, encoding="utf-8")
    else:
        print(text)


def _parse_params(pairs):
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError("--param", f"expected key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def build_parser() -> _Parser:
    parser = _Parser(prog="ricci-pinch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verdict = sub.add_parser("verdict", help="pinching verdict for an entry or operator file")
    p_verdict.add_argument("--entry", help="catalog label")
    p_verdict.add_argument("--operators", type=Path, help="shape-operator JSON file")
    p_verdict.add_argument("--k", type=int, required=True)
    p_verdict.add_argument("--dupin", action="store_true", help="also detect the Dupin normal")
    _add_common(p_verdict)

    p_catalog = sub.add_parser("catalog", help="list or run catalog entries")
    cat_sub = p_catalog.add_subparsers(dest="catalog_command", required=True)
    p_list = cat_sub.add_parser("list")
    p_list.add_argument("--format", choices=("json", "markdown"), default="markdown")
    p_run = cat_sub.add_parser("run")
    p_run.add_argument("label")
    p_run.add_argument("--format", choices=("json", "markdown"), default="markdown")

    p_ls = sub.add_parser("ls-max", help="maximize the two-form functional over p-planes")
    p_ls.add_argument("--entry", help="catalog label")
    p_ls.add_argument("--operators", type=Path)
    p_ls.add_argument("--p", type=int, required=True)
    _add_common(p_ls)

    p_tube = sub.add_parser("tube-check", help="verify tube identities on a built-in patch")
    p_tube.add_argument("--patch", required=True)
    p_tube.add_argument("--tau", type=float, default=0.7853981633974483)
    p_tube.add_argument("--param", action="append", help="key=value patch parameter")
    p_tube.add_argument(
        "--checks", default="unit-closure", help="comma-separated list of patch checks"
    )
    _add_common(p_tube)

    p_report = sub.add_parser("report", help="run a configuration document")
    p_report.add_argument("--config", type=Path, required=True)
    p_report.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    _add_common(p_report)

    return parser


def _operator_config(args, checks, extra=None):
    config = {"checks": checks, "seed": args.seed, "restarts": args.restarts}
    if args.operators is not None:
        config["operators"] = json.loads(args.operators.read_text(encoding="utf-8"))
    elif args.entry is not None:
        config["entry"] = args.entry
    else:
        raise ConfigError("<args>", "one of --entry or --operators is required")
    config.update(extra or {})
    return config


def _cmd_verdict(args) -> int:
    checks = ["star", "dupin"] if args.dupin else ["star"]
    config = _operator_config(args, checks, {"k": args.k})
    report = run_config(config)
    _emit(render(report, args.format), args.out)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if args.catalog_command == "list":
        labels = cat.catalog_labels()
        if args.format == "json":
            print(dumps_canonical({"entries": labels}))
        else:
            print("| label | dim | ambient | kind |")
            print("|---|---|---|---|")
            for label in labels:
                entry = cat.catalog_entry(label)
                kind = "operators" if hasattr(entry.data, "operators") else "analytic"
                print(f"| {label} | {entry.dim} | {entry.ambient} | {kind} |")
        return EXIT_OK
    try:
        results = cat.catalog_sweep([args.label])
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    result = results[0]
    doc = {
        "label": result.entry.label,
        "computed_max_k": result.computed_max_k,
        "computed_equality": result.computed_equality,
        "expected_max_k": result.entry.expected_max_k,
        "expected_equality": result.entry.expected_equality,
        "ok": result.ok,
        "mismatches": list(result.mismatches),
    }
    if args.format == "json":
        print(dumps_canonical(doc))
    else:
        print("| field | value |")
        print("|---|---|")
        for key, value in doc.items():
            print(f"| {key} | {value} |")
    return EXIT_OK if result.ok else EXIT_MISMATCH


def _cmd_ls_max(args) -> int:
    config = _operator_config(args, ["ls-max"], {"p": args.p})
    report = run_config(config)
    _emit(render(report, args.format), args.out)
    return EXIT_OK


def _cmd_tube(args) -> int:
    config = {
        "patch": args.patch,
        "tau": args.tau,
        "checks": [c.strip() for c in args.checks.split(",") if c.strip()],
        "seed": args.seed,
    }
    config.update(_parse_params(args.param))
    report = run_config(config)
    _emit(render(report, args.format), args.out)
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        config = json.loads(args.config.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.seed:
        config.setdefault("seed", args.seed)
    report = run_config(config)
    if args.figures is not None:
        from .figures import render_report_figures

        report["figures"] = render_report_figures(config, report, args.figures)
    _emit(render(report, args.format), args.out)
    expectation = report.get("expectation")
    if expectation is not None and not expectation["ok"]:
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verdict": _cmd_verdict,
        "catalog": _cmd_catalog,
        "ls-max": _cmd_ls_max,
        "tube-check": _cmd_tube,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
