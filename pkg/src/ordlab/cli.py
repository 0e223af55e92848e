"""``ordlab run FILE`` and ``ordlab suite NAME``.

Exit codes: 0 when every expectation is met (or every suite check passes),
1 on a mismatch or failed check, 2 on malformed input or an unknown suite.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .io import SchemaError, encode
from .operators import DEFAULT_BUDGET
from .problem import SCHEMA_VERSION, load_problem, run_problem
from .suites import SUITES, run_suite

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for generated corpora (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"counterexample search budget (default {DEFAULT_BUDGET})")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    parser = argparse.ArgumentParser(prog="ordlab", description="Exact order-theory checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="evaluate the queries of a problem file")
    run.add_argument("file")
    suite = sub.add_parser("suite", parents=[common], help="run a named regression suite")
    suite.add_argument("name", help="one of: " + ", ".join(SUITES))
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _suite_json(rep, seed, budget, seconds) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "suite": rep.name,
        "seed": seed,
        "budget": budget,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks],
        "summary": {"passed": sum(c.passed for c in rep.checks),
                    "failed": sum(not c.passed for c in rep.checks)},
        "timing": {"total_seconds": round(seconds, 6)},
    }


def _suite_text(rep) -> str:
    lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f"  ({c.detail})" if c.detail and not c.passed else "")
             for c in rep.checks]
    n_ok = sum(c.passed for c in rep.checks)
    lines.append(f"suite {rep.name}: {n_ok}/{len(rep.checks)} checks passed")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget < 1:
        print("error: --budget must be positive", file=sys.stderr)
        return 2
    if args.command == "suite":
        if args.name not in SUITES:
            print(f"error: unknown suite {args.name!r}; known: {', '.join(SUITES)}", file=sys.stderr)
            return 2
        t0 = time.perf_counter()
        rep = run_suite(args.name, args.seed, args.budget)
        data = _suite_json(rep, args.seed, args.budget, time.perf_counter() - t0)
        _emit(json.dumps(data, sort_keys=True, indent=2) if args.format == "json" else _suite_text(rep), args.out)
        return 0 if rep.passed else 1
    try:
        report = run_problem(load_problem(args.file), args.seed, args.budget)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(encode(report.to_json()), sort_keys=True, indent=2)
    else:
        text = report.to_text()
    _emit(text, args.out)
    return 1 if report.mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
