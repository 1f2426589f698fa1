"""
cli.py

Command-line entry point: `cacsa FILE [--fuel N] [--dump-constraints] [--trace]`.
Goal output goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from cacsa.config import LOG_LEVELS, CheckerConfig
from cacsa.driver import EXIT_INVALID, run
from cacsa.persistence import save_report
from cacsa.rewriting.reduction import DEFAULT_FUEL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cacsa", description="Sized-type checker for .cacsa source files.")
    ap.add_argument("file", help="Source file to check.")
    ap.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help=f"Reduction step budget (default: {DEFAULT_FUEL}).")
    ap.add_argument("--dump-constraints", action="store_true", help="Print every solved constraint problem.")
    ap.add_argument("--trace", action="store_true", help="Print inference derivation steps.")
    ap.add_argument("--json", dest="json_report", default=None, help="Also write the report as JSON to this path.")
    ap.add_argument("--log-level", default="WARNING", choices=LOG_LEVELS)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = CheckerConfig(
            fuel=args.fuel,
            dump_constraints=args.dump_constraints,
            trace=args.trace,
            json_report=args.json_report,
            log_level=args.log_level,
        )
    except ValidationError as exc:
        print(f"cacsa: invalid options: {exc}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(level=config.log_level, format="%(levelname)s %(name)s: %(message)s")
    # Deep terms recurse through the term functions.
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))

    report = run(args.file, config)
    for line in report.output_lines(config):
        print(line)
    for line in report.diagnostics:
        print(line, file=sys.stderr)
    if config.json_report is not None:
        save_report(report, config.json_report)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
