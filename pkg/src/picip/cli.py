"""``picip`` command-line entry point."""

from __future__ import annotations

import argparse
import os
import sys

from .report import FORMATS, RunConfig, format_report, run


def _threshold(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if not 1 <= n <= 6:
        raise argparse.ArgumentTypeError("must be between 1 and 6")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="picip",
        description="Score Java classes for potential inner-class inheritance problems (0-6).",
    )
    parser.add_argument("paths", nargs="+", help="Java files or directories (searched recursively)")
    parser.add_argument(
        "--format",
        choices=FORMATS,
        default=None,
        help="output format (default: $PICIP_FORMAT, else text)",
    )
    parser.add_argument(
        "--fail-threshold",
        type=_threshold,
        metavar="N",
        help="exit 1 when any top-level class totals N or more",
    )
    parser.add_argument("--metrics", action="store_true", help="also report DIT/NOC/TPC/TPAC/TAC")
    parser.add_argument("--per-class", action="store_true", help="also score nested classes individually")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or os.environ.get("PICIP_FORMAT") or "text"
    if fmt not in FORMATS:
        parser.error(f"PICIP_FORMAT must be one of {', '.join(FORMATS)}, got {fmt!r}")

    config = RunConfig(
        inputs=args.paths,
        format=fmt,
        fail_threshold=args.fail_threshold,
        include_metrics=args.metrics,
        per_class=args.per_class,
    )
    report, code = run(config)
    for err in report.errors:
        where = f"{err.span}: " if err.span else ""
        print(f"picip: error: {where}{err.message}", file=sys.stderr)
    sys.stdout.write(format_report(report, config.format))
    return code
