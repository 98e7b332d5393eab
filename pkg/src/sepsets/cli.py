"""Command-line entry point.

Verbs: `audit <file>` runs the declared checks and emits a report,
`fixtures` writes the built-in example documents, `version` prints the
package version.  Exit codes: 0 all checks pass (not-applicable counts as
a pass), 1 some check failed, 2 the document failed to parse or resolve,
3 a bound was exceeded and --strict-bounds was given.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .checks import emit_machine, emit_text, run_checks
from .errors import SepsetsError, SpecFileError
from .fixtures import FIXTURES
from .specfile import parse_spec

VERSION = "0.1.0"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepsets", description="finite-model law checker for separated setoids"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    audit = sub.add_parser("audit", help="run the checks declared in a document")
    audit.add_argument("file", help="document path, or - for stdin")
    audit.add_argument("--check", default="*", help="law-id glob filter")
    audit.add_argument("--format", choices=("text", "machine"), default="text")
    audit.add_argument("--max-atoms", type=int, default=None)
    audit.add_argument("--max-enum", type=int, default=None)
    audit.add_argument(
        "--strict-bounds",
        action="store_true",
        help="exit 3 when any check was skipped for exceeding a bound",
    )
    audit.add_argument(
        "--timings", action="store_true", help="include timings in machine output"
    )

    fixtures = sub.add_parser("fixtures", help="write the built-in example documents")
    fixtures.add_argument("--dir", default=".", help="output directory")
    fixtures.add_argument("--list", action="store_true", help="list names and exit")

    sub.add_parser("version", help="print the version")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.verb == "version":
        print(VERSION)
        return 0

    if args.verb == "fixtures":
        if args.list:
            for name in FIXTURES:
                print(name)
            return 0
        out_dir = Path(args.dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in FIXTURES.items():
            target = out_dir / f"{name}.sep"
            target.write_text(text, encoding="utf-8")
            print(target)
        return 0

    try:
        text = _read(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        doc = parse_spec(text)
        report = run_checks(doc, args.check, args.max_atoms, args.max_enum)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SepsetsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2

    if args.format == "machine":
        sys.stdout.write(emit_machine(report, include_timings=args.timings))
    else:
        sys.stdout.write(emit_text(report))

    if report.failed:
        return 1
    if args.strict_bounds and report.bound_skipped:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
