"""``euclid-kernel check`` command line."""

from __future__ import annotations

import argparse
import sys

from .checker import check_theory
from .errors import Diagnostic
from .parser import ParseError, parse_source
from .report import FileResult, render_structured, render_text

EXIT_OK, EXIT_REJECTED, EXIT_INPUT = 0, 1, 2


def _bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("true", "yes", "1", "on"):
        return True
    if value in ("false", "no", "0", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="euclid-kernel",
                                     description="Check Euclid-style propositions written in .euclid files.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="parse and verify theory files")
    check.add_argument("files", nargs="+", help=".euclid source files")
    check.add_argument("--format", choices=("text", "structured"), default="text")
    check.add_argument("--trace", action="store_true",
                       help="print provenance trees and the production graph")
    check.add_argument("--fail-fast", action="store_true",
                       help="stop at the first rejected proposition")
    check.add_argument("--allow-primitives", type=_bool, default=True, metavar="BOOL",
                       help="accept primitive declarations (default true)")
    return parser


def run(args: argparse.Namespace, out=sys.stdout, err=sys.stderr) -> int:
    results: list[FileResult] = []
    for path in args.files:
        try:
            with open(path, encoding="utf-8") as fh:
                source = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            err.write(f"{path}: cannot read: {exc}\n")
            return EXIT_INPUT
        try:
            theory = parse_source(source)
        except ParseError as exc:
            for d in exc.diagnostics:
                err.write(_render(d, path) + "\n")
            return EXIT_INPUT
        result = FileResult(path, check_theory(theory, fail_fast=args.fail_fast))
        results.append(result)
        if args.fail_fast and not result.theory.verified:
            break

    if args.format == "structured":
        out.write(render_structured(results))
    else:
        out.write(render_text(results, trace=args.trace))

    if not all(r.theory.verified for r in results):
        return EXIT_REJECTED
    if not args.allow_primitives and any(r.theory.primitives for r in results):
        err.write("primitive declarations are not allowed (--allow-primitives=false)\n")
        return EXIT_REJECTED
    return EXIT_OK


def _render(d: Diagnostic, path: str) -> str:
    return f"error {d.render(path)}"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
