"""Command line: ``tcinv analyze``, ``tcinv example``, ``tcinv verify``.

Exit codes: 0 success, 2 invalid input, 3 computation aborted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import EXAMPLES, DocumentError, load_config, load_example
from .degeneration import ConfigurationError, stable_polynomials, structural_checks
from .groebner import DegreeCapExceeded
from .invariants import FitError, InvariantError
from .polyring import PolynomialSyntaxError
from .report import DEFAULT_CHECK_CAP, build_from_document, render_checks, render_csv, render_json, render_summary, run_analysis

EXIT_OK, EXIT_INVALID, EXIT_ABORT = 0, 2, 3

log = logging.getLogger("tcinv")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcinv", description="Exact invariants of a torus-induced test configuration.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_analysis_options(p):
        p.add_argument("--lmax", type=_positive, default=None)
        p.add_argument("--kmax", type=_positive, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", type=Path, default=None)

    a = sub.add_parser("analyze", help="analyze a JSON configuration document")
    a.add_argument("file", type=Path)
    add_analysis_options(a)

    e = sub.add_parser("example", help="analyze a built-in example")
    e.add_argument("--name", required=True)
    add_analysis_options(e)

    v = sub.add_parser("verify", help="run the structural checks only")
    v.add_argument("file", type=Path)
    v.add_argument("--cap", type=_positive, default=None)
    return parser


def _analyze(doc, args) -> int:
    try:
        analysis = run_analysis(doc, args.lmax, args.kmax)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DegreeCapExceeded, FitError, InvariantError) as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    body = render_json(analysis) if args.format == "json" else render_csv(analysis)
    summary = render_summary(analysis)
    if args.out is not None:
        args.out.write_text(body, encoding="utf-8")
        sys.stdout.write(summary)
    else:
        sys.stdout.write(body)
        sys.stderr.write(summary)
    return EXIT_OK


def _verify(doc, cap) -> int:
    cap = cap or doc.caps.get("check_cap", DEFAULT_CHECK_CAP)
    if cap < 2:
        print("error: --cap must be at least 2", file=sys.stderr)
        return EXIT_INVALID
    try:
        config = build_from_document(doc, cap)
        checks = structural_checks(config, cap, stable_polynomials(config))
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DegreeCapExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    sys.stdout.write(render_checks(config, checks))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "example":
            if args.name not in EXAMPLES:
                print(f"error: unknown example {args.name!r}; available: {', '.join(EXAMPLES)}", file=sys.stderr)
                return EXIT_INVALID
            doc = load_example(args.name)
        else:
            doc = load_config(args.file)
    except (DocumentError, PolynomialSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.command == "verify":
        return _verify(doc, args.cap)
    return _analyze(doc, args)


if __name__ == "__main__":
    sys.exit(main())
