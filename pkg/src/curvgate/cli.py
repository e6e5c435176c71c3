"""Command-line front end.

Exit status: 0 on success (whatever the verdicts say), 1 when a numeric
verification or ordering check fails, 2 for malformed or inconsistent input.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import CurvatureError, RequestError, SpecParseError
from .report import (
    FLAG_NAMES,
    FORMATS,
    AnalysisRequest,
    analyze,
    constants_report,
    figure1_report,
    model_report,
    render_document,
    verify_all_report,
)
from .verdicts import AmbientSummary, AssertedFlags

SEED_ENV = "CURVGATE_SEED"
EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT = 0, 1, 2


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return _seed(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise SystemExit(f"curvgate: invalid {SEED_ENV}={raw!r}")


def _int_range(text: str) -> list[int]:
    """``6``, ``6:12`` (inclusive) or ``2,3,5``."""
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _frac(text: str) -> Fraction | float:
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="output format (default json)")
    common.add_argument("--seed", type=_seed, default=None,
                        help=f"sampling seed (default ${SEED_ENV} or 0)")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="curvgate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"curvgate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", parents=[common], help="closed-form curvature summary of a model space")
    p.add_argument("spec", help='model text, e.g. "S3(r=1)xR2" or "Berger(n=2,delta=1/2)"')
    p.add_argument("--verify", action="store_true", help="compare against chart-based numerics")
    p.add_argument("--points", type=int, default=20, help="sample points for --verify")

    p = sub.add_parser("analyze", parents=[common], help="evaluate theorem hypotheses for a profile")
    p.add_argument("--ambient", help="ambient model text")
    p.add_argument("--dim", type=int, help="manual ambient dimension")
    p.add_argument("--gamma", type=_frac, help="manual curvature-operator lower bound")
    p.add_argument("--sec-bounds", help="manual sectional bounds a,b")
    p.add_argument("--ricci-lb", type=_frac, help="manual Ricci lower bound")
    p.add_argument("--ricci-normal-lb", type=_frac, help="manual lower bound on Ric(N,N)")
    p.add_argument("--scalar-lb", type=_frac, help="manual scalar curvature lower bound")
    p.add_argument("--profile", required=True, help='curvatures "1,-1,0" or preset "bdgg:n=4"')
    p.add_argument("--degrees", type=_int_range, default=None, help="degrees p, e.g. 2:3 (default all)")
    p.add_argument("--assert", dest="asserted", action="append", default=[], metavar="NAME[=WHY]",
                   help=f"assert a flag true; one of {', '.join(FLAG_NAMES)}")
    p.add_argument("--deny", action="append", default=[], metavar="NAME", help="assert a flag false")

    p = sub.add_parser("constants", parents=[common], help="table of epsilon, c and beta")
    p.add_argument("--m", type=_int_range, default=list(range(6, 13)), help="dimensions, e.g. 6:12")
    p.add_argument("--p", type=_int_range, default=None, help="degrees (default 2..m/2)")

    p = sub.add_parser("figure1", parents=[common], help="ordered Berger delta thresholds per n")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)

    p = sub.add_parser("verify-all", parents=[common], help="run every numeric and exact self-check")
    p.add_argument("--points", type=int, default=20)
    return parser


def _flags(args) -> AssertedFlags:
    values = {name: getattr(AssertedFlags, name) for name in FLAG_NAMES}
    provenance = []
    for item in args.asserted:
        name, _, why = item.partition("=")
        if name not in FLAG_NAMES:
            raise RequestError(f"unknown flag {name!r}")
        values[name] = True
        provenance.append((name, why or "asserted on the command line"))
    for name in args.deny:
        if name not in FLAG_NAMES:
            raise RequestError(f"unknown flag {name!r}")
        values[name] = False
        provenance.append((name, "denied on the command line"))
    return AssertedFlags(**values, provenance=tuple(provenance))


def _request(args) -> AnalysisRequest:
    manual = [args.dim, args.gamma, args.sec_bounds, args.ricci_lb, args.ricci_normal_lb, args.scalar_lb]
    summary = None
    if any(x is not None for x in manual):
        if args.ambient is not None:
            raise RequestError("--ambient cannot be combined with manual ambient bounds")
        if args.dim is None:
            raise RequestError("manual ambient bounds need --dim")
        sec = None
        if args.sec_bounds is not None:
            parts = args.sec_bounds.split(",")
            if len(parts) != 2:
                raise RequestError("--sec-bounds takes a,b")
            sec = (_frac(parts[0]), _frac(parts[1]))
        summary = AmbientSummary(dim=args.dim, gamma=args.gamma, sec_bounds=sec, ricci_lb=args.ricci_lb,
                                 ricci_normal_lb=args.ricci_normal_lb, scalar_lb=args.scalar_lb, label="manual")
    return AnalysisRequest(
        profile=args.profile,
        ambient_spec=args.ambient,
        ambient_summary=summary,
        degrees=None if args.degrees is None else tuple(args.degrees),
        flags=_flags(args),
        output=args.format,
    )


def run(args) -> tuple[str, bool]:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.command == "model":
        doc = model_report(args.spec, verify=args.verify, points=args.points, seed=seed)
    elif args.command == "analyze":
        doc = analyze(_request(args), seed=seed)
    elif args.command == "constants":
        doc = constants_report(args.m, args.p, seed=seed)
    elif args.command == "figure1":
        doc = figure1_report(args.n_min, args.n_max, seed=seed)
    else:
        doc = verify_all_report(points=args.points, seed=seed)
    return render_document(doc, args.format), doc.ok


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, ok = run(args)
    except (SpecParseError, RequestError, CurvatureError, ValueError) as exc:
        print(f"curvgate: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print("curvgate: check failed", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
