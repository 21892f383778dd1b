"""Command line interface.

Exit codes: 0 success, 1 verification or scan did not come back clean,
2 the projection center was rejected (or no generic one was found),
3 the curve file failed validation, 4 the file could not be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .config import DEFAULT_TOL
from .curves import require_valid
from .diagram import render_svg
from .errors import (
    ExhaustedRetries,
    NonGenericCenter,
    ParseError,
    SelfLinkError,
    UnresolvedEvent,
    ValidationError,
)
from .fileio import dumps_report, load_link, save_link
from .harness import jump_scan, verify_center_independence
from .writhe import self_linking

EXIT_OK = 0
EXIT_UNCLEAN = 1
EXIT_CENTER = 2
EXIT_INVALID = 3
EXIT_PARSE = 4


def _center(text: str) -> np.ndarray:
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "center must be four comma-separated numbers") from None
    if len(parts) != 4 or not all(np.isfinite(parts)) or not any(parts):
        raise argparse.ArgumentTypeError(
            "center must be four finite numbers, not all zero")
    return np.array(parts)


def _tolerances(args):
    tol = DEFAULT_TOL
    if getattr(args, "tol", None) is not None:
        tol = replace(tol, h_residual=args.tol, validate_residual=args.tol)
    return tol


def _report(link, args, tolerances):
    if args.center is not None:
        return self_linking(link, args.center, tolerances=tolerances)
    rng = np.random.default_rng(args.seed)
    return self_linking(link, rng=rng, tolerances=tolerances)


def cmd_sl(args) -> int:
    link = load_link(args.file)
    tolerances = _tolerances(args)
    require_valid(link, tolerances=tolerances)
    report = _report(link, args, tolerances)
    print(report.value)
    print(dumps_report(report, seed=args.seed, tolerances=tolerances))
    return EXIT_OK


def cmd_verify(args) -> int:
    link = load_link(args.file)
    tolerances = _tolerances(args)
    require_valid(link, tolerances=tolerances)
    result = verify_center_independence(link, trials=args.trials,
                                        seed=args.seed, tolerances=tolerances)
    payload = {
        "values": [int(v) for v in result.values],
        "constant": result.constant,
        "censuses": [{k: int(n) for k, n in c} for c in sorted(result.censuses)],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK if result.constant else EXIT_UNCLEAN


def cmd_diagram(args) -> int:
    link = load_link(args.file)
    tolerances = _tolerances(args)
    require_valid(link, tolerances=tolerances)
    report = _report(link, args, tolerances)
    svg = render_svg(link, report, tolerances=tolerances)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out} (value {report.value})")
    return EXIT_OK


def cmd_mirror(args) -> int:
    link = load_link(args.file)
    require_valid(link)
    save_link(args.out, link.mirror(),
              metadata={"mirror_of": str(args.file)})
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_scan(args) -> int:
    start = load_link(args.file_start)
    end = load_link(args.file_end)
    tolerances = _tolerances(args)
    require_valid(start, tolerances=tolerances)
    require_valid(end, tolerances=tolerances)
    scan = jump_scan(start, end, n_steps=args.steps, seed=args.seed,
                     tolerances=tolerances)
    payload = {
        "values": [None if v is None else int(v) for v in scan.values],
        "jumpSum": int(scan.jump_sum),
        "events": [{
            "param": float(e.param),
            "delta": int(e.delta),
            "kind": e.pair_kind,
            "pair": [[float(np.real(z)), float(np.imag(z))] for z in e.pair],
        } for e in scan.events],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    clean = all(abs(e.delta) == 2 for e in scan.events)
    return EXIT_OK if clean else EXIT_UNCLEAN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selflink",
        description="Self-linking numbers of real rational links "
                    "from generic plane projections.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, center=True):
        if center:
            p.add_argument("--center", type=_center, default=None,
                           help="projection center as four comma-separated "
                                "homogeneous coordinates")
        p.add_argument("--tol", type=float, default=None,
                       help="residual tolerance for root acceptance and "
                            "validation (default: built-in)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampling generic centers")

    p = sub.add_parser("sl", help="compute the self-linking number")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_sl)

    p = sub.add_parser("verify",
                       help="recompute from independent random centers")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=10)
    common(p, center=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diagram", help="render an SVG diagram")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("mirror", help="write the mirror image curve file")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("scan",
                       help="scan the straight path between two curves "
                            "for jumps of the invariant")
    p.add_argument("file_start")
    p.add_argument("file_end")
    p.add_argument("--steps", type=int, default=30)
    common(p, center=False)
    p.set_defaults(func=cmd_scan)

    return parser


def entry(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        code = EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid curve: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    except (NonGenericCenter, ExhaustedRetries) as exc:
        print(f"projection center rejected: {exc}", file=sys.stderr)
        code = EXIT_CENTER
    except (UnresolvedEvent, SelfLinkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_UNCLEAN
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    entry()
