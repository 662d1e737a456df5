"""Command-line interface.

Every subcommand writes one JSON document to stdout (indented under
--pretty) and keeps run metadata out of the payload so identical inputs
produce byte-identical outputs; seeds and timings go to stderr.  Exit
codes are part of the contract:

  construct  0 ok, 2 bad arguments
  verify     0 covered, 1 uncovered, 2 malformed input, 3 region cap hit
  bound      0 ok, 2 bad arguments
  check      0 certificate valid, 1 invalid, 2 malformed input
  gamma      0 ok, 4 internal consistency failure
  report     0 ok, 4 internal consistency failure
  search     0 ok, 2 bad arguments
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .certificates import (
    CertificateError,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    lower_bound,
)
from .constructions import best_known
from .gamma import InternalConsistencyError, gamma_interval, interval_to_json, report_data
from .search import DEFAULT_SEED, SearchConfig, bisect_lambda
from .verifier import (
    BoundaryPreconditionError,
    Covered,
    CoveringFormatError,
    Mode,
    RegionCapExceeded,
    covering_from_json,
    covering_to_json,
    result_to_json,
    verify_covering,
)


def _emit(data, pretty: bool) -> None:
    if pretty:
        json.dump(data, sys.stdout, indent=2, sort_keys=False)
    else:
        json.dump(data, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


def _meta(args, started, **extra) -> None:
    if not getattr(args, "verbose", False) and not extra.get("force"):
        return
    extra.pop("force", None)
    payload = {"command": args.command, "elapsed_s": round(time.time() - started, 3)}
    payload.update(extra)
    print(json.dumps(payload), file=sys.stderr)


def _read_json_file(path: str):
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return json.loads(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("CROSSCOVER_THREADS")
    return int(env) if env else 1


def cmd_construct(args) -> int:
    started = time.time()
    try:
        kc = best_known(args.d, args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(covering_to_json(kc.covering), args.pretty)
    _meta(args, started, construction=kc.name)
    return 0


def cmd_verify(args) -> int:
    started = time.time()
    try:
        covering = covering_from_json(_read_json_file(args.file))
    except (OSError, json.JSONDecodeError, CoveringFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    mode = Mode.BOUNDARY_ONLY if args.mode == "boundary" else Mode.FULL_BODY
    try:
        res = verify_covering(
            covering, mode=mode, region_cap=args.cap, threads=_threads(args)
        )
    except BoundaryPreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RegionCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _emit(result_to_json(res), args.pretty)
    _meta(args, started)
    return 0 if isinstance(res, Covered) else 1


def cmd_bound(args) -> int:
    started = time.time()
    try:
        cert = lower_bound(args.d, args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(certificate_to_json(cert), args.pretty)
    _meta(args, started, kind=cert.kind)
    return 0


def cmd_check(args) -> int:
    started = time.time()
    try:
        cert = certificate_from_json(_read_json_file(args.file))
        valid = check_certificate(cert)
    except (OSError, json.JSONDecodeError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit({"valid": bool(valid)}, args.pretty)
    _meta(args, started)
    return 0 if valid else 1


def cmd_gamma(args) -> int:
    started = time.time()
    try:
        g = gamma_interval(args.d, args.m, threads=_threads(args))
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(interval_to_json(g), args.pretty)
    _meta(args, started)
    return 0


def cmd_report(args) -> int:
    started = time.time()
    try:
        data = report_data(threads=_threads(args))
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    _emit(data, args.pretty)
    _meta(args, started)
    return 0


def cmd_search(args) -> int:
    started = time.time()
    try:
        cfg = SearchConfig(
            d=args.d,
            m=args.m,
            lambda_hi=args.lambda_hi,
            lambda_lo=args.lambda_lo,
            iterations=args.iterations,
            restarts=args.restarts,
            sample_count=args.samples,
            seed=args.seed,
            max_denominator=args.max_denominator,
        )
        report = bisect_lambda(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    proven = (
        report.snapped is not None
        and report.exact_verdict is not None
        and isinstance(report.exact_verdict, Covered)
    )
    data = {
        "heuristic": {
            "best_lambda_float": report.best_lambda_float,
            "centers_float": report.centers_float,
            "deficiency_curve": [[lam, defc] for lam, defc in report.deficiency_curve],
        },
        "snapped": covering_to_json(report.snapped) if report.snapped else None,
        "exact_verdict": result_to_json(report.exact_verdict)
        if report.exact_verdict is not None
        else None,
        "proven_upper": str(report.snapped.ratio) if proven else None,
    }
    _emit(data, args.pretty)
    _meta(args, started, seed=cfg.seed, force=True)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosscover",
        description="Exact covering toolkit for the d-dimensional crosspolytope.",
    )
    parser.add_argument("--verbose", action="store_true", help="run metadata on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")

    p = sub.add_parser("construct", help="emit the best known covering for (d, m)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exactly verify a covering JSON file")
    p.add_argument("file", help="covering JSON path, or - for stdin")
    p.add_argument("--mode", choices=["full", "boundary"], default="full")
    p.add_argument("--cap", type=int, default=1_000_000, help="live region cap")
    p.add_argument("--threads", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="emit a lower-bound certificate for (d, m)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("check", help="re-verify a certificate JSON file")
    p.add_argument("file", help="certificate JSON path, or - for stdin")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gamma", help="proven interval for gamma at (d, m)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--threads", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("report", help="full reproduction table for d = 3, 4, 5")
    p.add_argument("--threads", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("search", help="heuristic ratio search with exact snap-back")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lambda-hi", type=float, required=True, dest="lambda_hi")
    p.add_argument("--lambda-lo", type=float, required=True, dest="lambda_lo")
    p.add_argument("--iterations", type=int, default=3000)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-denominator", type=int, default=64, dest="max_denominator")
    add_common(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
