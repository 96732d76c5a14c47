"""Batch verification runner.

Subcommands (all under `verify`): lie, iwasawa, identities, lfactor,
integral, orbits, all.  Output is human-readable text or a stable JSON
document; exit code 0 when every check passes, 1 on any failure, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import g2model, lfunc, orbits
from .report import merge_reports, reports_to_json

DEFAULT_DEGREE = 12
DEFAULT_Q = 5
DEFAULT_RHO = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="g2adjoint",
        description="Exact verification of the G2/SU(2,1) matrix models and "
        "the unramified adjoint L-factor identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a verification suite")
    suites = verify.add_subparsers(dest="suite", required=True)

    def common(p):
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="output format (default: text)",
        )
        p.add_argument("--out", metavar="PATH", help="write the report to PATH")
        p.add_argument(
            "--no-timestamp", action="store_true",
            help="omit the timestamp field from JSON output",
        )
        p.add_argument(
            "--parallel", action="store_true",
            help="run independent suites concurrently (deterministic order)",
        )

    common(suites.add_parser("lie", help="Lie-algebra model identities"))
    common(suites.add_parser("iwasawa", help="torus element and both Iwasawa "
                             "factorizations (prints the derived factors)"))

    p = suites.add_parser("identities", help="the three power-series identities")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE,
                   help=f"truncation degree (default {DEFAULT_DEGREE})")
    common(p)

    p = suites.add_parser("lfactor", help="local L-factor determinant forms")
    p.add_argument("--case", choices=("split", "nonsplit", "both"),
                   default="both")
    common(p)

    p = suites.add_parser(
        "integral",
        help="inner integral and the end-to-end unramified identity "
        "(reports the winning zeta triple)",
    )
    p.add_argument("--case", choices=("split", "nonsplit", "both"),
                   default="both")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE,
                   help=f"truncation degree (default {DEFAULT_DEGREE})")
    common(p)

    p = suites.add_parser("orbits", help="finite-field double-coset analogue")
    p.add_argument("--q", type=int, default=DEFAULT_Q,
                   help=f"residue characteristic (default {DEFAULT_Q})")
    p.add_argument("--rho", type=int, default=DEFAULT_RHO,
                   help=f"the unit rho mod q (default {DEFAULT_RHO})")
    common(p)

    p = suites.add_parser("all", help="every suite")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--q", type=int, default=DEFAULT_Q)
    p.add_argument("--rho", type=int, default=DEFAULT_RHO)
    common(p)
    return parser


def _lfactor_report(case):
    if case == "both":
        return merge_reports(
            "lfactor",
            {"case": "both"},
            [
                ("split", lfunc.verify_lfactor("split")),
                ("nonsplit", lfunc.verify_lfactor("nonsplit")),
            ],
        )
    return lfunc.verify_lfactor(case)


def _integral_report(case, degree):
    if case == "both":
        return merge_reports(
            "integral",
            {"case": "both", "degree": degree},
            [
                ("split", lfunc.verify_integral("split", degree)),
                ("nonsplit", lfunc.verify_integral("nonsplit", degree)),
            ],
        )
    return lfunc.verify_integral(case, degree)


def _suite_runners(args):
    """Zero-argument callables for every requested suite, in report order."""
    suite = args.suite
    if suite == "lie":
        return [g2model.verify_lie_models]
    if suite == "iwasawa":
        return [g2model.verify_iwasawa]
    if suite == "identities":
        return [lambda: lfunc.verify_identities(args.degree)]
    if suite == "lfactor":
        return [lambda: _lfactor_report(args.case)]
    if suite == "integral":
        return [lambda: _integral_report(args.case, args.degree)]
    if suite == "orbits":
        return [lambda: orbits.verify_orbits(args.q, args.rho)]
    if suite == "all":
        return [
            g2model.verify_lie_models,
            g2model.verify_iwasawa,
            lambda: lfunc.verify_identities(
                args.degree, min(args.degree, lfunc.POINCARE_DEGREE_LIMIT)
            ),
            lambda: _lfactor_report("both"),
            lambda: _integral_report("both", args.degree),
            lambda: orbits.verify_orbits(args.q, args.rho),
        ]
    raise ValueError(f"unknown suite {suite!r}")


def run(args):
    runners = _suite_runners(args)
    if args.parallel and len(runners) > 1:
        with ThreadPoolExecutor(max_workers=len(runners)) as pool:
            futures = [pool.submit(r) for r in runners]
            reports = [f.result() for f in futures]
    else:
        reports = [r() for r in runners]

    if args.format == "json":
        timestamp = None if args.no_timestamp else time.strftime(
            "%Y-%m-%dT%H:%M:%S", time.gmtime()
        )
        payload = reports_to_json(reports, timestamp=timestamp) + "\n"
    else:
        blocks = [r.to_text() for r in reports]
        overall = all(r.passed for r in reports)
        blocks.append(f"overall: {'PASS' if overall else 'FAIL'}")
        payload = "\n\n".join(blocks) + "\n"

    if args.out:
        with open(args.out, "w") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
