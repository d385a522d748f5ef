#!/usr/bin/env python3
"""
qdecay command line.

    qdecay sweep  --scenario dephasing-werner --alpha-steps 101 --gamma-steps 101 --out werner.csv
    qdecay point  --scenario gad-q1 --alpha 0.3 --gamma 0.4
    qdecay death  --scenario dephasing-werner --alpha 0.8
    qdecay verify --seed 20240101

Exit codes: 0 ok, 1 unhandled error, 2 configuration error, 3 verification
failure, 4 output path not writable.
"""

from __future__ import annotations

import argparse
import sys

from qdecay import config
from qdecay.errors import ConfigError, QdecayError
from qdecay.main.commands import EXIT_CONFIG, EXIT_ERROR, RunConfig, run
from qdecay.services.dynamics import SCENARIOS
from qdecay.utils import print_err


def parse_args(argv=None) -> argparse.Namespace:
    p = argparse.ArgumentParser(
        prog="qdecay",
        description="Concurrence and interferometric power of two-qubit states under Markovian noise.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scenario=True):
        if scenario:
            sp.add_argument("--scenario", help=f"one of: {', '.join(SCENARIOS)}")
        sp.add_argument("--out", default=None, help="Output file (default: stdout)")
        sp.add_argument("--format", dest="fmt", default=config.DEFAULT_FORMAT, help="csv or json (default: csv)")

    sp = sub.add_parser("sweep", help="Evaluate both measures on a uniform (alpha, gamma) grid")
    common(sp)
    sp.add_argument("--alpha-steps", type=int, default=config.DEFAULT_STEPS)
    sp.add_argument("--gamma-steps", type=int, default=config.DEFAULT_STEPS)
    sp.add_argument("--workers", type=int, default=1, help="Threads evaluating alpha rows (default: 1)")

    sp = sub.add_parser("point", help="One grid point plus the printed closed forms")
    common(sp)
    sp.add_argument("--alpha", type=float, action="append", default=[])
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--rate", type=float, default=None, help="Decay rate Gamma; use with --time instead of --gamma")
    sp.add_argument("--time", type=float, default=None)

    sp = sub.add_parser("death", help="Sudden death vs asymptotic decay per alpha")
    common(sp)
    sp.add_argument("--alpha", type=float, action="append", default=[], help="Repeatable; default is an alpha grid")
    sp.add_argument("--alpha-steps", type=int, default=11, help="alpha grid size when no --alpha is given")
    sp.add_argument("--eps-death", type=float, default=None,
                    help=(
                        "Death threshold for both measures (default: 1e-10 for concurrence, 0 for IP). "
                        "A positive value also applies to IP, which then counts as dead once it drops "
                        "below the threshold before the 1 - 1e-6 guard band; IP that would decay "
                        "asymptotically can then report a finite gamma*"
                    ))
    sp.add_argument("--grid", type=int, default=config.DEATH_GRID)
    sp.add_argument("--nonadditivity", action="store_true",
                    help="Compare the combined channel with dephasing and GAD (q=1) alone")

    sp = sub.add_parser("verify", help="Run the invariant, oracle and closed-form suites")
    common(sp, scenario=False)
    sp.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=config.VERIFY_TRIALS)
    sp.add_argument("--resolution", type=int, default=config.SPHERE_RESOLUTION)

    return p.parse_args(argv)


def build_config(args: argparse.Namespace) -> RunConfig:
    known = RunConfig.__dataclass_fields__
    values = {k: v for k, v in vars(args).items() if k in known and v is not None}
    if "out" in vars(args):
        values["output_path"] = args.out
    if "alpha" in vars(args):
        values["alphas"] = tuple(args.alpha)
    return RunConfig(**values)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        return run(build_config(args))
    except ConfigError as e:
        print_err(f"Configuration error: {e}")
        return EXIT_CONFIG
    except QdecayError as e:
        print_err(f"{type(e).__name__}: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    try:
        sys.exit(main())
    except SystemExit:
        raise
    except Exception as e:
        print_err(f"Unhandled exception: {e}")
        sys.exit(EXIT_ERROR)
