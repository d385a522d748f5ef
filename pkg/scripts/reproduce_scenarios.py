#!/usr/bin/env python3
"""
Regenerate the data behind the four scenario heat maps in one go.

For every scenario it writes, into --out-dir:
  - <scenario>_sweep.csv          long sweep table
  - <scenario>_<measure>_matrix.csv  alpha x gamma pivots for plotting
  - <scenario>_death.csv          gamma* per alpha for both measures
plus summary.csv (per-scenario extrema and zero shares) and
nonadditivity.csv for the combined channel.
"""

import argparse
import os
import sys

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qdecay import config
from qdecay.services.dynamics import SCENARIOS, Measure, find_death, nonadditivity_report, sweep
from qdecay.services.export import (
    death_frame,
    heatmap_matrix,
    nonadditivity_frame,
    records_to_frame,
    sweep_summary,
    write_table,
)
from qdecay.utils import print_err, print_info, print_ok

# === CONFIGURATION ===
DEATH_ALPHAS = tuple(round(0.05 * k, 2) for k in range(1, 20))


def parse_args(argv=None):
    p = argparse.ArgumentParser(description="Write sweep, heat-map and death tables for every scenario.")
    p.add_argument("--out-dir", default="scenario_data", help="Output directory (default: scenario_data)")
    p.add_argument("--steps", type=int, default=config.DEFAULT_STEPS, help="Grid size per axis (default: 101)")
    p.add_argument("--death-grid", type=int, default=2000, help="gamma samples for the death classifier")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--skip-death", action="store_true", help="Only write sweeps and pivots")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    if args.steps < 2:
        print_err("--steps must be at least 2")
        sys.exit(2)
    os.makedirs(args.out_dir, exist_ok=True)

    frames = []
    for name, sc in SCENARIOS.items():
        print_info(f"{name}: {sc.description}")
        df = records_to_frame(sweep(name, args.steps, args.steps, workers=args.workers))
        frames.append(df)
        safe = name.replace("+", "_plus_")
        write_table(df, os.path.join(args.out_dir, f"{safe}_sweep.csv"))
        for measure in ("concurrence", "ip"):
            write_table(heatmap_matrix(df, measure), os.path.join(args.out_dir, f"{safe}_{measure}_matrix.csv"))

        if not args.skip_death:
            rows = [
                (
                    find_death(name, a, Measure.CONCURRENCE, grid=args.death_grid),
                    find_death(name, a, Measure.IP, grid=args.death_grid),
                )
                for a in DEATH_ALPHAS
            ]
            deaths = death_frame(rows, name)
            write_table(deaths, os.path.join(args.out_dir, f"{safe}_death.csv"))
            finite = int((deaths["gamma_star_concurrence"] != "asymptotic").sum())
            print_ok(f"{name}: finite concurrence death for {finite}/{len(DEATH_ALPHAS)} alpha values")

    summary = sweep_summary(pd.concat(frames, ignore_index=True))
    write_table(summary, os.path.join(args.out_dir, "summary.csv"))

    if not args.skip_death:
        report = nonadditivity_frame(nonadditivity_report(DEATH_ALPHAS, grid=args.death_grid))
        write_table(report, os.path.join(args.out_dir, "nonadditivity.csv"))
        print_ok(f"nonadditive alpha values: {int(np.sum(report['nonadditive']))}/{len(report)}")

    print_ok(f"All tables written to {args.out_dir}")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except SystemExit:
        raise
    except Exception as e:
        print_err(f"Unhandled exception: {e}")
        sys.exit(1)
