#!/usr/bin/env python3
"""
Convert a long sweep CSV (scenario,alpha,gamma,concurrence,ip,ip_branch)
into wide alpha x gamma matrices, one file per measure.

Input format:  scenario,alpha,gamma,concurrence,ip,ip_branch
Output format: alpha,<gamma_0>,<gamma_1>,...  (one row per alpha)
"""

import argparse
import os
import sys

import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qdecay import config
from qdecay.services.export import heatmap_matrix, write_table
from qdecay.utils import print_err, print_info, print_ok, print_warn


def convert_sweep_to_heatmaps(input_file: str, out_dir: str, measures=("concurrence", "ip")) -> list[str]:
    print_info(f"Reading sweep file: {input_file}")
    if not os.path.exists(input_file):
        print_err(f"File not found: {input_file}")
        return []

    df = pd.read_csv(input_file)
    missing = [c for c in config.CSV_COLUMNS if c not in df.columns]
    if missing:
        print_err(f"Missing columns: {missing} (available: {list(df.columns)})")
        return []

    scenarios = df["scenario"].unique()
    if len(scenarios) != 1:
        print_warn(f"{len(scenarios)} scenarios in one file; writing one matrix set per scenario")

    written = []
    stem = os.path.splitext(os.path.basename(input_file))[0]
    for scenario, part in df.groupby("scenario", sort=False):
        for measure in measures:
            wide = heatmap_matrix(part, measure)
            tag = f"_{scenario}" if len(scenarios) > 1 else ""
            path = os.path.join(out_dir, f"{stem}{tag}_{measure}_matrix.csv")
            write_table(wide, path, "csv")
            print_ok(f"{scenario} {measure}: {len(wide)} alpha rows x {len(wide.columns) - 1} gamma columns -> {path}")
            written.append(path)
    return written


def main(argv=None):
    p = argparse.ArgumentParser(description="Pivot a qdecay sweep CSV into alpha x gamma heat-map matrices.")
    p.add_argument("input", help="Sweep CSV written by `qdecay sweep`")
    p.add_argument("--out-dir", default=None, help="Output directory (default: next to the input)")
    p.add_argument("--measure", action="append", choices=["concurrence", "ip", "ip_branch"], default=None)
    args = p.parse_args(argv)

    out_dir = args.out_dir or os.path.dirname(os.path.abspath(args.input))
    written = convert_sweep_to_heatmaps(args.input, out_dir, tuple(args.measure or ("concurrence", "ip")))
    if not written:
        sys.exit(2)
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except SystemExit:
        raise
    except Exception as e:
        print_err(f"Unhandled exception: {e}")
        sys.exit(1)
