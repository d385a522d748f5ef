"""Tabular output: sweep/death tables as pandas frames, CSV/JSON files and heat-map pivots."""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from qdecay import config
from qdecay.services.dynamics import DeathReport, NonadditivityRow, SweepRecord


def records_to_frame(records: Iterable[SweepRecord]) -> pd.DataFrame:
    df = pd.DataFrame([r.as_dict() for r in records], columns=config.CSV_COLUMNS)
    return df.astype({"alpha": float, "gamma": float, "concurrence": float, "ip": float, "ip_branch": int})


def death_frame(rows: Sequence[tuple[DeathReport, DeathReport]], scenario: str) -> pd.DataFrame:
    """One row per alpha: concurrence and IP gamma* (or 'asymptotic')."""
    return pd.DataFrame(
        [
            {
                "scenario": scenario,
                "alpha": c.alpha,
                "gamma_star_concurrence": c.label(),
                "gamma_star_ip": ip.label(),
            }
            for c, ip in rows
        ],
        columns=["scenario", "alpha", "gamma_star_concurrence", "gamma_star_ip"],
    )


def nonadditivity_frame(rows: Sequence[NonadditivityRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "alpha": r.alpha,
                "dephasing_only": r.dephasing_only.label(),
                "gad_q1_only": r.gad_only.label(),
                "combined": r.combined.label(),
                "nonadditive": r.nonadditive,
            }
            for r in rows
        ],
        columns=["alpha", "dephasing_only", "gad_q1_only", "combined", "nonadditive"],
    )


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def json_text(df: pd.DataFrame) -> str:
    """JSON array of records, floats rounded to JSON_DECIMALS."""
    numeric = df.select_dtypes(include=[np.floating]).columns
    out = df.copy()
    out[numeric] = out[numeric].round(config.JSON_DECIMALS)
    return out.to_json(orient="records", double_precision=15, indent=2) + "\n"


def write_table(df: pd.DataFrame, path: str, fmt: str = config.DEFAULT_FORMAT):
    """
    Write ``df`` as CSV (fixed %.12f floats) or as a JSON array of records.
    Identical frames always produce identical bytes.
    """
    _ensure_parent(path)
    if fmt == "csv":
        df.to_csv(path, index=False, float_format=config.FLOAT_FORMAT, lineterminator=config.LINE_TERMINATOR)
    elif fmt == "json":
        with open(path, "w", encoding="utf-8", newline=config.LINE_TERMINATOR) as fh:
            fh.write(json_text(df))
    else:
        raise ValueError(f"unknown output format '{fmt}'")


def render_table(df: pd.DataFrame) -> str:
    return df.to_string(index=False, float_format=lambda v: f"{v:.12f}")


def heatmap_matrix(df: pd.DataFrame, measure: str) -> pd.DataFrame:
    """Long sweep table to an alpha x gamma matrix of one measure (rows alpha, columns gamma)."""
    if measure not in ("concurrence", "ip", "ip_branch"):
        raise ValueError(f"cannot pivot on '{measure}'")
    pivot = df.pivot_table(index="alpha", columns="gamma", values=measure, aggfunc="first")
    pivot = pivot.sort_index().sort_index(axis=1)
    pivot.columns = [f"{g:.6f}" for g in pivot.columns]
    return pivot.reset_index()


def sweep_summary(df: pd.DataFrame) -> pd.DataFrame:
    """Per-scenario extrema and the share of grid points with zero concurrence / IP."""
    grouped = df.groupby("scenario", sort=False)
    return pd.DataFrame(
        {
            "points": grouped.size(),
            "concurrence_max": grouped["concurrence"].max(),
            "ip_max": grouped["ip"].max(),
            "concurrence_zero_share": grouped["concurrence"].apply(lambda s: float((s <= 0.0).mean())),
            "ip_zero_share": grouped["ip"].apply(lambda s: float((s <= 0.0).mean())),
        }
    ).reset_index()
