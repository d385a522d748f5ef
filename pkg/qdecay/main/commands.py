"""
The four CLI operations. Each ``cmd_*`` takes a validated RunConfig and
returns a process exit status; data goes to ``--out`` or stdout, status lines
to stderr.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass

import numpy as np
import pandas as pd

from qdecay import config
from qdecay.errors import ConfigError
from qdecay.models.channels import TimeParams
from qdecay.services.closed_forms import closed_form_reference
from qdecay.services.dynamics import (
    SCENARIOS,
    Measure,
    evaluate_point,
    find_death,
    nonadditivity_report,
    sweep,
)
from qdecay.services.export import (
    death_frame,
    json_text,
    nonadditivity_frame,
    records_to_frame,
    render_table,
    write_table,
)
from qdecay.services.verification import Status, run_verification
from qdecay.utils import print_err, print_info, print_ok, print_warn

# === EXIT CODES ===
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3
EXIT_OUTPUT = 4

COMMANDS = ("sweep", "point", "death", "verify")


@dataclass(frozen=True)
class RunConfig:
    command: str
    scenario: str | None = None
    alpha_steps: int = config.DEFAULT_STEPS
    gamma_steps: int = config.DEFAULT_STEPS
    alphas: tuple[float, ...] = ()
    gamma: float | None = None
    rate: float | None = None
    time: float | None = None
    output_path: str | None = None
    fmt: str = config.DEFAULT_FORMAT
    seed: int = config.DEFAULT_SEED
    eps_death: float | None = None
    grid: int = config.DEATH_GRID
    workers: int = 1
    trials: int = config.VERIFY_TRIALS
    resolution: int = config.SPHERE_RESOLUTION
    nonadditivity: bool = False

    @property
    def alpha(self) -> float | None:
        return self.alphas[0] if self.alphas else None


def _in_unit(name: str, value):
    if value is None:
        return
    if not np.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must lie in [0, 1], got {value}")


def validate_config(cfg: RunConfig) -> RunConfig:
    """Reject a bad configuration before any computation starts."""
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command '{cfg.command}'")
    if cfg.command != "verify":
        if cfg.scenario is None:
            raise ConfigError(f"{cfg.command} needs --scenario")
        if cfg.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario '{cfg.scenario}' (choose from {', '.join(SCENARIOS)})")
    for name, steps in (("alpha-steps", cfg.alpha_steps), ("gamma-steps", cfg.gamma_steps), ("grid", cfg.grid)):
        if steps < 2:
            raise ConfigError(f"--{name} must be at least 2, got {steps}")
    for a in cfg.alphas:
        _in_unit("alpha", a)
    _in_unit("gamma", cfg.gamma)
    if cfg.fmt not in ("csv", "json"):
        raise ConfigError(f"--format must be csv or json, got {cfg.fmt}")
    if cfg.workers < 1:
        raise ConfigError(f"--workers must be at least 1, got {cfg.workers}")
    if cfg.eps_death is not None and not cfg.eps_death >= 0.0:
        raise ConfigError(f"--eps-death must be non-negative, got {cfg.eps_death}")
    if cfg.trials < 1:
        raise ConfigError(f"--trials must be at least 1, got {cfg.trials}")
    if cfg.resolution < 100:
        raise ConfigError(f"--resolution must be at least 100, got {cfg.resolution}")

    if cfg.command == "point":
        if len(cfg.alphas) != 1:
            raise ConfigError("point needs exactly one --alpha")
        timed = cfg.rate is not None or cfg.time is not None
        if timed and cfg.gamma is not None:
            raise ConfigError("give either --gamma or --rate with --time, not both")
        if timed:
            if cfg.rate is None or cfg.time is None:
                raise ConfigError("--rate and --time go together")
            if not (np.isfinite(cfg.rate) and cfg.rate >= 0.0 and cfg.time >= 0.0):
                raise ConfigError("--rate must be finite and non-negative, --time non-negative")
        elif cfg.gamma is None:
            raise ConfigError("point needs --gamma (or --rate and --time)")
    return cfg


def output_writable(path: str) -> bool:
    if os.path.isdir(path):
        return False
    parent = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(parent, exist_ok=True)
    except OSError:
        return False
    return os.access(parent, os.W_OK)


def _emit(df: pd.DataFrame, cfg: RunConfig, path: str | None = None) -> int:
    path = path or cfg.output_path
    if path is None:
        if cfg.fmt == "json":
            sys.stdout.write(json_text(df))
        else:
            df.to_csv(sys.stdout, index=False, float_format=config.FLOAT_FORMAT, lineterminator=config.LINE_TERMINATOR)
        return EXIT_OK
    try:
        write_table(df, path, cfg.fmt)
    except OSError as e:
        print_err(f"Could not write {path}: {e}")
        return EXIT_OUTPUT
    print_ok(f"Saved {len(df)} rows to {path}")
    return EXIT_OK


def _check_output(cfg: RunConfig) -> bool:
    if cfg.output_path is not None and not output_writable(cfg.output_path):
        print_err(f"Output path is not writable: {cfg.output_path}")
        return False
    return True


# --------------- Commands ---------------
def cmd_sweep(cfg: RunConfig) -> int:
    if not _check_output(cfg):
        return EXIT_OUTPUT
    n = cfg.alpha_steps * cfg.gamma_steps
    print_info(f"Sweeping {cfg.scenario}: {cfg.alpha_steps} x {cfg.gamma_steps} = {n} grid points")
    records = sweep(cfg.scenario, cfg.alpha_steps, cfg.gamma_steps, workers=cfg.workers)
    return _emit(records_to_frame(records), cfg)


def cmd_point(cfg: RunConfig) -> int:
    if not _check_output(cfg):
        return EXIT_OUTPUT
    gamma = cfg.gamma
    if gamma is None:
        gamma = TimeParams(cfg.rate, cfg.time).gamma
        print_info(f"rate={cfg.rate}, t={cfg.time} -> gamma={gamma:.12f}")
    record = evaluate_point(cfg.scenario, cfg.alpha, gamma)
    status = _emit(records_to_frame([record]), cfg)

    ref = closed_form_reference(cfg.scenario, cfg.alpha, gamma)
    for label, printed, pipeline in (("concurrence", ref.concurrence, record.concurrence), ("ip", ref.ip, record.ip)):
        if printed is None:
            print_info(f"closed form {label}: not provided")
            continue
        dev = printed - pipeline
        line = f"closed form {label} = {printed:.12f} (deviation {dev:+.3e})"
        if abs(dev) > config.CLOSED_FORM_AGREEMENT_TOL:
            print_warn(line)
        else:
            print_ok(line)
    for note in ref.notes:
        print_info(note)
    return status


def cmd_death(cfg: RunConfig) -> int:
    if not _check_output(cfg):
        return EXIT_OUTPUT
    alphas = cfg.alphas or tuple(float(a) for a in np.linspace(0.0, 1.0, cfg.alpha_steps))
    print_info(f"Classifying {len(alphas)} alpha values for {cfg.scenario} on a {cfg.grid}-point gamma grid")

    if cfg.nonadditivity:
        rows = nonadditivity_report(alphas, grid=cfg.grid)
        df = nonadditivity_frame(rows)
        missing = [r.alpha for r in rows if r.combined.is_asymptotic]
        if missing:
            print_warn(f"combined channel decays asymptotically for alpha in {missing}")
        return _emit(df, cfg)

    rows = [
        (
            find_death(cfg.scenario, a, Measure.CONCURRENCE, cfg.eps_death, cfg.grid),
            find_death(cfg.scenario, a, Measure.IP, cfg.eps_death, cfg.grid),
        )
        for a in alphas
    ]
    return _emit(death_frame(rows, cfg.scenario), cfg)


def cmd_verify(cfg: RunConfig) -> int:
    if not _check_output(cfg):
        return EXIT_OUTPUT
    print_info(f"Running verification suites (seed {cfg.seed}, {cfg.trials} trials)")
    report = run_verification(seed=cfg.seed, trials=cfg.trials, resolution=cfg.resolution)
    ledger = report.to_frame()
    sys.stderr.write(render_table(ledger) + "\n")

    status = EXIT_OK
    if cfg.output_path is not None:
        status = _emit(ledger, cfg)
        stem, ext = os.path.splitext(cfg.output_path)
        if status == EXIT_OK:
            status = _emit(report.curves_frame(), cfg, f"{stem}_curves{ext or '.csv'}")

    counts = {s.value: report.count(s) for s in Status}
    summary = ", ".join(f"{v} {k}" for k, v in counts.items())
    if report.failed:
        print_err(f"Verification failed: {summary}")
        return EXIT_VERIFY
    print_ok(f"Verification passed: {summary}")
    return status


DISPATCH = {
    "sweep": cmd_sweep,
    "point": cmd_point,
    "death": cmd_death,
    "verify": cmd_verify,
}


def run(cfg: RunConfig) -> int:
    return DISPATCH[validate_config(cfg).command](cfg)
