"""
Scenario registry, (alpha, gamma) sweeps and the death / sudden-change detectors.

A scenario is an initial-state family plus an ordered recipe of single-qubit
channels, each applied to both qubits at the same gamma.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Callable

import numpy as np

from qdecay import config
from qdecay.errors import ParameterRangeError
from qdecay.models.channels import KrausChannel, TimeParams, apply_local_pair, dephasing, depolarizing, gad
from qdecay.models.states import DensityMatrix, StateFamily, StateKind
from qdecay.services.measures import MeasureResult, concurrence, interferometric_power
from qdecay.utils import check_unit_interval, print_warn


class Measure(str, Enum):
    CONCURRENCE = "concurrence"
    IP = "ip"


@dataclass(frozen=True)
class Scenario:
    name: str
    family: StateKind
    recipe: Callable[[float], tuple[KrausChannel, ...]]
    description: str

    def channels(self, gamma: float) -> tuple[KrausChannel, ...]:
        return self.recipe(gamma)


def _dephasing_only(g):   return (dephasing(g),)
def _gad_q1(g):           return (gad(g, 1.0),)
def _gad_q23(g):          return (gad(g, 2.0 / 3.0),)
def _depolarizing(g):     return (depolarizing(g),)
def _dephasing_then_gad(g): return (dephasing(g), gad(g, 1.0))
def _gad_then_dephasing(g): return (gad(g, 1.0), dephasing(g))


# === SCENARIOS ===
SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario("dephasing-werner", StateKind.WERNER, _dephasing_only,
                 "Werner state under phase damping"),
        Scenario("gad-q1", StateKind.SCHMIDT_PURE, _gad_q1,
                 "Schmidt pure state under generalized amplitude damping, q = 1"),
        Scenario("gad-q23", StateKind.SCHMIDT_PURE, _gad_q23,
                 "Schmidt pure state under generalized amplitude damping, q = 2/3"),
        Scenario("depolarizing", StateKind.SCHMIDT_PURE, _depolarizing,
                 "Schmidt pure state under depolarizing noise"),
        Scenario("dephasing+gad", StateKind.SCHMIDT_PURE, _dephasing_then_gad,
                 "Schmidt pure state under dephasing then generalized amplitude damping (q = 1)"),
    )
}

# reference dynamics for the nonadditivity and order-swap checks; not CLI scenarios
AUXILIARY_SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario("dephasing-schmidt", StateKind.SCHMIDT_PURE, _dephasing_only,
                 "Schmidt pure state under phase damping"),
        Scenario("gad+dephasing", StateKind.SCHMIDT_PURE, _gad_then_dephasing,
                 "Schmidt pure state under generalized amplitude damping (q = 1) then dephasing"),
    )
}


def get_scenario(scenario: str | Scenario) -> Scenario:
    if isinstance(scenario, Scenario):
        return scenario
    found = SCENARIOS.get(scenario) or AUXILIARY_SCENARIOS.get(scenario)
    if found is None:
        raise ParameterRangeError(f"unknown scenario '{scenario}' (choose from {', '.join(SCENARIOS)})")
    return found


@dataclass(frozen=True)
class SweepRecord:
    scenario: str
    alpha: float
    gamma: float
    concurrence: float
    ip: float
    ip_branch: int

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DeathReport:
    alpha: float
    measure: Measure
    gamma_star: float | None   # None means asymptotic decay
    revived: bool = False

    @property
    def is_asymptotic(self) -> bool:
        return self.gamma_star is None

    def label(self) -> str:
        return "asymptotic" if self.gamma_star is None else f"{self.gamma_star:.8f}"


# --------------- Evolution ---------------
def evolve(scenario: str | Scenario, alpha: float, gamma: float) -> DensityMatrix:
    sc = get_scenario(scenario)
    alpha = check_unit_interval("alpha", alpha)
    gamma = check_unit_interval("gamma", gamma)
    rho = StateFamily(sc.family, alpha).build()
    for ch in sc.channels(gamma):
        rho = apply_local_pair(rho, ch, ch)
    return rho


def evolve_at_time(scenario: str | Scenario, alpha: float, when: TimeParams) -> DensityMatrix:
    return evolve(scenario, alpha, when.gamma)


def measure_value(scenario: str | Scenario, alpha: float, gamma: float, measure: Measure) -> MeasureResult:
    rho = evolve(scenario, alpha, gamma)
    if Measure(measure) is Measure.CONCURRENCE:
        return concurrence(rho)
    return interferometric_power(rho)


def evaluate_point(scenario: str | Scenario, alpha: float, gamma: float) -> SweepRecord:
    sc = get_scenario(scenario)
    rho = evolve(sc, alpha, gamma)
    c = concurrence(rho)
    ip = interferometric_power(rho)
    return SweepRecord(sc.name, float(alpha), float(gamma), c.value, ip.value, ip.branch)


# --------------- Sweeps ---------------
def _check_steps(name: str, steps: int) -> int:
    if int(steps) != steps or steps < 2:
        raise ParameterRangeError(f"{name} must be an integer >= 2, got {steps}")
    return int(steps)


def _sweep_row(name: str, alpha: float, gammas: np.ndarray) -> list[SweepRecord]:
    return [evaluate_point(name, alpha, g) for g in gammas]


def sweep(scenario: str | Scenario, alpha_steps: int, gamma_steps: int, workers: int = 1) -> list[SweepRecord]:
    """
    Uniform grid over [0, 1]^2 including both endpoints, alpha-major.

    ``workers > 1`` evaluates alpha rows on a thread pool; the record order
    does not depend on it.
    """
    sc = get_scenario(scenario)
    alphas = np.linspace(0.0, 1.0, _check_steps("alpha_steps", alpha_steps))
    gammas = np.linspace(0.0, 1.0, _check_steps("gamma_steps", gamma_steps))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(lambda a: _sweep_row(sc.name, float(a), gammas), alphas))
    else:
        rows = [_sweep_row(sc.name, float(a), gammas) for a in alphas]
    return [rec for row in rows for rec in row]


# --------------- Death classifier ---------------
def find_death(
    scenario: str | Scenario,
    alpha: float,
    measure: Measure | str,
    eps_death: float | None = None,
    grid: int = config.DEATH_GRID,
) -> DeathReport:
    """
    Classify finite-gamma death against asymptotic decay.

    Samples gamma on [0, 1 - GUARD_BAND]. The measure is dead where it is at or
    below ``eps_death``. gamma* is the start of the final dead run, refined by
    bisection to DEATH_BISECT_TOL; no final dead run means asymptotic decay.
    """
    sc = get_scenario(scenario)
    measure = Measure(measure)
    eps = config.EPS_DEATH[measure.value] if eps_death is None else float(eps_death)
    grid = _check_steps("grid", grid)

    def dead(g: float) -> bool:
        return measure_value(sc, alpha, g, measure).value <= eps

    gammas = np.linspace(0.0, 1.0 - config.GUARD_BAND, grid)
    flags = np.array([dead(g) for g in gammas])

    if not flags[-1]:
        revived = bool(flags.any())
        if revived:
            print_warn(f"{sc.name} alpha={alpha}: {measure.value} dies and revives; classified asymptotic")
        return DeathReport(float(alpha), measure, None, revived)

    alive = np.flatnonzero(~flags)
    if alive.size == 0:
        return DeathReport(float(alpha), measure, 0.0)

    last = int(alive[-1])
    lo, hi = float(gammas[last]), float(gammas[last + 1])
    while hi - lo > config.DEATH_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if dead(mid):
            hi = mid
        else:
            lo = mid
    revived = bool(flags[:last].any())
    return DeathReport(float(alpha), measure, hi, revived)


# --------------- IP sudden change ---------------
def ip_branch(scenario: str | Scenario, alpha: float, gamma: float) -> int:
    return measure_value(scenario, alpha, gamma, Measure.IP).branch


def find_ip_sudden_change(
    scenario: str | Scenario, alpha: float, grid: int = config.SUDDEN_CHANGE_GRID
) -> list[float]:
    """
    gamma values where the IP minimizing branch switches, refined to
    SUDDEN_CHANGE_BISECT_TOL. Transitions to or from the isotropic branch 0
    are not counted.
    """
    sc = get_scenario(scenario)
    if int(grid) < 1000:
        raise ParameterRangeError(f"sudden-change grid must be at least 1000, got {grid}")
    gammas = np.linspace(0.0, 1.0 - config.GUARD_BAND, int(grid))
    branches = [ip_branch(sc, alpha, g) for g in gammas]

    switches = []
    for k in range(len(gammas) - 1):
        left, right = branches[k], branches[k + 1]
        if left == right or left == 0 or right == 0:
            continue
        lo, hi = float(gammas[k]), float(gammas[k + 1])
        while hi - lo > config.SUDDEN_CHANGE_BISECT_TOL:
            mid = 0.5 * (lo + hi)
            if ip_branch(sc, alpha, mid) == left:
                lo = mid
            else:
                hi = mid
        switches.append(0.5 * (lo + hi))
    return switches


# --------------- Nonadditivity ---------------
@dataclass(frozen=True)
class NonadditivityRow:
    alpha: float
    dephasing_only: DeathReport
    gad_only: DeathReport
    combined: DeathReport

    @property
    def nonadditive(self) -> bool:
        """Combined noise kills entanglement although each channel alone decays asymptotically."""
        return (
            not self.combined.is_asymptotic
            and self.dephasing_only.is_asymptotic
            and self.gad_only.is_asymptotic
        )


def nonadditivity_report(
    alphas=config.NONADDITIVITY_ALPHAS, grid: int = config.DEATH_GRID
) -> list[NonadditivityRow]:
    """Concurrence death of dephasing alone, GAD (q = 1) alone and both combined, per alpha."""
    rows = []
    for a in alphas:
        rows.append(
            NonadditivityRow(
                float(a),
                find_death("dephasing-schmidt", a, Measure.CONCURRENCE, grid=grid),
                find_death("gad-q1", a, Measure.CONCURRENCE, grid=grid),
                find_death("dephasing+gad", a, Measure.CONCURRENCE, grid=grid),
            )
        )
    return rows
