"""
Printed closed-form expressions for the scenario dynamics.

These are cross-checks only; the Kraus pipeline in ``services.dynamics`` is
the production path. Every function evaluates the expression as printed,
including the two known misprints (the GAD q=1 Lambda_1 shortcut and the
depolarizing concurrence), so the verification ledger can measure them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from qdecay import config
from qdecay.utils import check_unit_interval


@dataclass(frozen=True)
class ClosedForm:
    """closed_form_reference result; ``None`` means the quantity is not provided."""

    concurrence: float | None
    ip: float | None
    notes: tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class XElements:
    """rho11, rho22 (= rho33), rho44 and the real coherence rho14 of a Schmidt-family X-state."""

    rho11: float
    rho22: float
    rho44: float
    rho14: float


def _safe_ratio(num: float, den: float) -> float:
    return 0.0 if abs(den) <= config.EIGEN_SUM_CUTOFF else num / den


# --------------- Werner state under dephasing ---------------
def werner_dephasing_concurrence(alpha: float, gamma: float) -> float:
    return max(0.0, alpha * (1.5 - gamma) - 0.5)


def werner_dephasing_transverse_printed(alpha: float, gamma: float) -> float:
    """M11 = M22 as printed, with (2 + gamma)^2."""
    a2 = alpha * alpha
    first = a2 * (2.0 + gamma) ** 2 / (2.0 * (1.0 + alpha - alpha * gamma))
    second = _safe_ratio(a2 * gamma * gamma, 2.0 * (1.0 - alpha + alpha * gamma))
    return first + second


def werner_dephasing_transverse(alpha: float, gamma: float) -> float:
    """M11 = M22 of the evolved Werner state, with (2 - gamma)^2."""
    a2 = alpha * alpha
    first = a2 * (2.0 - gamma) ** 2 / (2.0 * (1.0 + alpha - alpha * gamma))
    second = _safe_ratio(a2 * gamma * gamma, 2.0 * (1.0 - alpha + alpha * gamma))
    return first + second


def werner_dephasing_longitudinal(alpha: float, gamma: float) -> float:
    """M33 = 2 alpha^2 (1 - gamma)^2 / (1 + alpha)."""
    return 2.0 * alpha * alpha * (1.0 - gamma) ** 2 / (1.0 + alpha)


def werner_dephasing_ip(alpha: float, gamma: float) -> float:
    return min(werner_dephasing_transverse_printed(alpha, gamma), werner_dephasing_longitudinal(alpha, gamma))


# --------------- Schmidt state under GAD ---------------
def gad_elements(alpha: float, gamma: float, q: float) -> XElements:
    rho11 = (1.0 - alpha) * (1.0 - gamma * (2.0 * (1.0 - q) - gamma * (1.0 - 2.0 * q))) + gamma * gamma * q * q
    rho22 = gamma * ((1.0 - alpha) * (1.0 - 2.0 * q) * (1.0 - gamma) + q * (1.0 - gamma * q))
    rho44 = 1.0 - rho11 - 2.0 * rho22
    rho14 = (1.0 - gamma) * np.sqrt(alpha * (1.0 - alpha))
    return XElements(rho11, rho22, rho44, float(rho14))


def gad_lambda1(alpha: float, gamma: float, q: float) -> float:
    """General-q Lambda_1(t)."""
    return float(
        (1.0 - gamma) * np.sqrt(alpha * (1.0 - alpha))
        - gamma * ((1.0 - alpha) * (1.0 - 2.0 * q) * (1.0 - gamma) + q * (1.0 - gamma * q))
    )


def gad_q1_lambda1_shortcut(alpha: float, gamma: float) -> float:
    """The q = 1 shortcut as printed: 2 (1 - gamma)[sqrt(alpha(1 - alpha)) - alpha gamma]."""
    return float(2.0 * (1.0 - gamma) * (np.sqrt(alpha * (1.0 - alpha)) - alpha * gamma))


def x_block_ab(el: XElements) -> tuple[float, float] | None:
    """Eigenvector slopes a, b of the {|00>, |11>} block; ``None`` if |rho14| is too small."""
    if abs(el.rho14) <= config.CLOSED_FORM_RHO14_MIN:
        return None
    diff = el.rho11 - el.rho44
    root = np.sqrt(diff * diff + 4.0 * el.rho14 * el.rho14)
    return float((diff - root) / (2.0 * el.rho14)), float((diff + root) / (2.0 * el.rho14))


def x_block_eigenvalues(el: XElements) -> tuple[float, float, float, float]:
    """lambda_1 = lambda_2 = rho22, lambda_3 (pairs with a), lambda_4 (pairs with b)."""
    mean = 0.5 * (el.rho11 + el.rho44)
    half = 0.5 * np.sqrt((el.rho11 - el.rho44) ** 2 + 4.0 * el.rho14 * el.rho14)
    return el.rho22, el.rho22, float(mean - half), float(mean + half)


def x_block_m_diagonal(el: XElements) -> tuple[float, float] | None:
    """
    (M11 = M22, M33) from the printed a, b expressions.

    Terms whose denominator falls below EIGEN_SUM_CUTOFF are dropped, matching
    the q_i + q_l exclusion of the general M matrix.
    """
    ab = x_block_ab(el)
    if ab is None:
        return None
    a, b = ab
    l1, l2, l3, l4 = x_block_eigenvalues(el)

    def transverse_term(lx: float, slope: float) -> float:
        den = (l1 + lx) * (l2 + lx) * (1.0 + slope * slope)
        num = (l1 - lx) ** 2 * (l2 + lx) + slope * slope * (l2 - lx) ** 2 * (l1 + lx)
        if (l1 + lx) <= config.EIGEN_SUM_CUTOFF or (l2 + lx) <= config.EIGEN_SUM_CUTOFF:
            return 0.0
        return num / den

    m11 = transverse_term(l3, a) + transverse_term(l4, b)
    m33 = 0.0
    if l3 + l4 > config.EIGEN_SUM_CUTOFF:
        m33 = (l3 - l4) ** 2 / (l3 + l4) * (a * b - 1.0) ** 2 / ((1.0 + a * a) * (1.0 + b * b))
    return float(m11), float(m33)


# --------------- Schmidt state under depolarizing noise ---------------
def depolarizing_elements(alpha: float, gamma: float) -> XElements:
    rho11 = (1.0 - alpha) * (1.0 - gamma) + gamma * gamma / 4.0
    rho22 = (2.0 - gamma) * gamma / 4.0
    rho44 = 1.0 - rho11 - 2.0 * rho22
    rho14 = np.sqrt(alpha * (1.0 - alpha)) * (1.0 - gamma) ** 2
    return XElements(rho11, rho22, rho44, float(rho14))


def depolarizing_concurrence_printed(alpha: float, gamma: float) -> float:
    """2 max{0, alpha(1 - gamma) - (2 - gamma) gamma / 4} as printed."""
    return 2.0 * max(0.0, alpha * (1.0 - gamma) - (2.0 - gamma) * gamma / 4.0)


def depolarizing_concurrence(alpha: float, gamma: float) -> float:
    """Concurrence from the element formulas: 2 max{0, |rho14| - rho22}."""
    el = depolarizing_elements(alpha, gamma)
    return 2.0 * max(0.0, abs(el.rho14) - el.rho22)


# --------------- Combined dephasing then GAD (q = 1) ---------------
def combined_death_gamma(alpha: float) -> float:
    """Root of (1 - gamma) sqrt(alpha(1 - alpha)) = alpha gamma."""
    if alpha <= 0.0:
        return float("inf")
    if alpha >= 1.0:
        return 0.0
    return float(1.0 / (1.0 + np.sqrt(alpha / (1.0 - alpha))))


def closed_form_reference(scenario: str, alpha: float, gamma: float) -> ClosedForm:
    """
    Printed closed forms for a scenario at (alpha, gamma).

    Quantities without a printed expression come back as ``None`` with a note.
    """
    alpha = check_unit_interval("alpha", alpha)
    gamma = check_unit_interval("gamma", gamma)

    if scenario == "dephasing-werner":
        return ClosedForm(
            werner_dephasing_concurrence(alpha, gamma),
            werner_dephasing_ip(alpha, gamma),
            (
                "concurrence: max{0, alpha(3/2 - gamma) - 1/2}",
                "ip: min{transverse (printed with (2+gamma)^2), 2 alpha^2 (1-gamma)^2/(1+alpha)}",
            ),
        )

    if scenario in ("gad-q1", "gad-q23"):
        q = 1.0 if scenario == "gad-q1" else 2.0 / 3.0
        el = gad_elements(alpha, gamma, q)
        lam1 = gad_lambda1(alpha, gamma, q)
        notes = [f"Lambda_1 (general q) = {lam1:.12f}"]
        if scenario == "gad-q1":
            shortcut = gad_q1_lambda1_shortcut(alpha, gamma)
            notes.append(
                f"Lambda_1 q=1 shortcut as printed = {shortcut:.12f}; "
                f"the pipeline matches the general form, the shortcut equals 2 Lambda_1"
            )
        m = x_block_m_diagonal(el)
        if m is None:
            notes.append("ip: not provided (|rho14| at or below the a, b singularity threshold)")
            ip = None
        else:
            ip = max(0.0, min(m))
            notes.append(f"M11 = M22 = {m[0]:.12f}, M33 = {m[1]:.12f}")
        return ClosedForm(2.0 * max(0.0, lam1), ip, tuple(notes))

    if scenario == "depolarizing":
        printed = depolarizing_concurrence_printed(alpha, gamma)
        return ClosedForm(
            printed,
            None,
            (
                "concurrence as printed: 2 max{0, alpha(1-gamma) - (2-gamma)gamma/4}",
                f"element-formula concurrence = {depolarizing_concurrence(alpha, gamma):.12f}",
                "ip: not provided",
            ),
        )

    return ClosedForm(None, None, (f"{scenario}: no printed closed form",))
