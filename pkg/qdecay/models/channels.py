"""
Single-qubit Kraus channels and their action on two-qubit states.

Every channel here acts on BOTH qubits with identical parameters
(Lambda x Lambda). A coherence |01><10| then decays by (1 - gamma) under
dephasing, which is the factor the closed forms in ``services.closed_forms``
assume; a one-sided channel would give sqrt(1 - gamma).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from qdecay import config
from qdecay.errors import DimensionError, NumericalError, ParameterRangeError
from qdecay.linalg.core import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, frozen
from qdecay.models.states import DensityMatrix, validate
from qdecay.utils import check_unit_interval


@dataclass(frozen=True, eq=False)
class KrausChannel:
    name: str
    operators: tuple
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        ops = tuple(frozen(as_matrix(op, f"{self.name} Kraus operator")) for op in self.operators)
        if not ops:
            raise DimensionError(f"{self.name}: a channel needs at least one Kraus operator")
        for op in ops:
            if op.shape != (2, 2):
                raise DimensionError(f"{self.name}: Kraus operators must be 2x2, got {op.shape}")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    def stacked(self) -> np.ndarray:
        return np.stack(self.operators)

    def completeness_error(self) -> float:
        """max |sum_i E_i^H E_i - I|."""
        total = sum(op.conj().T @ op for op in self.operators)
        return float(np.max(np.abs(total - I2)))

    def is_complete(self, tol: float = config.COMPLETENESS_TOL) -> bool:
        return self.completeness_error() <= tol

    def apply_single(self, rho2) -> np.ndarray:
        """Action on a single-qubit 2x2 operator."""
        rho2 = as_matrix(rho2, "single-qubit operator")
        return sum(op @ rho2 @ op.conj().T for op in self.operators)


def _certified(channel: KrausChannel) -> KrausChannel:
    err = channel.completeness_error()
    if err > config.COMPLETENESS_TOL:
        # only reachable through a coding error in the constructors below
        raise NumericalError(f"{channel.name}: Kraus completeness violated by {err:.3e}")
    return channel


def identity_channel() -> KrausChannel:
    return KrausChannel("identity", (I2,), {})


def dephasing(gamma: float) -> KrausChannel:
    """Phase damping: E0 = diag(1, sqrt(1-gamma)), E1 = diag(0, sqrt(gamma))."""
    gamma = check_unit_interval("gamma", gamma)
    e0 = np.diag([1.0, np.sqrt(1.0 - gamma)]).astype(complex)
    e1 = np.diag([0.0, np.sqrt(gamma)]).astype(complex)
    return _certified(KrausChannel("dephasing", (e0, e1), {"gamma": gamma}))


def gad(gamma: float, q: float) -> KrausChannel:
    """
    Generalized amplitude damping; q is the stationary |0> population.
    q = 1 is zero-temperature amplitude damping towards |0>.
    """
    gamma = check_unit_interval("gamma", gamma)
    q = check_unit_interval("q", q)
    sg, sd = np.sqrt(gamma), np.sqrt(1.0 - gamma)
    sq, sp = np.sqrt(q), np.sqrt(1.0 - q)
    ops = (
        sq * np.array([[1.0, 0.0], [0.0, sd]], dtype=complex),
        sq * np.array([[0.0, sg], [0.0, 0.0]], dtype=complex),
        sp * np.array([[sd, 0.0], [0.0, 1.0]], dtype=complex),
        sp * np.array([[0.0, 0.0], [sg, 0.0]], dtype=complex),
    )
    return _certified(KrausChannel("gad", ops, {"gamma": gamma, "q": q}))


def depolarizing(gamma: float) -> KrausChannel:
    """sqrt(1 - 3gamma/4) I and sqrt(gamma/4) sigma_k; gamma = 1 fully depolarizes."""
    gamma = check_unit_interval("gamma", gamma)
    ops = (
        np.sqrt(1.0 - 0.75 * gamma) * I2,
        np.sqrt(0.25 * gamma) * SIGMA_X,
        np.sqrt(0.25 * gamma) * SIGMA_Y,
        np.sqrt(0.25 * gamma) * SIGMA_Z,
    )
    return _certified(KrausChannel("depolarizing", ops, {"gamma": gamma}))


def two_qubit_operators(ch_a: KrausChannel, ch_b: KrausChannel) -> np.ndarray:
    """All products E_i x F_j, shape (len(A) * len(B), 4, 4)."""
    a, b = ch_a.stacked(), ch_b.stacked()
    return np.einsum("aij,bkl->abikjl", a, b).reshape(len(a) * len(b), 4, 4)


def kraus_map(mat: np.ndarray, ch_a: KrausChannel, ch_b: KrausChannel) -> np.ndarray:
    """sum_ij (E_i x F_j) rho (E_i x F_j)^H on a raw 4x4 array, no validation."""
    ops = two_qubit_operators(ch_a, ch_b)
    return np.einsum("kij,jl,kml->im", ops, mat, ops.conj())


def apply_local_pair(rho: DensityMatrix, ch_a: KrausChannel, ch_b: KrausChannel) -> DensityMatrix:
    return validate(kraus_map(rho.mat, ch_a, ch_b))


def compose(rho: DensityMatrix, first: KrausChannel, second: KrausChannel) -> DensityMatrix:
    """``first`` on both qubits, then ``second`` on both qubits."""
    return apply_local_pair(apply_local_pair(rho, first, first), second, second)


@dataclass(frozen=True)
class TimeParams:
    """Decay rate Gamma and time t; gamma = 1 - exp(-Gamma t)."""

    rate: float
    t: float

    def __post_init__(self):
        if not np.isfinite(self.rate) or self.rate < 0.0:
            raise ParameterRangeError(f"decay rate must be a finite non-negative number, got {self.rate}")
        if not (self.t >= 0.0):
            raise ParameterRangeError(f"time must be non-negative, got {self.t}")

    @property
    def gamma(self) -> float:
        return gamma_from_time(self.rate, self.t)

    @classmethod
    def from_gamma(cls, rate: float, gamma: float) -> "TimeParams":
        return cls(rate, time_from_gamma(rate, gamma))


def gamma_from_time(rate: float, t: float) -> float:
    if np.isinf(t):
        return 1.0 if rate > 0 else 0.0
    return float(-np.expm1(-rate * t))


def time_from_gamma(rate: float, gamma: float) -> float:
    gamma = check_unit_interval("gamma", gamma)
    if rate <= 0.0:
        if gamma == 0.0:
            return 0.0
        raise ParameterRangeError("a zero decay rate never reaches gamma > 0")
    if gamma == 1.0:
        return float("inf")
    return float(-np.log1p(-gamma) / rate)
