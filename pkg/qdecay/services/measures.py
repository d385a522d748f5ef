"""
Correlation quantifiers for two-qubit states.

* Wootters concurrence, general (spin-flip spectrum) and X-state closed form.
* Interferometric power (IP) on qubit A: smallest eigenvalue of the 3x3
  matrix M built from the eigendecomposition of rho.
* Independent oracles: the directional QFI n^T M n evaluated without M, and a
  Fibonacci-sphere minimization of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qdecay import config
from qdecay.errors import NotXStateError, NumericalError, ParameterRangeError
from qdecay.linalg.core import I2, PAULIS, SIGMA_Y, SpectralDecomposition, eigh, frozen, kron
from qdecay.models.states import DensityMatrix

YY = kron(SIGMA_Y, SIGMA_Y)
YY.setflags(write=False)

# sigma_m x 1 for m = 1, 2, 3
LOCAL_PAULIS_A = np.stack([kron(p, I2) for p in PAULIS])
LOCAL_PAULIS_A.setflags(write=False)


@dataclass(frozen=True, eq=False)
class MMatrix:
    """Real symmetric 3x3 matrix of the IP quadratic form."""

    m: np.ndarray

    @property
    def branch_values(self) -> np.ndarray:
        """Diagonal M11, M22, M33; the candidate minima when M is diagonal."""
        return np.diag(self.m).copy()

    def quadratic_form(self, n) -> float:
        n = np.asarray(n, dtype=float)
        return float(n @ self.m @ n)


@dataclass(frozen=True)
class MeasureResult:
    value: float
    branch: int = 0


def _clip_measure(value: float) -> float:
    if value < 0.0 and value >= -config.MEASURE_CLIP_TOL:
        return 0.0
    return max(value, 0.0)


# --------------- Concurrence ---------------
def spin_flip_spectrum(rho: DensityMatrix) -> np.ndarray:
    """
    Descending lambda_i: square roots of the eigenvalues of
    R = rho (Y x Y) rho* (Y x Y).
    """
    r = rho.mat @ YY @ rho.mat.conj() @ YY
    ev = np.linalg.eigvals(r)
    residue = float(np.max(np.abs(ev.imag)))
    if residue > config.IMAG_RESIDUE_TOL:
        raise NumericalError(f"spin-flip spectrum has imaginary residue {residue:.3e}")
    ev = np.abs(ev.real)
    top = float(np.max(ev))
    ev[ev <= config.SPIN_FLIP_CUTOFF * top] = 0.0
    return np.sort(np.sqrt(ev))[::-1]


def concurrence_general(rho: DensityMatrix) -> MeasureResult:
    lam = spin_flip_spectrum(rho)
    value = float(lam[0] - lam[1] - lam[2] - lam[3])
    return MeasureResult(_clip_measure(value), 0)


def x_lambdas(rho: DensityMatrix) -> tuple[float, float]:
    """(Lambda_1, Lambda_2) of the X-state concurrence formula."""
    p = rho.mat.real
    lam1 = abs(rho.mat[0, 3]) - np.sqrt(max(p[1, 1], 0.0) * max(p[2, 2], 0.0))
    lam2 = abs(rho.mat[1, 2]) - np.sqrt(max(p[0, 0], 0.0) * max(p[3, 3], 0.0))
    return float(lam1), float(lam2)


def concurrence_x(rho: DensityMatrix) -> MeasureResult:
    """
    C = 2 max{0, Lambda_1, Lambda_2} for an X-shaped state.

    ``branch`` is 1 when Lambda_1 carries the value, 2 for Lambda_2 and 0 when
    the state is separable.
    """
    if not rho.is_x_shaped():
        raise NotXStateError("concurrence_x needs entries outside the diagonal and anti-diagonal below tolerance")
    lam1, lam2 = x_lambdas(rho)
    best = max(0.0, lam1, lam2)
    if best <= 0.0:
        return MeasureResult(0.0, 0)
    return MeasureResult(2.0 * best, 1 if lam1 >= lam2 else 2)


def concurrence(rho: DensityMatrix) -> MeasureResult:
    """X-state formula when it applies, spin-flip spectrum otherwise."""
    if rho.is_x_shaped():
        return concurrence_x(rho)
    return concurrence_general(rho)


# --------------- Interferometric power ---------------
def _fisher_weights(q: np.ndarray) -> np.ndarray:
    """(q_i - q_l)^2 / (q_i + q_l), zero where q_i + q_l <= EIGEN_SUM_CUTOFF."""
    q = np.clip(q, 0.0, None)
    s = q[:, None] + q[None, :]
    d = q[:, None] - q[None, :]
    w = np.zeros_like(s)
    keep = s > config.EIGEN_SUM_CUTOFF
    w[keep] = d[keep] ** 2 / s[keep]
    return w


def m_matrix_from_spectrum(spectrum: SpectralDecomposition) -> MMatrix:
    """
    M_mn = 1/2 sum_il w_il <psi_i|s_m x 1|psi_l><psi_l|s_n x 1|psi_i>.

    Works from any eigenbasis of rho, so callers can rotate within a
    degenerate eigenspace and compare.
    """
    v = spectrum.eigenvectors
    w = _fisher_weights(np.asarray(spectrum.eigenvalues, dtype=float))
    a = np.einsum("ji,mjk,kl->mil", v.conj(), LOCAL_PAULIS_A, v)
    m = 0.5 * np.einsum("il,mil,nil->mn", w, a, a.conj()).real
    m = 0.5 * (m + m.T)
    return MMatrix(frozen(m))


def build_m_matrix(rho: DensityMatrix) -> MMatrix:
    return m_matrix_from_spectrum(eigh(rho.mat))


def _branch_of(spectrum: SpectralDecomposition) -> int:
    """Dominant Pauli axis (1, 2, 3) of the minimizing eigenspace; 0 if M is isotropic."""
    vals = spectrum.eigenvalues
    span = float(vals[0] - vals[-1])
    scale = float(np.max(np.abs(vals)))
    tol = config.DEGENERACY_TOL * scale
    if span <= max(tol, config.BRANCH_SPAN_FLOOR):
        return 0
    space = spectrum.eigenvectors[:, vals - vals[-1] <= tol]
    weight = np.sum(np.abs(space) ** 2, axis=1)
    # near-equal weights go to the lowest axis
    return int(np.flatnonzero(weight >= weight.max() - config.DEGENERACY_TOL)[0]) + 1


def ip_from_m(mm: MMatrix) -> MeasureResult:
    spectrum = eigh(mm.m)
    return MeasureResult(_clip_measure(float(spectrum.eigenvalues[-1])), _branch_of(spectrum))


def interferometric_power(rho: DensityMatrix) -> MeasureResult:
    """IP^A = smallest eigenvalue of M, with the branch index of its eigenspace."""
    return ip_from_m(build_m_matrix(rho))


# --------------- Oracles (numpy.linalg.eigh, no M) ---------------
def _directional_batch(rho: DensityMatrix, directions: np.ndarray) -> np.ndarray:
    q, v = np.linalg.eigh(rho.mat)
    w = _fisher_weights(q)
    h = np.einsum("km,mij->kij", directions.astype(complex), LOCAL_PAULIS_A)
    b = np.einsum("ji,kjl,lm->kim", v.conj(), h, v)
    return 0.5 * np.einsum("il,kil->k", w, np.abs(b) ** 2)


def qfi_directional(rho: DensityMatrix, n) -> float:
    """One quarter of the QFI of rho for the generator (n . sigma) x 1."""
    n = np.asarray(n, dtype=float).reshape(3)
    norm = float(np.linalg.norm(n))
    if abs(norm - 1.0) > config.UNIT_VECTOR_TOL:
        raise ParameterRangeError(f"direction must be a unit vector, |n| = {norm!r}")
    return float(_directional_batch(rho, n[None, :])[0])


def fibonacci_sphere(resolution: int) -> np.ndarray:
    """``resolution`` near-uniform unit vectors, shape (resolution, 3)."""
    k = np.arange(resolution) + 0.5
    z = 1.0 - 2.0 * k / resolution
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (1.0 + np.sqrt(5.0)) * k
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def ip_sphere_oracle(rho: DensityMatrix, resolution: int = config.SPHERE_RESOLUTION) -> float:
    """Minimum of the directional QFI over a Fibonacci sphere."""
    if int(resolution) < 100:
        raise ParameterRangeError(f"sphere resolution must be at least 100, got {resolution}")
    values = _directional_batch(rho, fibonacci_sphere(int(resolution)))
    return float(max(values.min(), 0.0))
