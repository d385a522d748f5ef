"""
Two-qubit density matrices and the initial-state families.

Basis convention, fixed everywhere in the package: row/column order
{|00>, |01>, |10>, |11>}, first qubit (A) on the most significant index.
The 1-based element rho_ij used in the closed forms is ``mat[i-1, j-1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from qdecay import config
from qdecay.errors import DimensionError, InvalidStateError
from qdecay.linalg.core import as_matrix, eigh, frozen, hermitian_asymmetry, kron
from qdecay.utils import check_unit_interval

KET_00 = np.array([1, 0, 0, 0], dtype=complex)
KET_11 = np.array([0, 0, 0, 1], dtype=complex)
KET_PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2.0)
IDENTITY_4 = np.eye(4, dtype=complex)

# |00><00| <-> |11><11| and |01><01| <-> |10><10| blocks of an X-state
X_MASK = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
    ],
    dtype=bool,
)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    A validated two-qubit state. Build it with ``validate`` or one of the
    ``make_*`` constructors; the wrapped array is read-only.
    """

    mat: np.ndarray

    def __post_init__(self):
        if self.mat.shape != (4, 4):
            raise DimensionError(f"two-qubit state must be 4x4, got {self.mat.shape}")

    def entry(self, i: int, j: int) -> complex:
        """Element rho_ij with 1-based indices."""
        return complex(self.mat[i - 1, j - 1])

    @property
    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    @property
    def purity(self) -> float:
        return float(np.trace(self.mat @ self.mat).real)

    def is_x_shaped(self, tol: float = config.X_SHAPE_TOL) -> bool:
        return bool(np.all(np.abs(self.mat[~X_MASK]) < tol))


class StateKind(str, Enum):
    WERNER = "werner"
    SCHMIDT_PURE = "schmidt-pure"


@dataclass(frozen=True)
class StateFamily:
    kind: StateKind
    alpha: float

    def __post_init__(self):
        check_unit_interval("alpha", self.alpha)

    def build(self) -> DensityMatrix:
        if self.kind is StateKind.WERNER:
            return make_werner(self.alpha)
        return make_schmidt_pure(self.alpha)


def validate(rho) -> DensityMatrix:
    """
    Check and clean a candidate two-qubit state.

    The matrix is symmetrized, eigenvalues in [-EIGEN_CLIP_TOL, 0) are clipped
    to zero and the result is renormalized to unit trace. Larger violations of
    Hermiticity, trace or positivity raise InvalidStateError.
    """
    m = as_matrix(rho.mat if isinstance(rho, DensityMatrix) else rho, "density matrix")
    if m.shape != (4, 4):
        raise DimensionError(f"two-qubit state must be 4x4, got {m.shape}")

    asym = hermitian_asymmetry(m)
    if asym > config.HERMITIAN_TOL:
        raise InvalidStateError(f"state is not Hermitian (max asymmetry {asym:.3e})")
    m = 0.5 * (m + m.conj().T)

    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > config.TRACE_TOL:
        raise InvalidStateError(f"state trace {tr:.12g} deviates from 1")

    spectrum = eigh(m)
    lowest = float(spectrum.eigenvalues[-1])
    if lowest < -config.EIGEN_CLIP_TOL:
        raise InvalidStateError(f"state has negative eigenvalue {lowest:.3e}")
    if lowest < 0.0:
        clipped = np.clip(spectrum.eigenvalues, 0.0, None)
        v = spectrum.eigenvectors
        m = (v * clipped) @ v.conj().T

    m = m / np.trace(m).real
    return DensityMatrix(frozen(m))


def make_werner(alpha: float) -> DensityMatrix:
    """(1 - alpha) I/4 + alpha |Psi-><Psi-|."""
    alpha = check_unit_interval("alpha", alpha)
    bell = np.outer(KET_PSI_MINUS, KET_PSI_MINUS.conj())
    return validate((1.0 - alpha) * IDENTITY_4 / 4.0 + alpha * bell)


def make_schmidt_pure(alpha: float) -> DensityMatrix:
    """|Phi><Phi| with |Phi> = sqrt(1 - alpha)|00> + sqrt(alpha)|11>."""
    alpha = check_unit_interval("alpha", alpha)
    phi = np.sqrt(1.0 - alpha) * KET_00 + np.sqrt(alpha) * KET_11
    return validate(np.outer(phi, phi.conj()))


def maximally_mixed() -> DensityMatrix:
    return validate(IDENTITY_4 / 4.0)


def x_part(rho: DensityMatrix) -> DensityMatrix:
    """
    Keep only the diagonal and anti-diagonal of ``rho``.

    Equal to averaging rho with (Z x Z) rho (Z x Z), so the result is again a
    valid state.
    """
    return validate(np.where(X_MASK, rho.mat, 0.0))


def apply_unitary(rho: DensityMatrix, u) -> DensityMatrix:
    u = as_matrix(u, "unitary")
    return validate(u @ rho.mat @ u.conj().T)


# --------------- Random generators --------------
def random_pure_ket(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_state(rng: np.random.Generator, n_pure: int | None = None) -> DensityMatrix:
    """Random mixture of Haar-random pure states with Dirichlet weights."""
    if n_pure is None:
        n_pure = int(rng.integers(1, 5))
    weights = rng.dirichlet(np.ones(n_pure))
    kets = [random_pure_ket(rng) for _ in range(n_pure)]
    m = sum(w * np.outer(k, k.conj()) for w, k in zip(weights, kets))
    return validate(m)


def haar_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary(rng: np.random.Generator) -> np.ndarray:
    return kron(haar_unitary(rng), haar_unitary(rng))
