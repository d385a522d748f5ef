"""
Dense complex linear algebra for two-qubit problems.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128. Every public
function returns a fresh array and never mutates its inputs, so all of them
are safe to call from several threads at once.

``eigh`` is a cyclic complex Jacobi solver sized for the 2x2, 3x3 and 4x4
Hermitian problems that appear in this package (density matrices and the
3x3 interferometric-power matrix).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qdecay import config
from qdecay.errors import ConvergenceError, DimensionError, NonFiniteError, NotHermitianError

# Pauli matrices in the computational basis {|0>, |1>}
I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (I2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array (a copy)."""
    m = np.array(a, dtype=complex, copy=True)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError(f"{name} contains NaN or Inf entries")
    return m


def frozen(m: np.ndarray) -> np.ndarray:
    """Mark an array read-only and return it."""
    m.setflags(write=False)
    return m


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product, first factor on the most significant index."""
    return np.kron(as_matrix(a, "left factor"), as_matrix(b, "right factor"))


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def hermitian_asymmetry(a: np.ndarray) -> float:
    """Largest entry of |A - A^H|."""
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def off_diagonal_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed entry by entry."""
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """
    Eigenpairs of a Hermitian matrix.

    ``eigenvalues`` are real and sorted descending; column ``i`` of
    ``eigenvectors`` belongs to ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def orthonormality_error(self) -> float:
        v = self.eigenvectors
        return float(np.max(np.abs(v.conj().T @ v - np.eye(self.dim))))


def _jacobi_rotate(a: np.ndarray, w: np.ndarray, p: int, q: int):
    """Zero a[p, q] in place with a phase-corrected Givens rotation; accumulate into w."""
    apq = a[p, q]
    mag = abs(apq)
    phase = np.conj(apq) / mag              # e^{-i arg a_pq}
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    g = np.array([[c, s], [-s * phase, c * phase]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ g
    a[idx, :] = g.conj().T @ a[idx, :]
    w[:, idx] = w[:, idx] @ g

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def _fix_phases(w: np.ndarray) -> np.ndarray:
    # largest-modulus component of every column made real positive
    for j in range(w.shape[1]):
        k = int(np.argmax(np.abs(w[:, j])))
        if w[k, j] != 0:
            w[:, j] *= np.conj(w[k, j]) / abs(w[k, j])
    return w


def eigh(a, tol: float = config.RECONSTRUCTION_TOL) -> SpectralDecomposition:
    """
    Eigen-decomposition of a small Hermitian matrix by cyclic Jacobi sweeps.

    Raises NotHermitianError when the input asymmetry exceeds HERMITIAN_TOL,
    DimensionError for anything but 2x2, 3x3 or 4x4 input, and
    ConvergenceError (with the residual off-diagonal norm, or the
    reconstruction error) when the sweep cap is reached or the result does
    not reproduce the input within ``tol``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[0] != a.shape[1] or n not in (2, 3, 4):
        raise DimensionError(f"eigh supports 2x2, 3x3 and 4x4 matrices, got {a.shape}")

    asym = hermitian_asymmetry(a)
    if asym > config.HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max asymmetry {asym:.3e})", asymmetry=asym)

    target = 0.5 * (a + a.conj().T)
    work = target.copy()
    vecs = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(work))

    if scale > 0.0:
        # no rotation for entries at or below this
        skip = config.JACOBI_OFF_TOL * scale / n
        converged = False
        for _ in range(config.JACOBI_MAX_SWEEPS):
            if off_diagonal_norm(work) <= config.JACOBI_OFF_TOL * scale:
                converged = True
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    if abs(work[p, q]) > skip:
                        _jacobi_rotate(work, vecs, p, q)
        if not converged:
            residual = off_diagonal_norm(work)
            if residual > config.JACOBI_OFF_TOL * scale:
                raise ConvergenceError(
                    f"Jacobi did not converge in {config.JACOBI_MAX_SWEEPS} sweeps "
                    f"(off-diagonal norm {residual:.3e})",
                    residual=residual,
                )

    values = np.diag(work).real.copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vecs = _fix_phases(vecs[:, order])

    result = SpectralDecomposition(frozen(values), frozen(vecs))
    err = float(np.max(np.abs(result.reconstruct() - target)))
    if err > tol:
        raise ConvergenceError(f"eigendecomposition reconstruction error {err:.3e} exceeds {tol:.1e}", residual=err)
    return result
