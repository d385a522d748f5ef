import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qdecay.errors import ConvergenceError, DimensionError, NonFiniteError, NotHermitianError
from qdecay.linalg import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, adjoint, eigh, kron, matmul
from qdecay.linalg.core import off_diagonal_norm
from qdecay.models.states import KET_PSI_MINUS

TOL = 1e-10

entries = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False, allow_subnormal=False)


def closed_form_eigenvalues(a):
    """Characteristic-polynomial roots of a 2x2 or 3x3 Hermitian matrix, descending."""
    n = a.shape[0]
    if n == 2:
        mean = 0.5 * (a[0, 0] + a[1, 1]).real
        half = np.sqrt((0.5 * (a[0, 0] - a[1, 1]).real) ** 2 + abs(a[0, 1]) ** 2)
        return np.array([mean + half, mean - half])
    q = np.trace(a).real / 3.0
    p1 = abs(a[0, 1]) ** 2 + abs(a[0, 2]) ** 2 + abs(a[1, 2]) ** 2
    p2 = sum((a[i, i].real - q) ** 2 for i in range(3)) + 2.0 * p1
    p = np.sqrt(p2 / 6.0)
    if p == 0.0:
        return np.array([q, q, q])
    b = (a - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(b).real / 2.0, -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    e1 = q + 2.0 * p * np.cos(phi)
    e3 = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    return np.array([e1, 3.0 * q - e1 - e3, e3])


# --------------- matmul / kron / adjoint ---------------
def test_matmul_pauli_algebra():
    assert np.allclose(matmul(I2, I2), I2)
    assert np.allclose(matmul(SIGMA_X, SIGMA_X), I2)
    assert np.allclose(matmul(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z)


def test_matmul_rejects_mismatched_shapes():
    with pytest.raises(DimensionError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_nan_entries_are_rejected():
    with pytest.raises(NonFiniteError):
        matmul(np.array([[np.nan, 0], [0, 1]]), I2)


def test_kron_basis_bookkeeping():
    assert np.allclose(kron(I2, I2), np.eye(4))
    assert np.allclose(kron(SIGMA_Z, I2), np.diag([1, 1, -1, -1]))
    p0 = np.array([[1, 0], [0, 0]])
    p1 = np.array([[0, 0], [0, 1]])
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0
    assert np.allclose(kron(p0, p1), expected)


def test_kron_mixed_product(rng):
    a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
    assert np.max(np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d))) < TOL


def test_adjoint(rng):
    assert np.allclose(adjoint(SIGMA_Y), SIGMA_Y)
    assert np.allclose(adjoint(1j * I2), -1j * I2)
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    assert np.array_equal(adjoint(adjoint(a)), a)


def test_inputs_are_not_mutated():
    a = np.diag([3.0, 1.0, 2.0]).astype(complex)
    before = a.copy()
    eigh(a)
    assert np.array_equal(a, before)


# --------------- eigh ---------------
def test_eigh_diagonal_sorted_descending():
    sd = eigh(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(sd.eigenvalues, [3.0, 2.0, 1.0])


def test_eigh_sigma_x():
    sd = eigh(SIGMA_X)
    assert np.allclose(sd.eigenvalues, [1.0, -1.0])
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    assert abs(abs(np.vdot(plus, sd.eigenvectors[:, 0])) - 1.0) < TOL
    assert abs(abs(np.vdot(minus, sd.eigenvectors[:, 1])) - 1.0) < TOL


def test_eigh_bell_projector():
    sd = eigh(np.outer(KET_PSI_MINUS, KET_PSI_MINUS.conj()))
    assert np.allclose(sd.eigenvalues, [1.0, 0.0, 0.0, 0.0], atol=TOL)


def test_eigh_zero_matrix():
    sd = eigh(np.zeros((3, 3)))
    assert np.array_equal(sd.eigenvalues, np.zeros(3))
    assert sd.orthonormality_error() < TOL


def test_eigh_phase_convention(hermitian):
    sd = eigh(hermitian(4))
    v = sd.eigenvectors
    for j in range(4):
        k = int(np.argmax(np.abs(v[:, j])))
        assert abs(v[k, j].imag) < 1e-12 and v[k, j].real > 0


def test_eigh_rejects_non_hermitian():
    a = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotHermitianError) as exc:
        eigh(a)
    assert exc.value.asymmetry == pytest.approx(2.0)


@pytest.mark.parametrize("shape", [(1, 1), (5, 5), (2, 3)])
def test_eigh_rejects_unsupported_sizes(shape):
    with pytest.raises(DimensionError):
        eigh(np.zeros(shape))


def test_eigh_reports_unreachable_tolerance(hermitian):
    with pytest.raises(ConvergenceError) as exc:
        eigh(hermitian(4, scale=1e6), tol=0.0)
    assert exc.value.residual is not None


@pytest.mark.parametrize("n", [2, 3])
def test_eigh_matches_characteristic_roots(hermitian, n):
    for _ in range(50):
        a = hermitian(n)
        assert np.max(np.abs(eigh(a).eigenvalues - closed_form_eigenvalues(a))) < 1e-8


def test_eigh_random_hermitian_4x4(hermitian):
    for _ in range(100):
        a = hermitian(4)
        sd = eigh(a)
        assert abs(np.sum(sd.eigenvalues) - np.trace(a).real) < TOL
        assert sd.orthonormality_error() < TOL
        assert np.max(np.abs(sd.reconstruct() - a)) < TOL
        assert np.all(np.diff(sd.eigenvalues) <= 0.0)


def test_eigh_degenerate_spectrum(rng):
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    a = q @ np.diag([0.5, 0.2, 0.2, 0.1]) @ q.conj().T
    sd = eigh(a)
    assert np.allclose(sd.eigenvalues, [0.5, 0.2, 0.2, 0.1], atol=TOL)
    assert sd.orthonormality_error() < TOL


@seed(7)
@settings(max_examples=60, deadline=None)
@given(
    real=arrays(np.float64, (4, 4), elements=entries),
    imag=arrays(np.float64, (4, 4), elements=entries),
)
def test_eigh_hypothesis_invariants(real, imag):
    z = real + 1j * imag
    a = 0.5 * (z + z.conj().T)
    sd = eigh(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    assert abs(np.sum(sd.eigenvalues) - np.trace(a).real) < TOL * scale
    assert sd.orthonormality_error() < TOL
    assert np.max(np.abs(sd.reconstruct() - a)) < TOL * scale


def test_off_diagonal_norm_keeps_tiny_entries():
    a = np.diag([1.0, 2.0, 3.0]).astype(complex)
    a[0, 1] = a[1, 0] = 1e-20
    a[1, 2] = a[2, 1] = 1e-20
    a[0, 2] = a[2, 0] = 1e-20
    assert off_diagonal_norm(a) == pytest.approx(np.sqrt(6.0) * 1e-20, rel=1e-12)
    assert off_diagonal_norm(np.diag([1.0, 2.0])) == 0.0


def test_eigh_nearly_diagonal_input():
    a = np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex)
    a[0, 3] = 1e-14
    a[3, 0] = 1e-14
    sd = eigh(a)
    assert np.allclose(sd.eigenvalues, [4.0, 3.0, 2.0, 1.0], atol=1e-13)
    assert sd.orthonormality_error() < TOL


@pytest.mark.parametrize("scale", [1e-6, 1.0, 1e3])
def test_eigh_never_fails_on_random_hermitian(hermitian, scale):
    for _ in range(200):
        a = hermitian(4, scale=scale)
        sd = eigh(a, tol=1e-10 * max(1.0, scale))
        assert np.max(np.abs(sd.reconstruct() - a)) < 1e-10 * max(1.0, scale)
        assert sd.orthonormality_error() < TOL
