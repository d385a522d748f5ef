import numpy as np
import pytest

from qdecay import config
from qdecay.errors import DimensionError, NumericalError, ParameterRangeError
from qdecay.linalg import I2
from qdecay.models.channels import (
    KrausChannel,
    _certified,
    TimeParams,
    apply_local_pair,
    compose,
    dephasing,
    depolarizing,
    gad,
    gamma_from_time,
    identity_channel,
    kraus_map,
    time_from_gamma,
)
from qdecay.models.states import make_schmidt_pure, make_werner

TOL = 1e-12
GAMMAS = [0.0, 0.1, 0.37, 0.5, 0.9, 1.0]


def all_channels(g):
    return [dephasing(g), depolarizing(g), gad(g, 0.0), gad(g, 2.0 / 3.0), gad(g, 1.0)]


def random_qubit_state(rng):
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    z /= np.linalg.norm(z)
    return np.outer(z, z.conj())


@pytest.mark.parametrize("gamma", GAMMAS)
def test_completeness(gamma):
    for ch in all_channels(gamma):
        assert ch.completeness_error() <= config.COMPLETENESS_TOL
        assert ch.is_complete()


def test_incomplete_kraus_set_is_detected():
    ch = KrausChannel("broken", (np.sqrt(1.0 + 1e-3) * I2,))
    assert not ch.is_complete()
    with pytest.raises(NumericalError):
        _certified(ch)


def test_kraus_operators_must_be_qubit_sized():
    with pytest.raises(DimensionError):
        KrausChannel("bad", (np.eye(4),))
    with pytest.raises(DimensionError):
        KrausChannel("empty", ())


@pytest.mark.parametrize("gamma", [-0.01, 1.01])
def test_gamma_out_of_range(gamma):
    with pytest.raises(ParameterRangeError):
        dephasing(gamma)
    with pytest.raises(ParameterRangeError):
        gad(gamma, 1.0)


def test_gad_population_out_of_range():
    with pytest.raises(ParameterRangeError):
        gad(0.5, 1.2)


def test_zero_gamma_is_identity(random_states):
    for rho in random_states[:5]:
        for ch in all_channels(0.0):
            assert np.max(np.abs(kraus_map(rho.mat, ch, ch) - rho.mat)) < TOL
        idc = identity_channel()
        assert np.max(np.abs(kraus_map(rho.mat, idc, idc) - rho.mat)) < TOL


def test_trace_and_positivity(random_states):
    for rho in random_states:
        for g in GAMMAS:
            for ch in all_channels(g):
                out = kraus_map(rho.mat, ch, ch)
                assert abs(np.trace(out).real - 1.0) < TOL
                assert np.min(np.linalg.eigvalsh(0.5 * (out + out.conj().T))) > -1e-12


def test_single_qubit_limits(rng):
    rho = random_qubit_state(rng)
    assert np.allclose(dephasing(1.0).apply_single(rho), np.diag(np.diag(rho)))
    assert np.allclose(depolarizing(1.0).apply_single(rho), I2 / 2)
    assert np.allclose(gad(1.0, 1.0).apply_single(rho), np.diag([1.0, 0.0]))
    assert np.allclose(gad(1.0, 2.0 / 3.0).apply_single(rho), np.diag([2.0 / 3.0, 1.0 / 3.0]))


@pytest.mark.parametrize("gamma", [0.2, 0.6])
def test_both_sided_dephasing_coherence_factor(gamma):
    rho = make_werner(0.8)
    out = apply_local_pair(rho, dephasing(gamma), dephasing(gamma))
    assert out.entry(2, 3) == pytest.approx((1 - gamma) * rho.entry(2, 3), abs=TOL)
    assert out.entry(2, 2) == pytest.approx(rho.entry(2, 2), abs=TOL)


def test_full_amplitude_damping_reaches_ground_state():
    out = apply_local_pair(make_schmidt_pure(0.7), gad(1.0, 1.0), gad(1.0, 1.0))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    assert np.max(np.abs(out.mat - expected)) < TOL


@pytest.mark.parametrize("make", [dephasing, depolarizing, lambda g: gad(g, 1.0), lambda g: gad(g, 2.0 / 3.0)])
def test_semigroup_in_gamma(rng, make):
    rho = random_qubit_state(rng)
    g1, g2 = 0.3, 0.45
    twice = make(g2).apply_single(make(g1).apply_single(rho))
    once = make(1 - (1 - g1) * (1 - g2)).apply_single(rho)
    assert np.max(np.abs(twice - once)) < TOL


def test_dephasing_and_amplitude_damping_commute(random_states):
    for g in (0.2, 0.7):
        for rho in random_states[:5]:
            ab = compose(rho, dephasing(g), gad(g, 1.0))
            ba = compose(rho, gad(g, 1.0), dephasing(g))
            assert np.max(np.abs(ab.mat - ba.mat)) < 1e-12


def test_time_parametrization():
    assert TimeParams(0.0, 5.0).gamma == 0.0
    assert TimeParams(2.0, 0.0).gamma == 0.0
    assert TimeParams(1.0, np.log(2.0)).gamma == pytest.approx(0.5)
    assert gamma_from_time(1.0, float("inf")) == 1.0
    assert time_from_gamma(1.0, 1.0) == float("inf")
    assert TimeParams.from_gamma(0.5, 0.3).gamma == pytest.approx(0.3, abs=1e-14)


def test_time_parametrization_rejects_bad_input():
    with pytest.raises(ParameterRangeError):
        TimeParams(-1.0, 1.0)
    with pytest.raises(ParameterRangeError):
        TimeParams(1.0, -1.0)
    with pytest.raises(ParameterRangeError):
        time_from_gamma(0.0, 0.5)
