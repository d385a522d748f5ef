import numpy as np
import pytest

from qdecay import config
from qdecay.models.states import random_state


@pytest.fixture
def rng():
    return np.random.default_rng(config.DEFAULT_SEED)


@pytest.fixture
def random_states(rng):
    return [random_state(rng) for _ in range(25)]


@pytest.fixture
def hermitian(rng):
    """Factory for random complex Hermitian n x n matrices."""
    def make(n, scale=1.0):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return scale * 0.5 * (z + z.conj().T)
    return make
