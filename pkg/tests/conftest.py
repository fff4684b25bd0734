import numpy as np
import pytest

from cgmagnus import PauliCoeffs, expm_pauli


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_unitary(rng) -> np.ndarray:
    """A random 2x2 unitary from an SU(2) exponential plus a random phase."""
    p = PauliCoeffs(*rng.normal(size=4))
    return expm_pauli(p, rng.uniform(0.2, 3.0)).matrix
