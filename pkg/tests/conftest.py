import numpy as np
import pytest

from entropy_bounds import harmonic_oscillator, power_law


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


@pytest.fixture
def oscillator():
    return harmonic_oscillator(1.0, 64)


@pytest.fixture
def quadratic():
    return power_law(1.0, 2.0, 64)
