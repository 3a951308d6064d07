# tests/conftest.py - Shared fixtures
import numpy as np
import pytest

from navier_bie.models.params import ProblemParams
from navier_bie.services.geometry_service import builtin_curve


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def params_w10():
    """omega = 10, lam = 2, mu = 3: k_p ~ 3.53, k_s ~ 5.77"""
    return ProblemParams.from_lame(10.0, 2.0, 3.0)


@pytest.fixture(scope="session")
def circle():
    return builtin_curve("circle")


@pytest.fixture(scope="session")
def ellipse():
    return builtin_curve("ellipse")


@pytest.fixture(scope="session")
def kite():
    return builtin_curve("kite")


@pytest.fixture(scope="session")
def cavity():
    return builtin_curve("cavity")


def random_band_limited(rng, N, degree=10):
    """Smooth complex grid function with modes |n| <= degree"""
    coefficients = np.zeros(N, dtype=complex)
    modes = np.arange(-degree, degree + 1)
    coefficients[modes % N] = rng.standard_normal(modes.size) + 1j * rng.standard_normal(modes.size)
    coefficients[modes % N] /= (1.0 + np.abs(modes)) ** 2
    return np.fft.ifft(coefficients) * N
