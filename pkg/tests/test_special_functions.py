import math

import numpy as np
import pytest

from navier_bie.services.special_functions import bessel_hankel, j0_minus_one
from navier_bie.utils.errors import DomainError


def test_hankel_value_at_one():
    value = bessel_hankel("H1_0", 1.0)
    assert abs(value - (0.7651976865579666 + 0.08825696421567697j)) < 1e-13


def test_j0_tends_to_one_near_zero():
    assert abs(bessel_hankel("J0", 1e-10) - 1.0) < 1e-15


@pytest.mark.parametrize("z", [0.5, 5.0, 50.0])
def test_wronskian(z):
    lhs = bessel_hankel("J1", z) * bessel_hankel("Y0", z) - bessel_hankel("J0", z) * bessel_hankel("Y1", z)
    assert abs(lhs - 2.0 / (np.pi * z)) < 1e-12


def test_hankel_is_j_plus_i_y():
    z = np.array([0.3, 2.0, 17.0])
    assert np.allclose(bessel_hankel("H1_1", z), bessel_hankel("J1", z) + 1j * bessel_hankel("Y1", z), rtol=1e-14)


@pytest.mark.parametrize("z", [0.0, -1.0])
def test_nonpositive_argument_rejected(z):
    with pytest.raises(DomainError):
        bessel_hankel("J0", z)


def test_unknown_kind_rejected():
    with pytest.raises(DomainError):
        bessel_hankel("K0", 1.0)


def test_j0_minus_one_small_argument():
    z = np.array([1e-8, 1e-3, 0.5, 0.99])
    series = sum((-1) ** m * (z / 2) ** (2 * m) / math.factorial(m) ** 2 for m in range(1, 30))
    assert np.allclose(j0_minus_one(z), series, rtol=1e-13, atol=0)
    assert abs(j0_minus_one(1e-8) + 0.25e-16) < 1e-30


def test_j0_minus_one_matches_direct_for_large_argument():
    z = np.array([1.5, 4.0, 30.0])
    assert np.allclose(j0_minus_one(z), bessel_hankel("J0", z) - 1.0, rtol=1e-14)
