import numpy as np
import pytest
from scipy import integrate

from navier_bie.models.grid import GridFunction, band_modes, grid_nodes
from navier_bie.services.assembly_service import multiplier_block_symbol
from navier_bie.services.spectral_service import (
    HILBERT,
    MEAN,
    IDENTITY,
    apply_multiplier,
    derivative,
    hilbert_derivative,
    interpolate,
    log_multiplier,
    rho_hat,
    sobolev_norm,
)
from navier_bie.utils.errors import DomainError

from .conftest import random_band_limited


def e(n, N):
    return GridFunction(np.exp(1j * n * grid_nodes(N)))


def test_grid_round_trip(rng):
    values = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    f = GridFunction(values)
    back = np.fft.ifft(f.coefficients() * f.N)
    assert np.allclose(back, values, rtol=1e-13)


def test_odd_grid_rejected():
    with pytest.raises(DomainError):
        GridFunction(np.ones(15))


def test_hilbert_on_positive_mode():
    assert np.allclose(apply_multiplier(HILBERT, e(5, 32)).values, 1j * e(5, 32).values, atol=1e-13)


def test_hilbert_on_mean_mode_is_i():
    assert np.allclose(apply_multiplier(HILBERT, e(0, 16)).values, 1j, atol=1e-14)


def test_antiderivative_kills_mean():
    assert np.allclose(apply_multiplier(derivative(-1), e(0, 16)).values, 0.0, atol=1e-14)


def test_hilbert_squares_to_minus_identity(rng):
    f = GridFunction(rng.standard_normal(64) + 1j * rng.standard_normal(64))
    twice = apply_multiplier(HILBERT, apply_multiplier(HILBERT, f))
    assert np.max(np.abs(twice.values + f.values)) < 1e-13 * np.max(np.abs(f.values)) * 10


def test_composition_is_symbol_product(rng):
    f = GridFunction(rng.standard_normal(128) + 1j * rng.standard_normal(128))
    first, second = hilbert_derivative(-1), derivative(2)
    nested = apply_multiplier(first, apply_multiplier(second, f))
    direct = apply_multiplier(first * second, f)
    assert np.allclose(nested.values, direct.values, atol=1e-12)


def test_antiderivative_of_derivative_is_identity_minus_mean():
    n = band_modes(256)
    assert np.allclose((derivative(-1) * derivative(1))(n), (IDENTITY - MEAN)(n), atol=1e-15)


def test_lambda_one_is_half_hd_minus_one():
    n = band_modes(512)
    assert np.allclose(log_multiplier(1)(n), 0.5 * hilbert_derivative(-1)(n), atol=1e-16)


def test_h0_squares_to_zero(params_w10):
    n = band_modes(256)
    h0 = multiplier_block_symbol("H0", n, params_w10)
    assert np.max(np.abs(h0 @ h0)) < 1e-12


@pytest.mark.parametrize(
    "r, n, expected",
    [(1, 4, 0.125), (1, -3, 1.0 / 6.0), (1, 0, 0.0), (2, 3, 1.0 / 12.0), (4, 1, -7.0 / 4.0), (3, 5, 1.0 / 60.0)],
)
def test_rho_hat_values(r, n, expected):
    assert rho_hat(r, n) == pytest.approx(expected, abs=1e-15)


def test_rho_hat_three_exceptional_indices():
    assert np.allclose(rho_hat(3, np.array([0, 1, 2])), [-0.75, 1.0, -0.75], atol=1e-15)


def test_rho_hat_rejects_order():
    with pytest.raises(DomainError):
        rho_hat(5, 0)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_rho_hat_against_quadrature(r):
    def rho(t):
        return -((np.exp(1j * t) - 1.0) ** (r - 1)) * np.log(2.0 * abs(np.sin(t / 2.0)))

    for n in (-20, -7, -1, 0, 1, 2, 3, 9, 20):
        def real_part(t):
            return (rho(t) * np.exp(-1j * n * t)).real

        def imag_part(t):
            return (rho(t) * np.exp(-1j * n * t)).imag

        value = 0.0
        for part, unit in ((real_part, 1.0), (imag_part, 1j)):
            for lo, hi in ((0.0, np.pi), (np.pi, 2.0 * np.pi)):
                value += unit * integrate.quad(part, lo, hi, limit=400, epsabs=1e-14, epsrel=1e-14)[0]
        assert abs(value / (2.0 * np.pi) - rho_hat(r, n)) < 1e-11


def test_interpolant_reproduces_member_of_band():
    values = np.exp(3j * grid_nodes(16))
    q = interpolate(values)
    expected = np.zeros(16, dtype=complex)
    expected[3] = 1.0
    assert np.allclose(q.coefficients, expected, atol=1e-15)


def test_interpolation_converges_off_grid():
    t = np.linspace(0.01, 6.2, 97)
    exact = np.exp(np.cos(t))
    coarse = np.max(np.abs(interpolate(np.exp(np.cos(grid_nodes(16)))).evaluate_at(t) - exact))
    fine = np.max(np.abs(interpolate(np.exp(np.cos(grid_nodes(32)))).evaluate_at(t) - exact))
    assert fine < 1e-10
    assert fine < coarse


def test_aliasing_onto_band():
    N = 16
    q = interpolate(np.exp(1j * (N // 2 + 1) * grid_nodes(N)))
    t = np.array([0.37, 1.9])
    assert np.allclose(q.evaluate_at(t), np.exp(1j * (-N // 2 + 1) * t), atol=1e-13)


def test_sobolev_norms():
    assert sobolev_norm(e(0, 16), 3.0) == pytest.approx(1.0)
    assert sobolev_norm(e(2, 16), 1.0) == pytest.approx(2.0)
    both = e(2, 16) + e(-2, 16)
    assert sobolev_norm(both, 2.0) == pytest.approx(np.sqrt(32.0))


def test_random_band_limited_is_smooth(rng):
    f = GridFunction(random_band_limited(rng, 64, degree=5))
    assert np.max(np.abs(f.coefficients()[10:54])) < 1e-14
