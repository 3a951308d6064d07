import numpy as np
import pytest

from navier_bie.models.grid import band_modes, grid_nodes
from navier_bie.models.kernel import SplitKernel
from navier_bie.models.system import ParamKind
from navier_bie.services.assembly_service import (
    assemble_R,
    assemble_Y,
    assemble_system,
    assemble_system_arclength,
    assemble_system_general,
    discrete_singular_op,
    dump_system,
    load_system_matrix,
    multiplier_block_symbol,
    principal_matrix,
    quadrature_matrix,
)
from navier_bie.services.spectral_service import rho_hat
from navier_bie.utils.errors import DomainError, PreconditionError

from .conftest import random_band_limited


def _constant_kernel(j, coefficient=1.0, smooth=0.0):
    def pair(value):
        return lambda t, tau: np.full((np.size(t), np.size(tau)), value, dtype=complex)

    def point(value):
        return lambda t: np.full(np.shape(t), value, dtype=complex)

    return SplitKernel("const", j, pair(coefficient), pair(smooth), point(coefficient), point(smooth), pair(np.nan))


# ------------------------------------------------------------------ quadrature


def test_quadrature_of_mean_symbol_is_averaging():
    N = 16
    delta = np.zeros(N)
    delta[0] = 1.0
    assert np.allclose(quadrature_matrix(delta, N), np.full((N, N), 1.0 / N))


def test_quadrature_table_shape_checked():
    with pytest.raises(DomainError):
        quadrature_matrix(np.ones(10), 16)


def test_log_weights_have_zero_row_sums():
    N = 32
    weights = quadrature_matrix(rho_hat(1, band_modes(N)).astype(complex), N)
    assert np.max(np.abs(weights.sum(axis=1))) < 1e-15


def test_log_integral_of_single_mode():
    """int log(4 sin^2((t - tau)/2)) e_3(tau) dtau = -(2 pi / 3) e_3(t)"""
    N = 32
    t = grid_nodes(N)
    e3 = np.exp(3j * t)
    result = discrete_singular_op(_constant_kernel(1), N) @ e3
    assert np.allclose(result, -(2 * np.pi / 3) * e3, atol=1e-13)


def test_second_order_weights_on_single_mode():
    N = 32
    t = grid_nodes(N)
    e3 = np.exp(3j * t)
    weights = quadrature_matrix(rho_hat(2, band_modes(N)).astype(complex), N)
    assert np.allclose(weights @ e3, e3 / 12.0, atol=1e-15)


@pytest.mark.parametrize("N", [16, 64, 256])
@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_weights_exact_on_band(N, j):
    t = grid_nodes(N)
    weights = quadrature_matrix(rho_hat(j, band_modes(N)).astype(complex), N)
    for n in (-N // 2 + 1, -3, 0, 1, 2, N // 2 - 1):
        e_n = np.exp(1j * n * t)
        assert np.allclose(weights @ e_n, rho_hat(j, n) * e_n, atol=1e-13), n


def test_smooth_part_uses_trapezoidal_weight():
    N = 16
    op = discrete_singular_op(_constant_kernel(1, coefficient=0.0, smooth=1.0), N)
    assert np.allclose(op @ np.ones(N), 2 * np.pi)


# ------------------------------------------------------------------ symbols


def test_block_symbol_unknown_name(params_w10):
    with pytest.raises(DomainError, match="ApR"):
        multiplier_block_symbol("Z", 0, params_w10)


def test_dtn_symbol_values(params_w10):
    Y = multiplier_block_symbol("Y", np.array([0, 4]), params_w10)
    assert Y[0, 0, 0] == pytest.approx(1.0)
    assert Y[1, 0, 0] == pytest.approx(-4.0 + params_w10.kt_p**2 / 8.0)
    assert Y[1, 1, 1] == pytest.approx(-4.0 + params_w10.kt_s**2 / 8.0)
    assert Y[1, 0, 1] == 0


def test_dtn_symbol_never_vanishes(params_w10):
    Y = multiplier_block_symbol("Y", band_modes(1024), params_w10)
    assert np.min(np.abs(Y[:, 0, 0])) > 0.1
    assert np.min(np.abs(Y[:, 1, 1])) > 0.1


def test_dtn_operator_is_invertible(params_w10, kite):
    Y = assemble_Y(params_w10, kite, 64, "s").dense()
    assert np.linalg.cond(Y) < 1e6


def test_regularizer_matches_symbol_squared(params_w10, circle):
    N = 32
    R = assemble_R(params_w10, circle, N, ParamKind.ARC).dense()
    t = grid_nodes(N)
    for n in (-5, 0, 1, 7):
        symbol = multiplier_block_symbol("R", n, params_w10)
        squared = symbol @ symbol
        e_n = np.exp(1j * n * t)
        vector = np.concatenate([e_n, 2.0 * e_n])
        expected = np.concatenate([(squared @ [1.0, 2.0])[0] * e_n, (squared @ [1.0, 2.0])[1] * e_n])
        assert np.allclose(R @ (R @ vector), expected, atol=1e-10), n


def test_regularizer_passes_constants(params_w10, circle):
    N = 16
    R = assemble_R(params_w10, circle, N, ParamKind.ARC).dense()
    constants = np.concatenate([np.full(N, 3.0), np.full(N, -1.5)])
    assert np.allclose(R @ constants, constants)


def test_general_regularizer_reduces_to_arc_on_circle(params_w10, circle):
    arc = assemble_R(params_w10, circle, 32, ParamKind.ARC).dense()
    general = assemble_R(params_w10, circle, 32, ParamKind.GENERAL).dense()
    assert np.allclose(arc, general, atol=1e-12)


def test_principal_symbol_eigenvalues(params_w10):
    p = params_w10
    Hps = multiplier_block_symbol("Hps", np.array([1, -3, 40]), p)
    for block in Hps:
        values = np.sort_complex(np.linalg.eigvals(block))
        expected = np.sort_complex(np.array([-(p.k_p**2 + p.k_s**2) / 2, -(p.kt_p**2 + p.kt_s**2) / 2]))
        assert np.allclose(values, expected)


def test_order_minus_one_symbol_at_zero(params_w10):
    block = multiplier_block_symbol("App_minus1", 0, params_w10)
    assert np.allclose(block, np.diag([0.5, -0.5]))


def test_composed_principal_symbol_tends_to_hps(params_w10):
    n = np.array([10**6, -(10**6)])
    composed = multiplier_block_symbol("ApR", n, params_w10)
    limit = multiplier_block_symbol("Hps", n, params_w10)
    assert np.max(np.abs(composed - limit)) <= 1e-3 * np.max(np.abs(limit))


def test_principal_matrix_shape(params_w10):
    assert principal_matrix(params_w10, 16).shape == (32, 32)


# ------------------------------------------------------------------ systems


def test_arc_length_path_requires_unit_speed(params_w10, kite):
    with pytest.raises(PreconditionError, match="arc-length"):
        assemble_system_arclength(params_w10, kite, 32)


def test_assembly_is_deterministic(params_w10, ellipse):
    first = assemble_system_general(params_w10, ellipse, 32).matrix
    second = assemble_system_general(params_w10, ellipse, 32).matrix
    assert np.array_equal(first, second)


@pytest.mark.parametrize("regularized", [True, False])
def test_paths_agree_on_circle(params_w10, circle, rng, regularized):
    N = 64
    arc = assemble_system(params_w10, circle, N, ParamKind.ARC, regularized)
    general = assemble_system(params_w10, circle, N, ParamKind.GENERAL, regularized)
    assert arc.kind == ParamKind.ARC and general.kind == ParamKind.GENERAL
    vector = np.concatenate([random_band_limited(rng, N, 8), random_band_limited(rng, N, 8)])
    expected = arc.matrix @ vector
    assert np.linalg.norm(general.matrix @ vector - expected) <= 1e-8 * np.linalg.norm(expected)


def test_unregularized_system_keeps_identity_regularizer(params_w10, ellipse):
    system = assemble_system_general(params_w10, ellipse, 16, regularized=False)
    assert not system.regularized
    assert np.allclose(system.regularizer.dense(), np.eye(32))


def test_dump_round_trip(params_w10, ellipse, tmp_path):
    system = assemble_system_general(params_w10, ellipse, 16)
    path = dump_system(system, tmp_path / "nested" / "ellipse.nvbie")
    assert path.stat().st_size == 64 + 16 * 32 * 32
    fields, matrix = load_system_matrix(path)
    assert fields["N"] == 16
    assert fields["kind"] == ParamKind.GENERAL
    assert fields["regularized"] == 1
    assert fields["omega"] == pytest.approx(10.0)
    assert np.array_equal(matrix, system.matrix)


def test_load_rejects_foreign_file(tmp_path):
    path = tmp_path / "junk.nvbie"
    path.write_bytes(b"NOTADUMP" + bytes(56))
    with pytest.raises(DomainError):
        load_system_matrix(path)
