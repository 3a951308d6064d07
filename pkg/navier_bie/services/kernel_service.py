# navier_bie/services/kernel_service.py - Log-split Helmholtz boundary kernels with analytic diagonals
import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy import special

from ..models.curve import Curve, CurveFrame
from ..models.grid import grid_nodes
from ..models.kernel import SplitKernel
from ..utils.errors import DomainError
from .geometry_service import frame, grid_frame
from .special_functions import EULER_GAMMA, j0_minus_one
from .spectral_service import FourierSymbol, log_multiplier

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi


def frame_at(curve: Curve, t: np.ndarray) -> CurveFrame:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.size % 2 == 0 and np.array_equal(t, grid_nodes(t.size)):
        return grid_frame(curve, t.size)
    return frame(curve, t)


class PairGeometry:
    """Pairwise quantities between parameter sets t (rows) and tau (columns)"""

    def __init__(self, curve: Curve, t, tau):
        self.t = np.atleast_1d(np.asarray(t, dtype=float))
        self.tau = np.atleast_1d(np.asarray(tau, dtype=float))
        self.ft = frame_at(curve, self.t)
        self.fs = frame_at(curve, self.tau)
        s = self.t[:, None] - self.tau[None, :]
        half_sine = np.sin(0.5 * s)
        self.diagonal = np.abs(half_sine) < 1e-14
        self.dx = self.ft.point[:, None, :] - self.fs.point[None, :, :]
        r = np.linalg.norm(self.dx, axis=-1)
        self.r = np.where(self.diagonal, 1.0, r)
        E = np.expm1(1j * s)
        self.E = np.where(self.diagonal, 1.0, E)
        self.log = np.log(4.0 * np.where(self.diagonal, 1.0, half_sine) ** 2)
        self.eta_tau = self.fs.eta[None, :]

    def dot_t(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """v(t) . w(tau) for per-row and per-column vector fields"""
        return np.einsum("ik,jk->ij", rows, cols)


def _pair_function(curve: Curve, off: Callable[[PairGeometry], np.ndarray], diag: Callable[[CurveFrame], np.ndarray]):
    def evaluate(t, tau) -> np.ndarray:
        g = PairGeometry(curve, t, tau)
        out = np.array(off(g), dtype=complex)
        if g.diagonal.any():
            rows, cols = np.nonzero(g.diagonal)
            out[rows, cols] = diag(frame_at(curve, g.t[rows]))
        return out

    return evaluate


def _point_function(curve: Curve, diag: Callable[[CurveFrame], np.ndarray]):
    return lambda t: np.asarray(diag(frame_at(curve, t)), dtype=complex)


def _build(curve, name, j, coef_off, coef_diag, smooth_off, smooth_diag, target_off) -> SplitKernel:
    return SplitKernel(
        name=name,
        j=j,
        coefficient=_pair_function(curve, coef_off, coef_diag),
        smooth=_pair_function(curve, smooth_off, smooth_diag),
        coefficient_diagonal=_point_function(curve, coef_diag),
        smooth_diagonal=_point_function(curve, smooth_diag),
        target=_pair_function(curve, target_off, lambda f: np.full(f.t.shape, np.nan)),
    )


def _check_k(k):
    if k == 0:
        raise DomainError("wavenumber must be nonzero")


def _single_layer_parts(k, g: PairGeometry):
    z = k * g.r
    target = 0.25j * special.hankel1(0, z) * g.eta_tau
    coefficient = -special.jv(0, z) * g.eta_tau / FOUR_PI
    return target, coefficient, target - coefficient * g.log


def _single_layer_smooth_diagonal(k, f: CurveFrame):
    return f.eta * (0.25j - EULER_GAMMA / (2.0 * np.pi) - np.log(k * f.eta / 2.0) / (2.0 * np.pi))


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a . Q b with Q b = (b_2, -b_1)"""
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def split_V(curve: Curve, k: complex) -> SplitKernel:
    """Single layer, j = 1"""
    _check_k(k)
    return _build(
        curve,
        "V",
        1,
        lambda g: _single_layer_parts(k, g)[1],
        lambda f: -f.eta / FOUR_PI,
        lambda g: _single_layer_parts(k, g)[2],
        lambda f: _single_layer_smooth_diagonal(k, f),
        lambda g: _single_layer_parts(k, g)[0],
    )


def split_V4(curve: Curve, k: complex) -> Tuple[FourierSymbol, SplitKernel]:
    """Single layer minus 1/2 HD_{-1} eta and (k^2/4) Lambda_3 eta^3, as a j = 4 kernel

    Returns the multiplier (k^2/4) Lambda_3, to be composed with multiplication
    by eta^3, together with the remainder kernel.
    """
    _check_k(k)
    kk = k * k

    def coefficient(g: PairGeometry):
        eta = g.eta_tau
        numerator = -j0_minus_one(k * g.r) * eta / FOUR_PI + kk / (16.0 * np.pi) * g.E**2 * eta**3
        return numerator / g.E**3

    def coefficient_diagonal(f: CurveFrame):
        return kk / (16.0 * np.pi) * (f.eta**3 + 1j * f.eta * np.sum(f.d1 * f.d2, axis=-1))

    def target(g: PairGeometry):
        full, _, _ = _single_layer_parts(k, g)
        return full + g.eta_tau * g.log / FOUR_PI + kk / (16.0 * np.pi) * g.E**2 * g.eta_tau**3 * g.log

    kernel = _build(
        curve,
        "V4",
        4,
        coefficient,
        coefficient_diagonal,
        lambda g: _single_layer_parts(k, g)[2],
        lambda f: _single_layer_smooth_diagonal(k, f),
        target,
    )
    return (kk / 4.0) * log_multiplier(3), kernel


def _normal_derivative_kernel(k, g: PairGeometry, normal_at_target: bool):
    if normal_at_target:
        projection = np.einsum("ijk,ik->ij", g.dx, g.ft.normal)
        sign = -1.0
    else:
        projection = np.einsum("ijk,jk->ij", g.dx, g.fs.normal)
        sign = 1.0
    z = k * g.r
    target = sign * 0.25j * k * special.hankel1(1, z) * projection / g.r * g.eta_tau
    log_coefficient = -sign * k / FOUR_PI * special.jv(1, z) * projection / g.r * g.eta_tau
    return target, log_coefficient


def _split_normal_derivative(curve: Curve, k: complex, normal_at_target: bool, name: str) -> SplitKernel:
    _check_k(k)
    kk = k * k

    def parts(g):
        target, log_coefficient = _normal_derivative_kernel(k, g, normal_at_target)
        return target, log_coefficient / g.E**2, target - log_coefficient * g.log

    def x2n(f: CurveFrame):
        return np.sum(f.d2 * f.normal, axis=-1)

    return _build(
        curve,
        name,
        3,
        lambda g: parts(g)[1],
        lambda f: kk / (16.0 * np.pi) * x2n(f) * f.eta,
        lambda g: parts(g)[2],
        lambda f: x2n(f) / (FOUR_PI * f.eta),
        lambda g: parts(g)[0],
    )


def split_KT(curve: Curve, k: complex) -> SplitKernel:
    """Adjoint double layer, normal derivative at the target point, j = 3"""
    return _split_normal_derivative(curve, k, True, "KT")


def split_K(curve: Curve, k: complex) -> SplitKernel:
    """Double layer, normal derivative at the source point, j = 3"""
    return _split_normal_derivative(curve, k, False, "K")


def split_Vtn(curve: Curve, k: complex) -> SplitKernel:
    """Single layer weighted by t(t) . n(tau), j = 2"""
    _check_k(k)

    def parts(g):
        tn = g.dot_t(g.ft.tangent, g.fs.normal)
        full, coefficient, smooth = _single_layer_parts(k, g)
        return tn * full, tn * coefficient / g.E, tn * smooth

    return _build(
        curve,
        "Vtn",
        2,
        lambda g: parts(g)[1],
        lambda f: -1j / FOUR_PI * _cross(f.d1, f.d2) / f.eta,
        lambda g: parts(g)[2],
        lambda f: np.zeros(f.t.shape, dtype=complex),
        lambda g: parts(g)[0],
    )


def split_Vt3(curve: Curve, k: complex) -> SplitKernel:
    """Single layer weighted by n(t) . n(tau), minus 1/2 HD_{-1} eta, as a j = 3 kernel"""
    _check_k(k)

    def parts(g):
        tt = g.dot_t(g.ft.tangent, g.fs.tangent)
        gap = g.ft.tangent[:, None, :] - g.fs.tangent[None, :, :]
        tt_minus_one = -0.5 * np.sum(gap * gap, axis=-1)
        full, _, smooth = _single_layer_parts(k, g)
        coefficient = -(j0_minus_one(k * g.r) * tt + tt_minus_one) * g.eta_tau / FOUR_PI / g.E**2
        return tt * full + g.eta_tau * g.log / FOUR_PI, coefficient, tt * smooth

    return _build(
        curve,
        "Vt3",
        3,
        lambda g: parts(g)[1],
        lambda f: -(f.eta**3) / FOUR_PI * (k * k / 4.0 + 0.5 * f.curvature**2),
        lambda g: parts(g)[2],
        lambda f: _single_layer_smooth_diagonal(k, f),
        lambda g: parts(g)[0],
    )


@dataclass(frozen=True)
class HypersingularRecipe:
    """W = 1/2 a HD + a D V+ a D + k^2 (1/2 HD_{-1} eta + Vt3), a = 1/eta, V+ = (k^2/4) Lambda_3 eta^3 + V4"""

    k: complex
    v4_correction: FourierSymbol
    v4: SplitKernel
    vt3: SplitKernel


def split_W_regular(curve: Curve, k: complex) -> HypersingularRecipe:
    correction, v4 = split_V4(curve, k)
    return HypersingularRecipe(k=k, v4_correction=correction, v4=v4, vt3=split_Vt3(curve, k))


def difference_quotient(b: Callable, b_prime: Callable):
    """(b(t) - b(tau)) / (e_1(t - tau) - 1) with diagonal -i b'(t)"""

    def evaluate(t, tau):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        s = t[:, None] - tau[None, :]
        diagonal = np.abs(np.sin(0.5 * s)) < 1e-14
        E = np.where(diagonal, 1.0, np.expm1(1j * s))
        out = (np.asarray(b(t))[:, None] - np.asarray(b(tau))[None, :]) / E
        rows, cols = np.nonzero(diagonal)
        out[rows, cols] = -1j * np.asarray(b_prime(t[rows]))
        return out

    return evaluate


def commutator_kernel(a: Callable, a_prime: Callable):
    """r_a(t, tau) = (a(t) - a(tau)) / (a(t) (e_1(t - tau) - 1)), diagonal -i a'(t) / a(t)"""
    quotient = difference_quotient(a, a_prime)

    def evaluate(t, tau):
        values = np.asarray(a(np.atleast_1d(np.asarray(t, dtype=float))))
        if np.any(np.abs(values) < 1e-14) or np.any(np.real(values) <= 0):
            raise DomainError("commutator weight must stay positive")
        return quotient(t, tau) / values[:, None]

    return evaluate
