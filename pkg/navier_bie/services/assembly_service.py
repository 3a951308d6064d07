# navier_bie/services/assembly_service.py - Nystrom discretization of the regularized combined-field system
import logging
import time
from pathlib import Path
from typing import Callable, Dict, Tuple, Union

import numpy as np
from scipy import linalg

from ..models.curve import Curve, CurveKind
from ..models.grid import band_modes, grid_nodes
from ..models.kernel import SplitKernel
from ..models.operator import SandwichOperator, _apply_symbol, _right_symbol
from ..models.params import ProblemParams
from ..models.system import BlockOperator, ParamKind, SystemMatrix
from ..utils.errors import DomainError, PreconditionError
from .geometry_service import frame, grid_frame
from .kernel_service import (
    commutator_kernel,
    difference_quotient,
    split_KT,
    split_V,
    split_V4,
    split_Vt3,
    split_Vtn,
    split_W_regular,
)
from .spectral_service import (
    HILBERT,
    IDENTITY,
    MEAN,
    ZERO,
    FourierSymbol,
    derivative,
    hilbert_derivative,
    log_multiplier,
    rho_hat,
)

logger = logging.getLogger(__name__)

ARC_LENGTH_SPEED_TOLERANCE = 1e-10

D = derivative(1)
HD = hilbert_derivative(1)
HD_M1 = hilbert_derivative(-1)
DH = D * HILBERT
LAMBDA_3 = log_multiplier(3)

SymbolBlock = Tuple[Tuple[FourierSymbol, FourierSymbol], Tuple[FourierSymbol, FourierSymbol]]


# ---------------------------------------------------------------- quadrature


def quadrature_matrix(delta_hat: Union[FourierSymbol, np.ndarray], N: int) -> np.ndarray:
    """Delta_N[i, m] = (1/N) sum_band delta_hat(n) e_n(t_i - t_m), a circulant"""
    values = delta_hat.on_band(N) if isinstance(delta_hat, FourierSymbol) else np.asarray(delta_hat, dtype=complex)
    if values.shape != (N,):
        raise DomainError(f"coefficient table must have {N} entries in FFT order")
    return linalg.circulant(np.fft.ifft(values))


def multiplier_matrix(symbol: FourierSymbol, N: int) -> np.ndarray:
    return quadrature_matrix(symbol, N)


def discrete_singular_op(kernel: SplitKernel, N: int) -> np.ndarray:
    """(-4 pi A) o Delta_N(rho_hat_j) + (2 pi / N) B sampled at the nodes"""
    t = grid_nodes(N)
    A = kernel.coefficient(t, t)
    B = kernel.smooth(t, t)
    weights = quadrature_matrix(rho_hat(kernel.j, band_modes(N)).astype(complex), N)
    return -4.0 * np.pi * A * weights + (2.0 * np.pi / N) * B


def commutator_matrix(a: Callable, a_prime: Callable, N: int) -> np.ndarray:
    """Discrete H - a^{-1} H a

    The kernel factors as delta(t - tau) r_a(t, tau) with
    delta_hat(n) = H(n - 1) - H(n); delta is integrated exactly on the band.
    """
    n = band_modes(N)
    delta_hat = HILBERT(n - 1) - HILBERT(n)
    t = grid_nodes(N)
    return quadrature_matrix(delta_hat, N) * commutator_kernel(a, a_prime)(t, t)


# ---------------------------------------------------------------- symbols


def _block_values(block: SymbolBlock, n: np.ndarray) -> np.ndarray:
    out = np.empty(np.shape(n) + (2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[..., i, j] = block[i][j](n)
    return out


def _symbols(params: ProblemParams) -> Dict[str, SymbolBlock]:
    ktp2, kts2 = params.kt_p**2, params.kt_s**2
    kp2, ks2 = params.k_p**2, params.k_s**2
    H_ODD = HILBERT * (IDENTITY - MEAN)
    y_p = DH + (ktp2 / 2.0) * HD_M1 + MEAN
    y_s = DH + (kts2 / 2.0) * HD_M1 + MEAN
    total = kp2 + ks2 + ktp2 + kts2
    gap = kp2 + ks2 - ktp2 - kts2
    principal_11 = 0.5 * MEAN + (ktp2 / 4.0 + kp2 / 2.0) * HD_M1 + (kp2 / 4.0) * (D * LAMBDA_3 * D)
    principal_22 = -0.5 * MEAN - (kts2 / 4.0 + ks2 / 2.0) * HD_M1 - (ks2 / 4.0) * (D * LAMBDA_3 * D)
    principal_12 = -(kts2 / 4.0) * (H_ODD * HD_M1) - (ks2 / 4.0) * (D * LAMBDA_3 * y_s)
    principal_21 = -(ktp2 / 4.0) * (H_ODD * HD_M1) - (kp2 / 4.0) * (D * LAMBDA_3 * y_p)
    return {
        "H0": ((IDENTITY, -HILBERT), (-HILBERT, -IDENTITY)),
        "T": ((HD, D), (D, -HD)),
        "Hps": ((-total / 4.0 * IDENTITY, gap / 4.0 * HILBERT), (-gap / 4.0 * HILBERT, -total / 4.0 * IDENTITY)),
        "App_minus1": ((HD + 0.5 * MEAN, D), (D, -HD - 0.5 * MEAN)),
        "App_2": (
            (principal_11 - 0.5 * MEAN, principal_12),
            (principal_21, principal_22 + 0.5 * MEAN),
        ),
        "Y": ((y_p, ZERO), (ZERO, y_s)),
        "R": ((HD + (kts2 / 2.0) * HD_M1 + MEAN, D), (D, -HD - (ktp2 / 2.0) * HD_M1 + MEAN)),
    }


def multiplier_block_symbol(name: str, n, params: ProblemParams) -> np.ndarray:
    """2 x 2 block symbols: H0, T, Hps, App_minus1, App_2, Y, R and ApR = (App_minus1 + App_2) R"""
    n = np.asarray(n, dtype=int)
    table = _symbols(params)
    if name == "ApR":
        principal = _block_values(table["App_minus1"], n) + _block_values(table["App_2"], n)
        return principal @ _block_values(table["R"], n)
    if name not in table:
        raise DomainError(f"unknown block symbol {name!r}, expected one of {sorted(table) + ['ApR']}")
    return _block_values(table[name], n)


def _block_circulant(values: np.ndarray) -> np.ndarray:
    N = values.shape[0]
    out = np.empty((2 * N, 2 * N), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[i * N:(i + 1) * N, j * N:(j + 1) * N] = linalg.circulant(np.fft.ifft(values[:, i, j]))
    return out


def principal_matrix(params: ProblemParams, N: int) -> np.ndarray:
    return _block_circulant(multiplier_block_symbol("Hps", band_modes(N), params))


# ---------------------------------------------------------------- geometry weights


class SpeedWeights:
    """eta, a = 1/eta and the derivatives of a at the nodes and as functions of t"""

    def __init__(self, curve: Curve, N: int):
        self.curve = curve
        f = grid_frame(curve, N)
        self.eta = f.eta
        self.a = 1.0 / f.eta

    @staticmethod
    def _derivatives(f):
        eta = f.eta
        x1x2 = np.sum(f.d1 * f.d2, axis=-1)
        eta_1 = x1x2 / eta
        eta_2 = (np.sum(f.d2 * f.d2, axis=-1) + np.sum(f.d1 * f.d3, axis=-1)) / eta - x1x2**2 / eta**3
        a_1 = -eta_1 / eta**2
        a_2 = -eta_2 / eta**2 + 2.0 * eta_1**2 / eta**3
        return a_1, a_2

    def a_of(self, t):
        return 1.0 / frame(self.curve, t).eta

    def a_prime_of(self, t):
        return self._derivatives(frame(self.curve, t))[0]

    def a_second_of(self, t):
        return self._derivatives(frame(self.curve, t))[1]


def _check_arc_length(curve: Curve, N: int) -> None:
    eta = grid_frame(curve, N).eta
    if np.max(np.abs(eta - 1.0)) > ARC_LENGTH_SPEED_TOLERANCE:
        raise PreconditionError(
            f"curve {curve.name!r} is not an arc-length parametrization (max |eta - 1| = {np.max(np.abs(eta - 1.0)):.2e})"
        )


# ---------------------------------------------------------------- Y and R


def assemble_Y(params: ProblemParams, curve: Curve, N: int, wave: str, kind: ParamKind = ParamKind.GENERAL) -> SandwichOperator:
    """Discrete Y_k = a D H + (k~^2 / 2) HD_{-1} eta + a J"""
    k2 = params.complexified(wave) ** 2
    op = SandwichOperator(N)
    if kind == ParamKind.ARC:
        return op.plus((DH + (k2 / 2.0) * HD_M1 + MEAN).on_band(N))
    weights = SpeedWeights(curve, N)
    return (
        op.plus(DH.on_band(N), left=weights.a)
        .plus((k2 / 2.0) * HD_M1.on_band(N), right=weights.eta)
        .plus(MEAN.on_band(N), left=weights.a)
    )


def assemble_R(params: ProblemParams, curve: Curve, N: int, kind: ParamKind = ParamKind.GENERAL) -> BlockOperator:
    """Regularizer a T + diag(k~_s^2/2 HD_{-1} eta + J eta, -k~_p^2/2 HD_{-1} eta + J eta)"""
    kts2, ktp2 = params.kt_s**2, params.kt_p**2
    if kind == ParamKind.ARC:
        a = eta = None
    else:
        weights = SpeedWeights(curve, N)
        a, eta = weights.a, weights.eta
    base = SandwichOperator(N)
    r11 = base.plus(HD.on_band(N), left=a).plus((kts2 / 2.0) * HD_M1.on_band(N) + MEAN.on_band(N), right=eta)
    r12 = base.plus(D.on_band(N), left=a)
    r22 = base.plus(-HD.on_band(N), left=a).plus(-(ktp2 / 2.0) * HD_M1.on_band(N) + MEAN.on_band(N), right=eta)
    return BlockOperator(((r11, r12), (r12, r22)))


def identity_regularizer(N: int) -> BlockOperator:
    eye = SandwichOperator(N).plus(np.ones(N, dtype=complex))
    return BlockOperator(((eye, None), (None, eye)))


# ---------------------------------------------------------------- kernel matrices


class KernelMatrices:
    """Nystrom matrices of the split kernels for one wavenumber"""

    def __init__(self, curve: Curve, k: float, N: int):
        self.k = k
        correction, v4 = split_V4(curve, k)
        self.v4_correction = correction
        self.v4 = discrete_singular_op(v4, N)
        self.vt3 = discrete_singular_op(split_Vt3(curve, k), N)
        self.vtn = discrete_singular_op(split_Vtn(curve, k), N)
        self.kt = discrete_singular_op(split_KT(curve, k), N)


def single_layer_matrix(curve: Curve, k: float, N: int, smoothed: bool = True) -> np.ndarray:
    """V_N either as 1/2 HD_{-1} eta + (k^2/4) Lambda_3 eta^3 + V4 or straight from the j = 1 split"""
    if not smoothed:
        return discrete_singular_op(split_V(curve, k), N)
    eta = grid_frame(curve, N).eta
    correction, v4 = split_V4(curve, k)
    return (
        0.5 * multiplier_matrix(HD_M1, N) * eta[None, :]
        + multiplier_matrix(correction, N) * (eta**3)[None, :]
        + discrete_singular_op(v4, N)
    )


def hypersingular_matrix(curve: Curve, k: float, N: int) -> np.ndarray:
    """W_N = 1/2 a HD + a D V+ a D + k^2 (1/2 HD_{-1} eta + Vt3), with V+ = V - 1/2 HD_{-1} eta"""
    recipe = split_W_regular(curve, k)
    eta = grid_frame(curve, N).eta
    a = 1.0 / eta
    v_plus = multiplier_matrix(recipe.v4_correction, N) * (eta**3)[None, :] + discrete_singular_op(recipe.v4, N)
    hd_m1_eta = multiplier_matrix(HD_M1, N) * eta[None, :]
    return (
        0.5 * a[:, None] * multiplier_matrix(HD, N)
        + _right(a[:, None] * _left(D, v_plus) * a[None, :], D)
        + recipe.k**2 * (0.5 * hd_m1_eta + discrete_singular_op(recipe.vt3, N))
    )


def _left(symbol: FourierSymbol, matrix: np.ndarray) -> np.ndarray:
    return _apply_symbol(symbol.on_band(matrix.shape[0]), matrix, axis=0)


def _right(matrix: np.ndarray, symbol: FourierSymbol) -> np.ndarray:
    return _right_symbol(matrix, symbol.on_band(matrix.shape[1]))


# ---------------------------------------------------------------- arc-length path


def assemble_system_arclength(params: ProblemParams, curve: Curve, N: int, regularized: bool = True) -> SystemMatrix:
    """M = (T + A_{-1}) R on an arc-length curve

    All multiplier products are composed symbol-wise; kernel remainders are
    multiplied from the right by the (pre-composed) multipliers through FFTs.
    """
    _check_arc_length(curve, N)
    started = time.perf_counter()
    table = _symbols(params)
    R = table["R"] if regularized else ((IDENTITY, ZERO), (ZERO, IDENTITY))
    y_p, y_s = table["Y"][0][0], table["Y"][1][1]
    n = band_modes(N)

    principal = _block_values(table["App_minus1"], n) + _block_values(table["App_2"], n)
    matrix = _block_circulant(principal @ _block_values(R, n))

    P = KernelMatrices(curve, params.k_p, N)
    S = KernelMatrices(curve, params.k_s, N)
    kp2, ks2 = params.k_p**2, params.k_s**2
    dv4_p, dv4_s = _left(D, P.v4), _left(D, S.v4)

    # remainder[i][l] = [(matrix, right multiplier), ...]
    remainder = (
        (
            [(dv4_p, D), (kp2 * P.vt3, IDENTITY), (-P.kt, y_p)],
            [(ks2 * S.vtn, IDENTITY), (-S.kt, D), (-dv4_s, y_s)],
        ),
        (
            [(kp2 * P.vtn, IDENTITY), (-P.kt, D), (-dv4_p, y_p)],
            [(-dv4_s, D), (-ks2 * S.vt3, IDENTITY), (S.kt, y_s)],
        ),
    )
    for i in range(2):
        for j in range(2):
            block = np.zeros((N, N), dtype=complex)
            for l in range(2):
                for X, m in remainder[i][l]:
                    block += _right(X, m * R[l][j])
            matrix[i * N:(i + 1) * N, j * N:(j + 1) * N] += block

    regularizer = assemble_R(params, curve, N, ParamKind.ARC) if regularized else identity_regularizer(N)
    system = SystemMatrix(
        N=N,
        kind=ParamKind.ARC,
        params=params,
        curve=curve,
        matrix=matrix,
        regularizer=regularizer,
        dtn={w: assemble_Y(params, curve, N, w, ParamKind.ARC) for w in ("p", "s")},
        principal=principal_matrix(params, N),
        regularized=regularized,
    )
    logger.info(f"assembled arc-length system N={N} in {1e3 * (time.perf_counter() - started):.1f} ms")
    return system


# ---------------------------------------------------------------- general path


def _hilbert_commutator(b: Callable, b_prime: Callable, N: int) -> np.ndarray:
    """[H, b] with kernel (i/pi)(b(t) - b(tau)) / (e_1(t - tau) - 1)"""
    t = grid_nodes(N)
    return (2j / N) * difference_quotient(b, b_prime)(t, t)


def _minus_one_part(params: ProblemParams, N: int, P: KernelMatrices, S: KernelMatrices, weights: SpeedWeights, Y):
    """Dense 2N x 2N order -1 part of the combined-field operator"""
    a, eta = weights.a, weights.eta
    J = multiplier_matrix(MEAN, N)
    hd_m1_eta = multiplier_matrix(HD_M1, N) * eta[None, :]
    h_odd = multiplier_matrix(HILBERT * (IDENTITY - MEAN), N)
    cross = _right(a[:, None] * h_odd * eta[None, :], HD_M1) * eta[None, :]

    def v_plus(K: KernelMatrices) -> np.ndarray:
        return multiplier_matrix(K.v4_correction, N) * (eta**3)[None, :] + K.v4

    def d_v_d(V: np.ndarray) -> np.ndarray:
        return _right(a[:, None] * _left(D, V) * a[None, :], D)

    def d_v(V: np.ndarray) -> np.ndarray:
        return a[:, None] * _left(D, V)

    vp, vs = v_plus(P), v_plus(S)
    kp2, ks2 = params.k_p**2, params.k_s**2
    ktp2, kts2 = params.kt_p**2, params.kt_s**2
    block = np.empty((2 * N, 2 * N), dtype=complex)
    block[:N, :N] = (
        0.5 * a[:, None] * J
        + (ktp2 / 4.0) * hd_m1_eta
        + d_v_d(vp)
        + kp2 * (0.5 * hd_m1_eta + P.vt3)
        - Y["p"].right_apply(P.kt)
    )
    block[:N, N:] = ks2 * S.vtn - _right(S.kt * a[None, :], D) - (kts2 / 4.0) * cross - Y["s"].right_apply(d_v(vs))
    block[N:, :N] = kp2 * P.vtn - _right(P.kt * a[None, :], D) - (ktp2 / 4.0) * cross - Y["p"].right_apply(d_v(vp))
    block[N:, N:] = (
        -0.5 * a[:, None] * J
        - (kts2 / 4.0) * hd_m1_eta
        - d_v_d(vs)
        - ks2 * (0.5 * hd_m1_eta + S.vt3)
        + Y["s"].right_apply(S.kt)
    )
    return block


def assemble_system_general(params: ProblemParams, curve: Curve, N: int, regularized: bool = True) -> SystemMatrix:
    """M = a [T, a] T + a T R_low + A_{-1} R for an arbitrary regular parametrization

    a = 1/eta. The order-two cancellation T^2 = 0 is used analytically; what is
    left of a T a T is a [T, a] T, assembled from Hilbert commutators.
    """
    started = time.perf_counter()
    weights = SpeedWeights(curve, N)
    a, eta = weights.a, weights.eta
    P = KernelMatrices(curve, params.k_p, N)
    S = KernelMatrices(curve, params.k_s, N)
    Y = {w: assemble_Y(params, curve, N, w, ParamKind.GENERAL) for w in ("p", "s")}
    minus_one = _minus_one_part(params, N, P, S, weights, Y)

    if not regularized:
        T = _block_circulant(multiplier_block_symbol("T", band_modes(N), params))
        matrix = np.tile(a, 2)[:, None] * T + minus_one
        regularizer = identity_regularizer(N)
    else:
        regularizer = assemble_R(params, curve, N, ParamKind.GENERAL)
        ktp2, kts2 = params.kt_p**2, params.kt_s**2
        # [H, a] = -a (H - a^{-1} H a)
        c_a = -a[:, None] * commutator_matrix(weights.a_of, weights.a_prime_of, N)
        c_ap = _hilbert_commutator(weights.a_prime_of, weights.a_second_of, N)
        G = _right(c_a, D) + c_ap
        g_hd, g_d = _right(G, HD), _right(G, D)

        low_s = (kts2 / 2.0) * HD_M1 + MEAN
        low_p = -(ktp2 / 2.0) * HD_M1 + MEAN
        matrix = np.empty((2 * N, 2 * N), dtype=complex)
        matrix[:N, :N] = a[:, None] * (g_hd + multiplier_matrix(HD * low_s, N) * eta[None, :])
        matrix[:N, N:] = a[:, None] * (g_d + multiplier_matrix(D * low_p, N) * eta[None, :])
        matrix[N:, :N] = a[:, None] * (-g_d + multiplier_matrix(D * low_s, N) * eta[None, :])
        matrix[N:, N:] = a[:, None] * (g_hd - multiplier_matrix(HD * low_p, N) * eta[None, :])
        matrix += regularizer.right_apply(minus_one)

    system = SystemMatrix(
        N=N,
        kind=ParamKind.GENERAL,
        params=params,
        curve=curve,
        matrix=matrix,
        regularizer=regularizer,
        dtn=Y,
        principal=principal_matrix(params, N),
        regularized=regularized,
    )
    logger.info(f"assembled general system N={N} in {1e3 * (time.perf_counter() - started):.1f} ms")
    return system


def assemble_system(
    params: ProblemParams, curve: Curve, N: int, kind: ParamKind, regularized: bool = True
) -> SystemMatrix:
    if kind == ParamKind.ARC:
        return assemble_system_arclength(params, curve, N, regularized)
    return assemble_system_general(params, curve, N, regularized)


# ---------------------------------------------------------------- binary dump

_MAGIC = b"NVBIE\x00\x00\x00"
_VERSION = 1
_HEADER = np.dtype(
    [
        ("magic", "S8"),
        ("version", "<u4"),
        ("N", "<u4"),
        ("kind", "<u4"),
        ("regularized", "<u4"),
        ("omega", "<f8"),
        ("lam", "<f8"),
        ("mu", "<f8"),
        ("eps_p", "<f8"),
        ("eps_s", "<f8"),
    ]
)
_KIND_CODES = {ParamKind.ARC: 0, ParamKind.GENERAL: 1}


def dump_system(system: SystemMatrix, path: Path) -> Path:
    """Header followed by the 2N x 2N matrix as little-endian complex128, row-major"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = np.zeros(1, dtype=_HEADER)
    p = system.params
    header[0] = (_MAGIC, _VERSION, system.N, _KIND_CODES[system.kind], int(system.regularized), p.omega, p.lam, p.mu, p.eps_p, p.eps_s)
    with path.open("wb") as handle:
        handle.write(header.tobytes())
        handle.write(np.ascontiguousarray(system.matrix, dtype="<c16").tobytes())
    return path


def load_system_matrix(path: Path) -> Tuple[Dict[str, object], np.ndarray]:
    """Header fields and matrix of a dumped system"""
    raw = Path(path).read_bytes()
    header = np.frombuffer(raw[: _HEADER.itemsize], dtype=_HEADER)[0]
    if header["magic"] != _MAGIC.rstrip(b"\x00") and header["magic"] != _MAGIC:
        raise DomainError(f"{path} is not a system dump")
    if int(header["version"]) != _VERSION:
        raise DomainError(f"unsupported system dump version {int(header['version'])}")
    N = int(header["N"])
    matrix = np.frombuffer(raw[_HEADER.itemsize:], dtype="<c16").reshape(2 * N, 2 * N)
    fields = {name: header[name].item() for name in _HEADER.names if name != "magic"}
    fields["kind"] = ParamKind.ARC if fields["kind"] == 0 else ParamKind.GENERAL
    return fields, matrix.copy()
