# navier_bie/services/geometry_service.py - Boundary curves, frames and arc-length resampling
import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..config.settings import settings
from ..models.curve import Curve, CurveFrame, CurveKind
from ..models.grid import band_modes, grid_nodes
from ..models.params import ProblemParams
from ..utils.errors import (
    ConfigurationError,
    DegenerateParametrizationError,
    DomainError,
    ReparametrizationError,
)

logger = logging.getLogger(__name__)

LENGTH_TOLERANCE = 1e-6

# Unscaled shapes as cosine/sine coefficient lists, index = mode
_BUILTIN_SHAPES: Dict[str, Tuple[List[float], List[float], List[float], List[float]]] = {
    "circle": ([0.0, 1.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]),
    "ellipse": ([0.0, 1.0], [0.0, 0.0], [0.0, 0.0], [0.0, 2.0]),
    "kite": ([0.0, 1.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0], [0.0, 2.0]),
    "cavity": (
        [0.0, 2.0 / 5.0, 4.0 / 5.0],
        [0.0, 0.0, 0.0],
        [0.0],
        [0.0, 7.0 / 12.0, 17.0 / 48.0, 3.0 / 8.0, -1.0 / 24.0],
    ),
}
BUILTIN_NAMES = tuple(sorted(_BUILTIN_SHAPES))

# Interior points of the scaled shapes; the cavity does not contain the origin
_BUILTIN_SOURCES: Dict[str, Tuple[float, float]] = {"cavity": (0.5, 0.0)}


def _pad(values: Sequence[float], size: int) -> np.ndarray:
    out = np.zeros(size)
    out[: len(values)] = values
    return out


def fourier_curve(
    name: str,
    x1_cos: Sequence[float],
    x1_sin: Sequence[float],
    x2_cos: Sequence[float],
    x2_sin: Sequence[float],
    scale: float = 1.0,
) -> Curve:
    """Curve from real cosine/sine coefficients, x_j(t) = a_0 + sum_n a_n cos nt + b_n sin nt"""
    M = max(len(x1_cos), len(x1_sin), len(x2_cos), len(x2_sin), 2)
    modes = np.arange(-(M - 1), M)
    coefficients = np.zeros((2, modes.size), dtype=complex)
    for row, (a, b) in enumerate(((x1_cos, x1_sin), (x2_cos, x2_sin))):
        a, b = _pad(a, M), _pad(b, M)
        b[0] = 0.0
        for n in range(M):
            if n == 0:
                coefficients[row, M - 1] = a[0]
                continue
            coefficients[row, M - 1 + n] = 0.5 * (a[n] - 1j * b[n])
            coefficients[row, M - 1 - n] = 0.5 * (a[n] + 1j * b[n])
    return Curve(name=name, kind=CurveKind.ANALYTIC, modes=modes, coefficients=coefficients * scale, scale=scale)


def default_source(name: str) -> Tuple[float, float]:
    """Point-source location inside a built-in shape, settings.default_source otherwise"""
    return _BUILTIN_SOURCES.get(name.strip().lower(), tuple(settings.default_source))


def builtin_curve(name: str) -> Curve:
    """Built-in shape scaled to total length 2pi"""
    key = name.strip().lower()
    if key not in _BUILTIN_SHAPES:
        raise ConfigurationError(f"unknown geometry {name!r}, valid options are {', '.join(BUILTIN_NAMES)}", "geometry")
    unit = fourier_curve(key, *_BUILTIN_SHAPES[key])
    scale = 2.0 * np.pi / unit.length
    return unit.scaled(scale)


def _frame_from_derivatives(t: np.ndarray, d0, d1, d2, d3) -> CurveFrame:
    eta = np.linalg.norm(d1, axis=-1)
    if np.any(eta < 1e-12):
        raise DegenerateParametrizationError("curve speed |x'(t)| vanishes")
    tangent = d1 / eta[..., None]
    normal = np.stack([tangent[..., 1], -tangent[..., 0]], axis=-1)
    curvature = (d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]) / eta**3
    return CurveFrame(t, d0, d1, d2, d3, eta, tangent, normal, curvature)


def frame(curve: Curve, t) -> CurveFrame:
    """Point, derivatives, unit tangent, outward normal n = Q t, speed and signed curvature at t"""
    t = np.asarray(t, dtype=float)
    d = [curve.derivative(t, order) for order in range(4)]
    return _frame_from_derivatives(t, *d)


def grid_frame(curve: Curve, N: int) -> CurveFrame:
    """frame() at the N grid nodes, evaluated by FFT"""
    d = [curve.sample_uniform(N, order) for order in range(4)]
    return _frame_from_derivatives(grid_nodes(N), *d)


def _series(coefficients: np.ndarray, modes: np.ndarray, t: np.ndarray, chunk: int = 512) -> np.ndarray:
    out = np.empty(t.size, dtype=complex)
    for start in range(0, t.size, chunk):
        block = t[start:start + chunk]
        out[start:start + chunk] = np.exp(1j * np.multiply.outer(block, modes)) @ coefficients
    return out


def arclength_reparametrize(curve: Curve, n_aux: Optional[int] = None) -> Curve:
    """Resample the curve at equal arc-length steps on an n_aux-point grid

    The cumulative length s(t) is the spectral primitive of the speed; its inverse
    at the target lengths is found by Newton iteration starting from the
    uniform-speed guess.
    """
    M = n_aux or settings.fine_grid
    if M < 256 or M & (M - 1):
        raise DomainError(f"n_aux must be a power of two >= 256, got {M}")

    modes = band_modes(M)
    speed = np.linalg.norm(curve.sample_uniform(M, 1), axis=1)
    speed_hat = np.fft.fft(speed) / M
    keep = np.abs(speed_hat) > 1e-17 * np.abs(speed_hat).max()
    keep[0] = True
    n_keep, c_keep = modes[keep], speed_hat[keep]
    nonzero = n_keep != 0
    mean_speed = speed_hat[0].real
    length = 2.0 * np.pi * mean_speed

    primitive = np.zeros_like(c_keep)
    primitive[nonzero] = c_keep[nonzero] / (1j * n_keep[nonzero])

    def arc(t):
        return mean_speed * t + np.real(_series(primitive[nonzero], n_keep[nonzero], t) - primitive[nonzero].sum())

    def rate(t):
        return np.real(_series(c_keep, n_keep, t))

    sigma = grid_nodes(M)
    target = sigma * mean_speed
    t = sigma.copy()
    for iteration in range(1, settings.newton_max_iter + 1):
        residual = arc(t) - target
        if np.max(np.abs(residual)) < settings.newton_tol:
            break
        t = t - residual / rate(t)
    else:
        raise ReparametrizationError(
            f"arc-length inversion stalled after {settings.newton_max_iter} Newton steps, "
            f"residual {np.max(np.abs(arc(t) - target)):.3e}"
        )
    logger.debug(f"arc-length inversion of {curve.name} converged in {iteration} Newton steps")

    positions = curve.derivative(t, 0)
    coefficients = np.fft.fft(positions, axis=0).T / M
    resampled = Curve(
        name=curve.name,
        kind=CurveKind.RESAMPLED_ARC_LENGTH,
        modes=modes,
        coefficients=coefficients,
        scale=curve.scale,
        n_aux=M,
    )
    logger.info(f"resampled {curve.name} by arc length on {M} nodes, length {length:.15f}")
    return resampled


def rescale_wavenumbers(params: ProblemParams, length: float) -> ProblemParams:
    """Wavenumbers (and offsets) of the problem posed on the curve scaled to length 2pi"""
    if length <= 0:
        raise DomainError("curve length must be positive")
    factor = length / (2.0 * np.pi)
    return params.model_copy(
        update={
            "k_p": params.k_p * factor,
            "k_s": params.k_s * factor,
            "eps_p": params.eps_p * factor,
            "eps_s": params.eps_s * factor,
            "length_scale": params.length_scale * factor,
        }
    )


def normalize_length(curve: Curve, params: ProblemParams) -> Tuple[Curve, ProblemParams, float]:
    """Map a curve of length L to length 2pi; returns the geometric factor 2pi / L"""
    length = curve.length
    if abs(length - 2.0 * np.pi) <= LENGTH_TOLERANCE:
        return curve, params, 1.0
    factor = 2.0 * np.pi / length
    logger.warning(f"curve {curve.name} has length {length:.6f}, rescaling wavenumbers by {1.0 / factor:.6f}")
    return curve.scaled(factor), rescale_wavenumbers(params, length), factor


class CurveRecord(BaseModel):
    """Serialized curve"""

    name: str
    r: float = Field(..., description="Geometric scale factor")
    kind: CurveKind
    n_aux: Optional[int] = None
    modes: List[int]
    x1: List[Tuple[float, float]] = Field(..., description="(re, im) coefficient pairs of x_1")
    x2: List[Tuple[float, float]] = Field(..., description="(re, im) coefficient pairs of x_2")


def curve_to_record(curve: Curve) -> CurveRecord:
    pairs = [[(float(c.real), float(c.imag)) for c in row] for row in curve.coefficients]
    return CurveRecord(
        name=curve.name, r=curve.scale, kind=curve.kind, n_aux=curve.n_aux, modes=curve.modes.tolist(), x1=pairs[0], x2=pairs[1]
    )


def curve_from_record(record: CurveRecord) -> Curve:
    coefficients = np.array([[complex(a, b) for a, b in row] for row in (record.x1, record.x2)])
    return Curve(
        name=record.name, kind=record.kind, modes=np.array(record.modes), coefficients=coefficients, scale=record.r, n_aux=record.n_aux
    )


def save_curve(curve: Curve, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(curve_to_record(curve).model_dump_json(indent=2))
    return path


def load_curve(path: Path) -> Curve:
    """Curve from a saved JSON record or a TOML file of cosine/sine coefficients"""
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError as e:
        raise ConfigurationError(f"curve file not found: {path}", "geometry.curve_file") from e
    if path.suffix == ".json":
        return curve_from_record(CurveRecord.model_validate(json.loads(text)))
    try:
        document = tomllib.loads(text)
        entry = document["curve"]
        return fourier_curve(
            entry.get("name", path.stem),
            entry.get("x1_cos", []),
            entry.get("x1_sin", []),
            entry.get("x2_cos", []),
            entry.get("x2_sin", []),
            scale=entry.get("scale", 1.0),
        )
    except (tomllib.TOMLDecodeError, KeyError, TypeError) as e:
        raise ConfigurationError(f"invalid curve file {path}: {e}", "geometry.curve_file") from e
