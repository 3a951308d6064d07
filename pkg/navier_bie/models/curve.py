# navier_bie/models/curve.py - Closed curves stored as trigonometric coefficient series
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class CurveKind(str, Enum):
    ANALYTIC = "analytic"
    RESAMPLED_ARC_LENGTH = "resampled-arc-length"


@dataclass(frozen=True, eq=False)
class Curve:
    """Counter-clockwise closed curve x(t) = sum_n c_n e^{int}, one coefficient row per coordinate

    Built-in curves carry a handful of modes. Arc-length resampled curves carry
    the full coefficient set of the fine grid they were interpolated from.
    """

    name: str
    kind: CurveKind
    modes: np.ndarray
    coefficients: np.ndarray
    scale: float = 1.0
    n_aux: Optional[int] = None

    def __post_init__(self):
        modes = np.asarray(self.modes, dtype=int)
        coefficients = np.asarray(self.coefficients, dtype=complex).reshape(2, modes.size)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "coefficients", coefficients)
        # Terms below rounding level are skipped for pointwise evaluation
        magnitude = np.abs(coefficients).max(axis=0)
        keep = magnitude > 1e-17 * max(magnitude.max(), 1e-300)
        object.__setattr__(self, "_active", keep)

    @property
    def max_mode(self) -> int:
        active = self.modes[self._active]
        return int(np.abs(active).max()) if active.size else 0

    def derivative(self, t, order: int = 0) -> np.ndarray:
        """x^(order)(t) for arbitrary t, shape t.shape + (2,)"""
        t = np.asarray(t, dtype=float)
        modes = self.modes[self._active]
        coefficients = self.coefficients[:, self._active] * (1j * modes) ** order
        phases = np.exp(1j * np.multiply.outer(t, modes))
        return np.real(phases @ coefficients.T)

    def sample_uniform(self, N: int, order: int = 0) -> np.ndarray:
        """x^(order)(t_m) on the N-point grid by folding coefficients into the band, shape (N, 2)"""
        folded = np.zeros((2, N), dtype=complex)
        weighted = self.coefficients * (1j * self.modes) ** order
        np.add.at(folded, (slice(None), np.mod(self.modes, N)), weighted)
        return np.real(N * np.fft.ifft(folded, axis=1)).T

    @property
    def length(self) -> float:
        M = max(1024, 8 * self.max_mode)
        speed = np.linalg.norm(self.sample_uniform(M, 1), axis=1)
        return float(2.0 * np.pi * speed.mean())

    def scaled(self, factor: float) -> "Curve":
        """Geometrically scaled copy"""
        return Curve(
            name=self.name,
            kind=self.kind,
            modes=self.modes,
            coefficients=self.coefficients * factor,
            scale=self.scale * factor,
            n_aux=self.n_aux,
        )


@dataclass(frozen=True, eq=False)
class CurveFrame:
    """Geometric quantities at a batch of parameter values, vectors have trailing axis 2"""

    t: np.ndarray
    point: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    eta: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    curvature: np.ndarray
