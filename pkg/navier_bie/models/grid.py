# navier_bie/models/grid.py - Equispaced grid functions on [0, 2pi)
from dataclasses import dataclass

import numpy as np

from ..utils.errors import DomainError


def grid_nodes(N: int) -> np.ndarray:
    """Nodes t_m = 2 pi m / N"""
    if N <= 0 or N % 2:
        raise DomainError(f"grid size must be a positive even integer, got {N}")
    return 2.0 * np.pi * np.arange(N) / N


def band_modes(N: int) -> np.ndarray:
    """Integer modes -N/2 <= n < N/2 in FFT storage order"""
    return np.rint(np.fft.fftfreq(N, d=1.0 / N)).astype(int)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a 2pi-periodic function at the N equispaced nodes"""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size == 0 or values.size % 2:
            raise DomainError(f"grid functions need an even, positive number of samples, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return grid_nodes(self.N)

    @classmethod
    def sample(cls, func, N: int) -> "GridFunction":
        return cls(func(grid_nodes(N)))

    def coefficients(self) -> np.ndarray:
        """Discrete Fourier coefficients (1/N) sum f(t_m) e_{-n}(t_m), FFT order"""
        return np.fft.fft(self.values) / self.N

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.values - other.values)

    def __mul__(self, scalar) -> "GridFunction":
        return GridFunction(self.values * scalar)

    __rmul__ = __mul__
