# navier_bie/services/spectral_service.py - Fourier multipliers, trigonometric interpolation and log-kernel coefficients
import logging
from math import comb
from typing import Callable, Union

import numpy as np

from ..models.grid import GridFunction, band_modes
from ..utils.errors import DomainError

logger = logging.getLogger(__name__)

Scalar = Union[int, float, complex]


class FourierSymbol:
    """Lazily evaluated symbol n -> complex, closed under +, - and composition (*)"""

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], name: str = "symbol"):
        self._func = func
        self.name = name

    def __call__(self, n) -> np.ndarray:
        n = np.asarray(n, dtype=int)
        return np.broadcast_to(np.asarray(self._func(n), dtype=complex), n.shape).copy()

    def on_band(self, N: int) -> np.ndarray:
        """Symbol values in FFT storage order"""
        return self(band_modes(N))

    def __mul__(self, other: Union["FourierSymbol", Scalar]) -> "FourierSymbol":
        if isinstance(other, FourierSymbol):
            return FourierSymbol(lambda n: self(n) * other(n), f"{self.name}*{other.name}")
        return FourierSymbol(lambda n: other * self(n), f"{other}*{self.name}")

    __rmul__ = __mul__

    def __add__(self, other: "FourierSymbol") -> "FourierSymbol":
        return FourierSymbol(lambda n: self(n) + other(n), f"({self.name}+{other.name})")

    def __sub__(self, other: "FourierSymbol") -> "FourierSymbol":
        return FourierSymbol(lambda n: self(n) - other(n), f"({self.name}-{other.name})")

    def __neg__(self) -> "FourierSymbol":
        return FourierSymbol(lambda n: -self(n), f"-{self.name}")

    def __repr__(self) -> str:
        return f"FourierSymbol({self.name})"


def _hilbert(n):
    return np.where(n >= 0, 1j, -1j)


def _mean(n):
    return (n == 0).astype(complex)


def derivative(r: int) -> FourierSymbol:
    """D_r with symbol (in)^r, zero at n = 0 for r != 0"""
    if r == 0:
        return IDENTITY

    def func(n):
        safe = np.where(n == 0, 1, n)
        return np.where(n == 0, 0.0, (1j * safe.astype(complex)) ** r)

    return FourierSymbol(func, f"D{r}")


def hilbert_derivative(r: int) -> FourierSymbol:
    """HD_r; for r = -1 the symbol is 1/|n|"""
    return FourierSymbol(lambda n: _hilbert(n) * derivative(r)(n), f"HD{r}")


IDENTITY = FourierSymbol(lambda n: np.ones(n.shape, dtype=complex), "I")
HILBERT = FourierSymbol(_hilbert, "H")
MEAN = FourierSymbol(_mean, "J")
ZERO = FourierSymbol(lambda n: np.zeros(n.shape, dtype=complex), "0")


def rho_hat(r: int, n) -> np.ndarray:
    """Fourier coefficients of rho_r(t) = -(e_1(t) - 1)^(r-1) log(2|sin(t/2)|)

    rho_1 has coefficients 1/(2|n|) (zero mean); the factor (e_1 - 1)^(r-1) shifts
    them binomially, which reproduces the exceptional low-index values exactly.
    """
    if r not in (1, 2, 3, 4):
        raise DomainError(f"rho_hat is tabulated for r in 1..4, got {r}")
    n = np.asarray(n, dtype=int)

    def base(m):
        return np.where(m == 0, 0.0, 0.5 / np.maximum(np.abs(m), 1))

    total = np.zeros(n.shape, dtype=float)
    for shift in range(r):
        total += comb(r - 1, shift) * (-1) ** (r - 1 - shift) * base(n - shift)
    return total[()] if total.ndim == 0 else total


def log_multiplier(r: int) -> FourierSymbol:
    """Lambda_r, the multiplier with symbol rho_hat(r, n)"""
    rho_hat(r, 0)
    return FourierSymbol(lambda n: rho_hat(r, n), f"Lambda{r}")


def apply_multiplier(symbol: FourierSymbol, f: GridFunction) -> GridFunction:
    coefficients = np.fft.fft(f.values)
    return GridFunction(np.fft.ifft(symbol.on_band(f.N) * coefficients))


class TrigInterpolant:
    """Q_N f, the element of T_N matching f at the nodes"""

    def __init__(self, f: GridFunction):
        self.N = f.N
        self.modes = band_modes(f.N)
        self.coefficients = f.coefficients()

    def evaluate_at(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(1j * np.multiply.outer(t, self.modes)) @ self.coefficients

    def derivative(self, order: int = 1) -> "TrigInterpolant":
        out = TrigInterpolant.__new__(TrigInterpolant)
        out.N, out.modes = self.N, self.modes
        out.coefficients = self.coefficients * (1j * self.modes) ** order
        return out


def interpolate(values) -> TrigInterpolant:
    f = values if isinstance(values, GridFunction) else GridFunction(values)
    return TrigInterpolant(f)


def sobolev_norm(f: GridFunction, s: float) -> float:
    n = band_modes(f.N)
    weights = np.where(n == 0, 1.0, np.abs(n).astype(float) ** (2 * s))
    return float(np.sqrt(np.sum(weights * np.abs(f.coefficients()) ** 2)))
