# navier_bie/models/operator.py - Sums of diag * Fourier multiplier * diag products
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

Term = Tuple[Optional[np.ndarray], np.ndarray, Optional[np.ndarray]]


def _apply_symbol(symbol: np.ndarray, values: np.ndarray, axis: int = 0) -> np.ndarray:
    """Multiplier action along one axis, symbol in FFT order"""
    shape = [1] * values.ndim
    shape[axis] = -1
    return np.fft.ifft(symbol.reshape(shape) * np.fft.fft(values, axis=axis), axis=axis)


def _right_symbol(matrix: np.ndarray, symbol: np.ndarray) -> np.ndarray:
    """matrix @ circ(symbol) in O(N^2 log N)"""
    return np.fft.fft(np.fft.ifft(matrix, axis=1) * symbol[None, :], axis=1)


@dataclass(frozen=True, eq=False)
class SandwichOperator:
    """Discrete operator sum_k diag(l_k) circ(s_k) diag(r_k) on an N-point grid

    Symbols are sampled on the band in FFT order. None stands for an identity
    diagonal factor.
    """

    N: int
    terms: List[Term] = field(default_factory=list)

    def plus(self, symbol: np.ndarray, left: np.ndarray = None, right: np.ndarray = None) -> "SandwichOperator":
        return SandwichOperator(self.N, self.terms + [(left, np.asarray(symbol, dtype=complex), right)])

    def apply(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=complex)
        result = np.zeros(self.N, dtype=complex)
        for left, symbol, right in self.terms:
            inner = values if right is None else right * values
            outer = _apply_symbol(symbol, inner)
            result += outer if left is None else left * outer
        return result

    def left_apply(self, matrix: np.ndarray) -> np.ndarray:
        """self @ matrix"""
        result = np.zeros(matrix.shape, dtype=complex)
        for left, symbol, right in self.terms:
            inner = matrix if right is None else right[:, None] * matrix
            outer = _apply_symbol(symbol, inner, axis=0)
            result += outer if left is None else left[:, None] * outer
        return result

    def right_apply(self, matrix: np.ndarray) -> np.ndarray:
        """matrix @ self"""
        result = np.zeros(matrix.shape, dtype=complex)
        for left, symbol, right in self.terms:
            inner = matrix if left is None else matrix * left[None, :]
            outer = _right_symbol(inner, symbol)
            result += outer if right is None else outer * right[None, :]
        return result

    def dense(self) -> np.ndarray:
        return self.left_apply(np.eye(self.N, dtype=complex))
