# navier_bie/models/system.py - Assembled 2N x 2N regularized systems
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from .curve import Curve
from .operator import SandwichOperator
from .params import ProblemParams


class ParamKind(str, Enum):
    ARC = "arc"
    GENERAL = "general"


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """2 x 2 block operator whose blocks are SandwichOperators (None for a zero block)"""

    blocks: Tuple[Tuple[Optional[SandwichOperator], Optional[SandwichOperator]], ...]

    @property
    def N(self) -> int:
        return next(b for row in self.blocks for b in row if b is not None).N

    def apply(self, values: np.ndarray) -> np.ndarray:
        N = self.N
        halves = (values[:N], values[N:])
        out = np.zeros(2 * N, dtype=complex)
        for i in range(2):
            for j in range(2):
                block = self.blocks[i][j]
                if block is not None:
                    out[i * N:(i + 1) * N] += block.apply(halves[j])
        return out

    def right_apply(self, matrix: np.ndarray) -> np.ndarray:
        """Row-block x block-operator product for a (2N, 2N) or (N, 2N) matrix"""
        N = self.N
        rows = matrix.shape[0]
        out = np.zeros((rows, 2 * N), dtype=complex)
        for i in range(2):
            for j in range(2):
                block = self.blocks[i][j]
                if block is not None:
                    out[:, j * N:(j + 1) * N] += block.right_apply(matrix[:, i * N:(i + 1) * N])
        return out

    def dense(self) -> np.ndarray:
        N = self.N
        out = np.zeros((2 * N, 2 * N), dtype=complex)
        for i in range(2):
            for j in range(2):
                block = self.blocks[i][j]
                if block is not None:
                    out[i * N:(i + 1) * N, j * N:(j + 1) * N] = block.dense()
        return out


@dataclass(frozen=True, eq=False)
class SystemMatrix:
    """Discrete system M lambda = f together with the pieces needed after the solve

    `regularizer` maps the solution lambda to the densities phi, `dtn` holds the
    discrete Y operator per wave, `principal` the block multiplier H_ps.
    """

    N: int
    kind: ParamKind
    params: ProblemParams
    curve: Curve
    matrix: np.ndarray
    regularizer: BlockOperator
    dtn: Dict[str, SandwichOperator]
    principal: np.ndarray
    regularized: bool = True

    def __post_init__(self):
        if self.matrix.shape != (2 * self.N, 2 * self.N):
            raise ValueError(f"system matrix must be {2 * self.N} square, got {self.matrix.shape}")
