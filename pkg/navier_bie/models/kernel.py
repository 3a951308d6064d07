# navier_bie/models/kernel.py - Split representation of log-singular boundary kernels
from dataclasses import dataclass
from typing import Callable

import numpy as np

PairFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]
PointFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SplitKernel:
    """Kernel written as A(t,tau) (e_1(t-tau) - 1)^(j-1) log(4 sin^2((t-tau)/2)) + B(t,tau)

    The pair functions take 1-D arrays t and tau and return the (len(t), len(tau))
    matrix of off-diagonal values; the diagonal functions give the limits t = tau.
    The speed eta(tau) is already folded into A and B.
    """

    name: str
    j: int
    coefficient: PairFunction
    smooth: PairFunction
    coefficient_diagonal: PointFunction
    smooth_diagonal: PointFunction
    target: PairFunction
