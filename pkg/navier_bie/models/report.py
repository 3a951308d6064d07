# navier_bie/models/report.py - Solve reports, sources and evaluated exterior fields
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .grid import GridFunction


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Outcome of one linear solve"""

    solution: np.ndarray
    method: str
    iterations: int
    residual: float
    wall_time: float
    residual_history: List[float] = field(default_factory=list)

    @property
    def lambda_p(self) -> GridFunction:
        return GridFunction(self.solution[: self.solution.size // 2])

    @property
    def lambda_s(self) -> GridFunction:
        return GridFunction(self.solution[self.solution.size // 2:])


@dataclass(frozen=True)
class NavierPointSource:
    """Point force at `position` with polarization `polarization`, placed inside the obstacle"""

    position: Tuple[float, float] = (0.1, 0.0)
    polarization: Tuple[float, float] = (1.0, 1.0)


@dataclass(frozen=True, eq=False)
class ExteriorField:
    """Displacement at evaluation points with its compressional and shear parts"""

    points: np.ndarray
    u: np.ndarray
    u_p_part: np.ndarray
    u_s_part: np.ndarray
    potential_p: Optional[np.ndarray] = None
    potential_s: Optional[np.ndarray] = None

    def moved_to(self, points: np.ndarray) -> "ExteriorField":
        """Same values attached to different (for example unscaled) coordinates"""
        return ExteriorField(points, self.u, self.u_p_part, self.u_s_part, self.potential_p, self.potential_s)
