# navier_bie/models/__init__.py
from .grid import GridFunction, grid_nodes, band_modes
from .curve import Curve, CurveKind, CurveFrame
from .params import ProblemParams
from .kernel import SplitKernel
from .operator import SandwichOperator
from .system import BlockOperator, ParamKind, SystemMatrix
from .report import SolveReport, NavierPointSource, ExteriorField
from .experiment import ExperimentConfig, ParamChoice, SolverChoice, load_config, build_config

__all__ = [
    "GridFunction",
    "grid_nodes",
    "band_modes",
    "Curve",
    "CurveKind",
    "CurveFrame",
    "ProblemParams",
    "SplitKernel",
    "SandwichOperator",
    "BlockOperator",
    "ParamKind",
    "SystemMatrix",
    "SolveReport",
    "NavierPointSource",
    "ExteriorField",
    "ExperimentConfig",
    "ParamChoice",
    "SolverChoice",
    "load_config",
    "build_config",
]
