# navier_bie/utils/errors.py - Exception hierarchy shared by services, controllers and the CLI
from typing import Optional


class NavierBIEError(Exception):
    """Base class for every error raised by the solver"""

    exit_code = 3


class ConfigurationError(NavierBIEError, ValueError):
    """Bad experiment configuration, unknown geometry or invalid field"""

    exit_code = 2

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class DomainError(NavierBIEError, ValueError):
    """Argument outside the domain of an operation"""


class DegenerateParametrizationError(NavierBIEError, ValueError):
    """Curve speed |x'(t)| vanishes at a sample point"""


class ReparametrizationError(NavierBIEError):
    """Newton inversion of the arc-length map failed"""


class PreconditionError(NavierBIEError, ValueError):
    """Operation called with inputs violating its precondition"""


class SingularSystemError(NavierBIEError):
    """LU factorization met a pivot below the singularity threshold"""


class NonConvergenceError(NavierBIEError):
    """Iterative solver reached max_iter without meeting the tolerance"""

    def __init__(self, message: str, best_residual: float, iterations: int):
        self.best_residual = best_residual
        self.iterations = iterations
        super().__init__(f"{message} (best residual {best_residual:.3e} after {iterations} iterations)")


class NearFieldError(NavierBIEError, ValueError):
    """Evaluation point too close to the boundary for the rectangular rule"""


class PipelineError(NavierBIEError):
    """Failure inside an experiment pipeline, tagged with the stage it happened in"""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)
        super().__init__(f"[{stage}] {cause}")
