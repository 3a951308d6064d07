# navier_bie/utils/__init__.py
from .errors import (
    NavierBIEError,
    ConfigurationError,
    DomainError,
    DegenerateParametrizationError,
    ReparametrizationError,
    PreconditionError,
    SingularSystemError,
    NonConvergenceError,
    NearFieldError,
    PipelineError,
)
from .writers import write_csv_rows, write_complex_csv

__all__ = [
    "NavierBIEError",
    "ConfigurationError",
    "DomainError",
    "DegenerateParametrizationError",
    "ReparametrizationError",
    "PreconditionError",
    "SingularSystemError",
    "NonConvergenceError",
    "NearFieldError",
    "PipelineError",
    "write_csv_rows",
    "write_complex_csv",
]
