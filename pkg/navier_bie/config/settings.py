# navier_bie/config/settings.py - Solver-wide defaults, overridable through NAVIER_BIE_* env vars
import logging
from typing import Tuple

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class SolverSettings(BaseSettings):
    """Numerical defaults used when an experiment manifest leaves a value unset"""

    model_config = SettingsConfigDict(env_prefix="NAVIER_BIE_", env_file=".env", extra="ignore")

    # Complexification offset, eps = eps_factor * k^(1/3) per wave
    eps_factor: float = Field(0.4, gt=0)

    # Arc-length reparametrization
    fine_grid: int = Field(4096, ge=256)
    newton_tol: float = Field(1e-12, gt=0)
    newton_max_iter: int = Field(50, ge=1)

    # Field evaluation
    near_field_distance: float = Field(0.1, ge=0)
    probe_radius: float = Field(4.0, gt=0)
    probe_count: int = Field(1024, ge=1)
    default_source: Tuple[float, float] = (0.1, 0.0)
    default_polarization: Tuple[float, float] = (1.0, 1.0)

    # Solvers
    gmres_tol: float = Field(1e-9, gt=0, le=1e-3)
    gmres_max_iter: int = Field(1000, ge=1)
    singular_pivot_tol: float = Field(1e-14, gt=0)
    dense_spectrum_limit: int = Field(4096, ge=2)

    # Reporting
    plateau_threshold: float = Field(1e-12, gt=0)
    cluster_radius_rel: float = Field(0.05, gt=0)
    output_dir: str = "results"
    log_level: str = "INFO"

    @field_validator("fine_grid")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("fine_grid must be a power of two")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        # getLevelNamesMapping is 3.11+; _nameToLevel is the same mapping on 3.10
        levels = getattr(logging, "getLevelNamesMapping", lambda: dict(logging._nameToLevel))()
        if value not in levels:
            raise ValueError(f"unknown log level {value}")
        return value


settings = SolverSettings()


def configure_logging(level: str = None) -> None:
    """Install the package log format on the root logger"""
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
