# navier_bie/config/__init__.py
from .settings import SolverSettings, settings, configure_logging

__all__ = ["SolverSettings", "settings", "configure_logging"]
