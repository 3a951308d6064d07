# navier_bie/controllers/__init__.py
from .experiment_controller import ExperimentController, PipelineResult

__all__ = ["ExperimentController", "PipelineResult"]
