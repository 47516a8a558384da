"""Business logic services."""
from .bo_loop import BoConfig, Phase, RunState, initial_design, reach_check, run, step
from .experiment_service import ExperimentResult, ExperimentService, run_experiment

__all__ = [
    "BoConfig",
    "Phase",
    "RunState",
    "initial_design",
    "reach_check",
    "run",
    "step",
    "ExperimentResult",
    "ExperimentService",
    "run_experiment",
]
