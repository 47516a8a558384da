"""Acquisition functions, the beta schedule and the acquisition optimizer."""
from .functions import (
    AcquisitionContext,
    AcquisitionKind,
    Direction,
    acq_cbm,
    acq_ei,
    acq_ei_star,
    acq_erm,
    acq_mes_star,
    acq_ucb,
    evaluate_acquisition,
    normalize_acquisition,
)
from .optimizer import optimize_acquisition
from .schedule import beta_schedule

__all__ = [
    "AcquisitionContext",
    "AcquisitionKind",
    "Direction",
    "acq_cbm",
    "acq_ei",
    "acq_ei_star",
    "acq_erm",
    "acq_mes_star",
    "acq_ucb",
    "evaluate_acquisition",
    "normalize_acquisition",
    "optimize_acquisition",
    "beta_schedule",
]
