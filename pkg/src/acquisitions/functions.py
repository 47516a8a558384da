"""
Closed-form acquisition functions.

Baselines EI and GP-UCB ignore f*; EI* and MES* plug the known optimum
into standard criteria; CBM and ERM are the optimum-aware criteria and
are minimized. Every function accepts PredictiveMoments holding either
scalars or aligned arrays and returns the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from src.core.exceptions import ConfigurationException, ContractViolation
from src.surrogates.gp import PredictiveMoments
from src.surrogates.normal import std_normal_cdf, std_normal_logcdf, std_normal_pdf


class Direction(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class AcquisitionKind(str, Enum):
    """Acquisition tag; the optimization direction follows from the tag."""
    EI = "ei"
    UCB = "ucb"
    EI_STAR = "ei_star"
    MES_STAR = "mes_star"
    CBM = "cbm"
    ERM = "erm"

    @property
    def direction(self) -> Direction:
        if self in (AcquisitionKind.CBM, AcquisitionKind.ERM):
            return Direction.MINIMIZE
        return Direction.MAXIMIZE

    @property
    def uses_f_star(self) -> bool:
        return self not in (AcquisitionKind.EI, AcquisitionKind.UCB)


ACQUISITION_ALIASES = {
    "ei": AcquisitionKind.EI,
    "expected_improvement": AcquisitionKind.EI,
    "ucb": AcquisitionKind.UCB,
    "gp_ucb": AcquisitionKind.UCB,
    "ei_star": AcquisitionKind.EI_STAR,
    "eistar": AcquisitionKind.EI_STAR,
    "ei*": AcquisitionKind.EI_STAR,
    "mes_star": AcquisitionKind.MES_STAR,
    "messtar": AcquisitionKind.MES_STAR,
    "mes*": AcquisitionKind.MES_STAR,
    "cbm": AcquisitionKind.CBM,
    "confidence_bound_minimization": AcquisitionKind.CBM,
    "erm": AcquisitionKind.ERM,
    "expected_regret_minimization": AcquisitionKind.ERM,
}


def normalize_acquisition(name: str | AcquisitionKind) -> AcquisitionKind:
    if isinstance(name, AcquisitionKind):
        return name
    key = str(name).strip().lower().replace(" ", "_").replace("-", "_")
    if key not in ACQUISITION_ALIASES:
        available = ", ".join(k.value for k in AcquisitionKind)
        raise ConfigurationException(
            f"Unknown acquisition {name!r}. Available: {available}",
            {"available": [k.value for k in AcquisitionKind]},
        )
    return ACQUISITION_ALIASES[key]


@dataclass(frozen=True)
class AcquisitionContext:
    """Everything an acquisition needs beyond the predictive moments."""
    f_star_std: Optional[float] = None
    incumbent: Optional[float] = None
    beta: Optional[float] = None
    delta: float = 0.1
    iteration: int = 1

    def __post_init__(self):
        if self.beta is not None and not self.beta >= 0:
            raise ContractViolation(f"beta must be nonnegative, got {self.beta}")
        if not 0 < self.delta < 1:
            raise ContractViolation(f"delta must lie in (0, 1), got {self.delta}")
        if self.iteration < 1:
            raise ContractViolation(f"iteration must be positive, got {self.iteration}")

    def require_f_star(self, acquisition: str) -> float:
        if self.f_star_std is None:
            raise ConfigurationException(f"{acquisition} needs the known optimum f*")
        return float(self.f_star_std)

    def require_beta(self, acquisition: str) -> float:
        if self.beta is None:
            raise ConfigurationException(f"{acquisition} needs beta")
        return float(self.beta)


def _unbox(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def _arrays(m: PredictiveMoments) -> tuple[np.ndarray, np.ndarray]:
    return np.asarray(m.mean, dtype=float), np.asarray(m.std, dtype=float)


def _expected_positive_part(delta: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """E[max(0, delta + sigma Z)] for Z ~ N(0, 1), with the sigma = 0 limit."""
    positive = sigma > 0
    safe_sigma = np.where(positive, sigma, 1.0)
    z = delta / safe_sigma
    value = np.where(
        positive,
        safe_sigma * std_normal_pdf(z) + delta * std_normal_cdf(z),
        np.maximum(0.0, delta),
    )
    return np.maximum(value, 0.0)


def acq_ei(m: PredictiveMoments, ctx: AcquisitionContext) -> float | np.ndarray:
    """Expected improvement over the incumbent xi."""
    if ctx.incumbent is None:
        raise ConfigurationException("EI needs an incumbent")
    mu, sigma = _arrays(m)
    return _unbox(_expected_positive_part(mu - ctx.incumbent, sigma))


def acq_ucb(m: PredictiveMoments, ctx: AcquisitionContext) -> float | np.ndarray:
    """GP-UCB: mu + sqrt(beta) sigma."""
    beta = ctx.require_beta("UCB")
    mu, sigma = _arrays(m)
    return _unbox(mu + math.sqrt(beta) * sigma)


def acq_ei_star(m: PredictiveMoments, ctx: AcquisitionContext) -> float | np.ndarray:
    """EI with f* as the incumbent."""
    f_star = ctx.require_f_star("EI*")
    mu, sigma = _arrays(m)
    return _unbox(_expected_positive_part(mu - f_star, sigma))


def acq_mes_star(m: PredictiveMoments, ctx: AcquisitionContext) -> float | np.ndarray:
    """Max-value entropy search with the max-value sample replaced by f*.

    gamma = (f* - mu)/sigma; value gamma*phi(gamma)/(2*Phi(gamma)) - log Phi(gamma).
    At sigma = 0 the value is 0 below f* and log 2 exactly at f*; above f* the
    truncation is empty and the call fails.
    """
    f_star = ctx.require_f_star("MES*")
    mu, sigma = _arrays(m)
    degenerate = sigma <= 0
    if np.any(degenerate & (mu > f_star)):
        raise ContractViolation(
            "MES* is undefined where sigma = 0 and the mean exceeds f*",
            {"f_star": f_star},
        )
    safe_sigma = np.where(degenerate, 1.0, sigma)
    gamma = np.where(degenerate, 0.0, (f_star - mu) / safe_sigma)
    log_cdf = std_normal_logcdf(gamma)
    # phi/Phi through logs keeps the ratio finite for very negative gamma
    ratio = np.exp(-0.5 * gamma * gamma - 0.5 * math.log(2.0 * math.pi) - log_cdf)
    value = 0.5 * gamma * ratio - log_cdf
    value = np.where(degenerate & (mu < f_star), 0.0, value)
    return _unbox(value)


def acq_cbm(m: PredictiveMoments, ctx: AcquisitionContext) -> float | np.ndarray:
    """Confidence bound minimization: |mu - f*| + sqrt(beta) sigma (minimized)."""
    f_star = ctx.require_f_star("CBM")
    beta = ctx.require_beta("CBM")
    mu, sigma = _arrays(m)
    return _unbox(np.abs(mu - f_star) + math.sqrt(beta) * sigma)


def acq_erm(m: PredictiveMoments, ctx: AcquisitionContext) -> float | np.ndarray:
    """Expected regret E[f* - f] under the predictive Gaussian (minimized)."""
    f_star = ctx.require_f_star("ERM")
    mu, sigma = _arrays(m)
    return _unbox(_expected_positive_part(f_star - mu, sigma))


ACQUISITION_FUNCTIONS: dict[AcquisitionKind, Callable[[PredictiveMoments, AcquisitionContext], float | np.ndarray]] = {
    AcquisitionKind.EI: acq_ei,
    AcquisitionKind.UCB: acq_ucb,
    AcquisitionKind.EI_STAR: acq_ei_star,
    AcquisitionKind.MES_STAR: acq_mes_star,
    AcquisitionKind.CBM: acq_cbm,
    AcquisitionKind.ERM: acq_erm,
}


def evaluate_acquisition(
    kind: AcquisitionKind, m: PredictiveMoments, ctx: AcquisitionContext
) -> float | np.ndarray:
    return ACQUISITION_FUNCTIONS[kind](m, ctx)
