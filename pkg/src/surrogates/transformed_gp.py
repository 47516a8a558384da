"""
Optimum-aware surrogate: f = f* - g^2 / 2 with g modelled by a GP.

Observations are mapped into g-space with g = sqrt(2 (f* - y)), a GP is
fitted to the g-values, and predictions of f come from a first-order
expansion of the transformation around the posterior mean of g. The
predictive mean of f can therefore never exceed f*.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from src.core.exceptions import KnownOptimumViolated
from src.core.logging import get_logger
from .gp import (
    DEFAULT_JITTER_CEILING,
    GpModel,
    KernelParams,
    ObservationSet,
    PredictiveMoments,
    Standardizer,
    fit,
    predict,
)

logger = get_logger(__name__)

CLIP_TOLERANCE = 1e-9


class PriorMeanMode(str, Enum):
    """Prior mean of g: zero, or sqrt(2 f*) so that the prior mean of f sits at zero."""
    ZERO = "zero"
    SQRT2FSTAR = "sqrt2fstar"


class SurrogateKind(str, Enum):
    """Model a run selects with: the vanilla GP or the transformed GP."""
    GP = "gp"
    TGP = "tgp"


@dataclass(frozen=True, eq=False)
class TgpModel:
    """GP on g-values plus the standardized optimum it was built from."""
    f_star_std: float
    m0: float
    m0_mode: PriorMeanMode
    g_values: np.ndarray
    inner_gp: GpModel

    @property
    def standardizer(self) -> Standardizer:
        return self.inner_gp.data.standardizer


@dataclass(frozen=True)
class TgpPosterior:
    """Linearized moments of f, with the g-space moments kept for diagnostics."""
    mu_f: float | np.ndarray
    sigma_f: float | np.ndarray
    mu_g: float | np.ndarray
    sigma_g: float | np.ndarray

    @property
    def moments(self) -> PredictiveMoments:
        return PredictiveMoments(mean=self.mu_f, std=self.sigma_f)


def to_g_space(y_std: ArrayLike, f_star_std: float) -> float | np.ndarray:
    """g = sqrt(2 max(0, f* - y)).

    Raises:
        KnownOptimumViolated: If any y exceeds f* by more than the clipping tolerance
    """
    y = np.asarray(y_std, dtype=float)
    excess = y - f_star_std
    if np.any(excess > CLIP_TOLERANCE):
        worst = float(np.max(y))
        raise KnownOptimumViolated(observed=worst, f_star=float(f_star_std), tolerance=CLIP_TOLERANCE)
    g = np.sqrt(2.0 * np.maximum(0.0, f_star_std - y))
    return float(g) if g.ndim == 0 else g


def prior_mean_for(f_star_std: float, mode: PriorMeanMode | str) -> float:
    mode = PriorMeanMode(mode)
    if mode is PriorMeanMode.ZERO:
        return 0.0
    return math.sqrt(2.0 * max(0.0, f_star_std))


def fit_tgp(
    data: ObservationSet,
    f_star_raw: float,
    params: KernelParams,
    m0_mode: PriorMeanMode | str = PriorMeanMode.SQRT2FSTAR,
    jitter_ceiling: float = DEFAULT_JITTER_CEILING,
) -> TgpModel:
    """Fit the transformed GP.

    f* is standardized with the data's own standardizer. The prior mean in
    ``params`` is replaced by the one implied by ``m0_mode``.

    Raises:
        KnownOptimumViolated: If an observation exceeds f* (checked before fitting)
        FitException: If the inner GP cannot be factorized
    """
    mode = PriorMeanMode(m0_mode)
    f_star_std = float(data.standardizer.forward(f_star_raw))
    g_values = np.asarray(to_g_space(data.y_std, f_star_std), dtype=float).reshape(-1)
    m0 = prior_mean_for(f_star_std, mode)
    inner = fit(
        data,
        KernelParams(lengthscale=params.lengthscale, jitter=params.jitter, prior_mean=m0),
        targets=g_values,
        jitter_ceiling=jitter_ceiling,
    )
    return TgpModel(
        f_star_std=f_star_std, m0=m0, m0_mode=mode, g_values=g_values, inner_gp=inner
    )


def linearize(mu_g: ArrayLike, sigma_g: ArrayLike, f_star_std: float) -> tuple:
    """(mu_f, sigma_f) from g-space moments: f* - mu_g^2/2 and |mu_g| sigma_g."""
    mu_g = np.asarray(mu_g, dtype=float)
    sigma_g = np.asarray(sigma_g, dtype=float)
    mu_f = f_star_std - 0.5 * mu_g * mu_g
    sigma_f = np.abs(mu_g) * sigma_g
    return mu_f, sigma_f


def predict_tgp(model: TgpModel, x: ArrayLike) -> TgpPosterior:
    """Linearized predictive moments of f at one point or an (m, d) batch."""
    g = predict(model.inner_gp, x)
    mu_f, sigma_f = linearize(g.mean, g.std, model.f_star_std)
    if np.ndim(mu_f) == 0:
        return TgpPosterior(
            mu_f=float(mu_f), sigma_f=float(sigma_f), mu_g=float(g.mean), sigma_g=float(g.std)
        )
    return TgpPosterior(mu_f=mu_f, sigma_f=sigma_f, mu_g=g.mean, sigma_g=g.std)


def from_g_space(g: ArrayLike, f_star_std: float) -> float | np.ndarray:
    """Inverse map f = f* - g^2/2."""
    g = np.asarray(g, dtype=float)
    f = f_star_std - 0.5 * g * g
    return float(f) if f.ndim == 0 else f


def describe(model: TgpModel) -> dict:
    """Diagnostic summary of a fitted model, used in debug logging."""
    info = {
        "f_star_std": model.f_star_std,
        "m0": model.m0,
        "m0_mode": model.m0_mode.value,
        "lengthscale": model.inner_gp.params.lengthscale,
        "g_min": float(np.min(model.g_values)),
        "g_max": float(np.max(model.g_values)),
    }
    return info
