"""Surrogate models: exact GP and the optimum-aware transformed GP."""
from .gp import (
    GpModel,
    KernelParams,
    ObservationSet,
    PredictiveMoments,
    Standardizer,
    fit,
    kernel_eval,
    log_marginal_likelihood,
    predict,
    select_lengthscale,
    standardize,
    to_original_units,
)
from .normal import std_normal_cdf, std_normal_pdf
from .transformed_gp import (
    PriorMeanMode,
    SurrogateKind,
    TgpModel,
    TgpPosterior,
    fit_tgp,
    predict_tgp,
    to_g_space,
)

__all__ = [
    "GpModel",
    "KernelParams",
    "ObservationSet",
    "PredictiveMoments",
    "Standardizer",
    "fit",
    "kernel_eval",
    "log_marginal_likelihood",
    "predict",
    "select_lengthscale",
    "standardize",
    "to_original_units",
    "std_normal_cdf",
    "std_normal_pdf",
    "PriorMeanMode",
    "SurrogateKind",
    "TgpModel",
    "TgpPosterior",
    "fit_tgp",
    "predict_tgp",
    "to_g_space",
]
