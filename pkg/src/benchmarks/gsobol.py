"""
G-Sobol: f(x) = -prod (|4 x_i - 2| + a_i) / (1 + a_i) on [0, 1]^d.

With every a_i = 0 the product vanishes as soon as one coordinate equals
0.5, so the maximum is 0 and it is attained on a union of hyperplanes.
"""
from typing import Optional, Sequence

import numpy as np

from src.core.exceptions import ConfigurationException
from .problem import BenchmarkProblem, as_point


def gsobol(d: int = 5, a: Optional[Sequence[float]] = None) -> BenchmarkProblem:
    if d < 1:
        raise ConfigurationException(f"gSobol needs d >= 1, got {d}", {"d": d})
    coeffs = np.zeros(d) if a is None else np.asarray(a, dtype=float)
    if coeffs.shape != (d,) or np.any(coeffs < 0):
        raise ConfigurationException("gSobol coefficients must be d nonnegative values")

    def evaluate(x: np.ndarray) -> float:
        point = as_point(x, d)
        return float(-np.prod((np.abs(4.0 * point - 2.0) + coeffs) / (1.0 + coeffs)))

    return BenchmarkProblem(
        name=f"gsobol-{d}",
        dim=d,
        bounds=((0.0, 1.0),) * d,
        evaluate=evaluate,
        f_true_star=0.0,
        x_star_known=(0.5,) * d,
    )
