"""
Branin-Hoo function, negated for maximization.

Three global minimizers: (-pi, 12.275), (pi, 2.275), (9.42478, 2.475).
"""
import math

import numpy as np

from .problem import BenchmarkProblem, as_point

BRANIN_F_STAR = -0.397887

_A = 1.0
_B = 5.1 / (4.0 * math.pi ** 2)
_C = 5.0 / math.pi
_R = 6.0
_S = 10.0
_T = 1.0 / (8.0 * math.pi)


def branin_min_form(x: np.ndarray) -> float:
    """Textbook Branin (minimization convention)."""
    x1, x2 = as_point(x, 2)
    return float(
        _A * (x2 - _B * x1 ** 2 + _C * x1 - _R) ** 2
        + _S * (1.0 - _T) * math.cos(x1)
        + _S
    )


def branin() -> BenchmarkProblem:
    return BenchmarkProblem(
        name="branin",
        dim=2,
        bounds=((-5.0, 10.0), (0.0, 15.0)),
        evaluate=lambda x: -branin_min_form(x),
        f_true_star=BRANIN_F_STAR,
        x_star_known=(math.pi, 2.275),
    )
