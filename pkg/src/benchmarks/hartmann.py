"""
Hartmann functions on the unit hypercube, negated so the maximum is positive.
"""
import numpy as np

from .problem import BenchmarkProblem, as_point

_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])

_A3 = np.array([
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
])
_P3 = 1e-4 * np.array([
    [3689, 1170, 2673],
    [4699, 4387, 7470],
    [1091, 8732, 5547],
    [381, 5743, 8828],
])

_A6 = np.array([
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
])
_P6 = 1e-4 * np.array([
    [1312, 1696, 5569, 124, 8283, 5886],
    [2329, 4135, 8307, 3736, 1004, 9991],
    [2348, 1451, 3522, 2883, 3047, 6650],
    [4047, 8828, 8732, 5743, 1091, 381],
])

HARTMANN3_F_STAR = 3.86278
HARTMANN6_F_STAR = 3.32237
HARTMANN3_X_STAR = (0.114614, 0.555649, 0.852547)
HARTMANN6_X_STAR = (0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573)


def hartmann_min_form(x: np.ndarray, A: np.ndarray, P: np.ndarray) -> float:
    """Textbook Hartmann (minimization convention, minimum negative)."""
    point = as_point(x, A.shape[1])
    inner = np.sum(A * (point - P) ** 2, axis=1)
    return float(-np.sum(_ALPHA * np.exp(-inner)))


def hartmann3() -> BenchmarkProblem:
    return BenchmarkProblem(
        name="hartmann3",
        dim=3,
        bounds=((0.0, 1.0),) * 3,
        evaluate=lambda x: -hartmann_min_form(x, _A3, _P3),
        f_true_star=HARTMANN3_F_STAR,
        x_star_known=HARTMANN3_X_STAR,
    )


def hartmann6() -> BenchmarkProblem:
    return BenchmarkProblem(
        name="hartmann6",
        dim=6,
        bounds=((0.0, 1.0),) * 6,
        evaluate=lambda x: -hartmann_min_form(x, _A6, _P6),
        f_true_star=HARTMANN6_F_STAR,
        x_star_known=HARTMANN6_X_STAR,
    )
