"""Alpine1: f(x) = -sum |x_i sin(x_i) + 0.1 x_i| on [-10, 10]^d, maximum 0 at the origin."""
import numpy as np

from src.core.exceptions import ConfigurationException
from .problem import BenchmarkProblem, as_point


def alpine1(d: int = 5) -> BenchmarkProblem:
    if d < 1:
        raise ConfigurationException(f"Alpine1 needs d >= 1, got {d}", {"d": d})

    def evaluate(x: np.ndarray) -> float:
        point = as_point(x, d)
        return float(-np.sum(np.abs(point * np.sin(point) + 0.1 * point)))

    return BenchmarkProblem(
        name=f"alpine1-{d}",
        dim=d,
        bounds=((-10.0, 10.0),) * d,
        evaluate=evaluate,
        f_true_star=0.0,
        x_star_known=(0.0,) * d,
    )
