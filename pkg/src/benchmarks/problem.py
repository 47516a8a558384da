"""
Benchmark problem container shared by every test function.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike

from src.core.exceptions import ContractViolation


@dataclass(frozen=True)
class BenchmarkProblem:
    """A maximization task with a known optimum value."""
    name: str
    dim: int
    bounds: tuple[tuple[float, float], ...]
    evaluate: Callable[[np.ndarray], float]
    f_true_star: float
    x_star_known: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if len(self.bounds) != self.dim:
            raise ContractViolation(
                f"{self.name}: {len(self.bounds)} bounds for dimension {self.dim}"
            )

    @property
    def bounds_array(self) -> np.ndarray:
        return np.asarray(self.bounds, dtype=float)

    def __call__(self, x: ArrayLike) -> float:
        return float(self.evaluate(as_point(x, self.dim)))


def as_point(x: ArrayLike, dim: int) -> np.ndarray:
    """Validate and flatten one input point."""
    point = np.asarray(x, dtype=float).reshape(-1)
    if point.size != dim:
        raise ContractViolation(f"Expected a {dim}-dimensional point, got {point.size}")
    return point
