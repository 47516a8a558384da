"""Simple regret: f* minus the best value observed so far."""
from typing import Sequence

import numpy as np

from src.core.exceptions import ContractViolation


def simple_regret(y_values: Sequence[float], f_star_true: float) -> list[float]:
    """r_t = f* - max_{i<=t} y_i for every prefix of the trace."""
    y = np.asarray(y_values, dtype=float).reshape(-1)
    if y.size == 0:
        raise ContractViolation("Simple regret needs at least one observation")
    return [float(f_star_true - best) for best in np.maximum.accumulate(y)]
