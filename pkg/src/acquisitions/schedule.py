"""Exploration weight beta_t for UCB-style criteria."""
import math

from src.core.exceptions import ContractViolation

BETA_FLOOR = 1e-6


def beta_schedule(t: int, f_star_std: float, delta: float = 0.1) -> float:
    """beta_t = max(floor, 2 f* + 300 log^3(t / delta)), natural log.

    f* enters in standardized units; the floor keeps sqrt(beta) real when a
    negative f* drives the expression below zero.
    """
    if t < 1:
        raise ContractViolation(f"Iteration must be >= 1, got {t}")
    if not 0 < delta < 1:
        raise ContractViolation(f"delta must lie in (0, 1), got {delta}")
    return max(BETA_FLOOR, 2.0 * f_star_std + 300.0 * math.log(t / delta) ** 3)
