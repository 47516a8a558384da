"""
Deterministic multi-start optimizer over the unit hypercube.

Uniform random candidates are scored in one batch, the best few are
refined by a compass (coordinate pattern) search that halves its step
after every sweep without improvement, and the overall best point wins.
Ties are broken by lexicographic order of the point, so the result does
not depend on evaluation order.
"""
from typing import Callable, Optional

import numpy as np

from src.core.exceptions import ContractViolation
from .functions import Direction

BatchObjective = Callable[[np.ndarray], np.ndarray]

DEFAULT_SAMPLES_PER_DIM = 200
DEFAULT_REFINE_STARTS = 5
INITIAL_STEP = 0.1
MIN_STEP = 1e-4


def _scores(evaluate: BatchObjective, points: np.ndarray, sign: float) -> np.ndarray:
    values = np.asarray(evaluate(points), dtype=float).reshape(-1)
    if values.size != points.shape[0]:
        raise ContractViolation(
            f"Objective returned {values.size} values for {points.shape[0]} points"
        )
    scores = sign * values
    return np.where(np.isnan(scores), -np.inf, scores)


def _rank(points: np.ndarray, scores: np.ndarray) -> np.ndarray:
    """Indices ordered best first: highest score, then smallest point lexicographically."""
    keys = [points[:, j] for j in reversed(range(points.shape[1]))]
    keys.append(-scores)
    return np.lexsort(keys)


def _better(score: float, point: np.ndarray, best_score: float, best_point: np.ndarray) -> bool:
    if score != best_score:
        return score > best_score
    return tuple(point) < tuple(best_point)


def _pattern_search(
    evaluate: BatchObjective, sign: float, x: np.ndarray, score: float
) -> tuple[np.ndarray, float]:
    dim = x.size
    basis = np.eye(dim)
    step = INITIAL_STEP
    # Each sweep strictly improves the score or halves the step.
    while step >= MIN_STEP:
        moves = np.clip(np.vstack([x + step * basis, x - step * basis]), 0.0, 1.0)
        move_scores = _scores(evaluate, moves, sign)
        best = _rank(moves, move_scores)[0]
        if move_scores[best] > score:
            x, score = moves[best], float(move_scores[best])
        else:
            step *= 0.5
    return x, score


def optimize_acquisition(
    evaluate: BatchObjective,
    direction: Direction | str,
    dim: int,
    n_samples: Optional[int] = None,
    n_refine: int = DEFAULT_REFINE_STARTS,
    seed: int = 0,
    extra_candidates: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, float]:
    """Optimize a batch-vectorized function over [0, 1]^dim.

    Args:
        evaluate: Maps an (m, dim) array to m values
        direction: Whether larger or smaller values are better
        dim: Input dimension
        n_samples: Uniform candidates drawn; defaults to 200 * dim
        n_refine: Number of best candidates refined by pattern search
        seed: Seed for the candidate draw
        extra_candidates: Points added to the candidate pool (e.g. training inputs)

    Returns:
        (point, value) with value in the caller's units; never worse than
        the best candidate in the pool
    """
    if dim < 1:
        raise ContractViolation(f"Dimension must be positive, got {dim}")
    n_samples = DEFAULT_SAMPLES_PER_DIM * dim if n_samples is None else n_samples
    if n_samples < 1 or n_refine < 1:
        raise ContractViolation(
            "Optimizer budget must be positive",
            {"n_samples": n_samples, "n_refine": n_refine},
        )
    sign = 1.0 if Direction(direction) is Direction.MAXIMIZE else -1.0

    rng = np.random.default_rng(seed)
    pool = rng.random((n_samples, dim))
    if extra_candidates is not None and len(extra_candidates):
        extra = np.clip(np.asarray(extra_candidates, dtype=float).reshape(-1, dim), 0.0, 1.0)
        pool = np.vstack([pool, extra])

    scores = _scores(evaluate, pool, sign)
    order = _rank(pool, scores)
    best_x, best_score = pool[order[0]].copy(), float(scores[order[0]])

    for idx in order[:n_refine]:
        x, score = _pattern_search(evaluate, sign, pool[idx].copy(), float(scores[idx]))
        if _better(score, x, best_score, best_x):
            best_x, best_score = x, score

    return best_x, sign * best_score
