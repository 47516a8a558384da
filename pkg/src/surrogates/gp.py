"""
Exact Gaussian-process regression with a squared-exponential kernel.

Inputs live in the unit hypercube and outputs are standardized before
fitting, so the kernel carries a single hyperparameter (the lengthscale)
and unit signal variance. Observations are treated as noiseless; a small
diagonal jitter keeps the Gram matrix factorizable and is escalated when
the Cholesky factorization fails.
"""
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular
from scipy.spatial.distance import cdist

from src.core.exceptions import ContractViolation, FitException, SelectionException
from src.core.logging import get_logger

logger = get_logger(__name__)

DEFAULT_JITTER = 1e-6
DEFAULT_JITTER_CEILING = 1e-2
UNIT_TOLERANCE = 1e-12
_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class KernelParams:
    """Squared-exponential kernel hyperparameters."""
    lengthscale: float
    jitter: float = DEFAULT_JITTER
    prior_mean: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.lengthscale) and self.lengthscale > 0):
            raise ContractViolation(
                f"Lengthscale must be positive, got {self.lengthscale}",
                {"lengthscale": self.lengthscale},
            )
        if not (np.isfinite(self.jitter) and self.jitter > 0):
            raise ContractViolation(
                f"Jitter must be positive, got {self.jitter}", {"jitter": self.jitter}
            )
        if not np.isfinite(self.prior_mean):
            raise ContractViolation("Prior mean must be finite", {"prior_mean": self.prior_mean})


@dataclass(frozen=True)
class Standardizer:
    """Affine output map y_std = (y_raw - mean) / scale."""
    mean: float
    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise ContractViolation(f"Standardizer scale must be positive, got {self.scale}")

    def forward(self, value: ArrayLike) -> float | np.ndarray:
        out = (np.asarray(value, dtype=float) - self.mean) / self.scale
        return float(out) if out.ndim == 0 else out

    def inverse(self, value: ArrayLike) -> float | np.ndarray:
        out = np.asarray(value, dtype=float) * self.scale + self.mean
        return float(out) if out.ndim == 0 else out


def fit_standardizer(y_raw: ArrayLike) -> Standardizer:
    """Population mean/std of the raw outputs; scale falls back to 1 for n=1 or constant data."""
    y = np.asarray(y_raw, dtype=float).ravel()
    if y.size == 0:
        raise ContractViolation("Cannot standardize an empty output list")
    mean = float(np.mean(y))
    scale = float(np.std(y))
    if y.size < 2 or not scale > 0:
        scale = 1.0
    return Standardizer(mean=mean, scale=scale)


def to_original_units(value: ArrayLike, standardizer: Standardizer) -> float | np.ndarray:
    """Map a standardized value back to the objective's units."""
    return standardizer.inverse(value)


def _as_bounds(bounds: ArrayLike) -> np.ndarray:
    arr = np.asarray(bounds, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
        raise ContractViolation(f"Domain bounds must have shape (d, 2), got {arr.shape}")
    if np.any(arr[:, 1] <= arr[:, 0]):
        raise ContractViolation("Every domain dimension needs lo < hi", {"bounds": arr.tolist()})
    return arr


def normalize_points(points: ArrayLike, bounds: ArrayLike) -> np.ndarray:
    """Scale points in original units into [0, 1]^d."""
    b = _as_bounds(bounds)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != b.shape[0]:
        raise ContractViolation(
            f"Point dimension {pts.shape[1]} does not match domain dimension {b.shape[0]}"
        )
    return np.clip((pts - b[:, 0]) / (b[:, 1] - b[:, 0]), 0.0, 1.0)


def denormalize_points(units: ArrayLike, bounds: ArrayLike) -> np.ndarray:
    """Map points in [0, 1]^d back to original units."""
    b = _as_bounds(bounds)
    u = np.atleast_2d(np.asarray(units, dtype=float))
    if u.shape[1] != b.shape[0]:
        raise ContractViolation(
            f"Point dimension {u.shape[1]} does not match domain dimension {b.shape[0]}"
        )
    return np.clip(b[:, 0] + u * (b[:, 1] - b[:, 0]), b[:, 0], b[:, 1])


@dataclass(frozen=True, eq=False)
class ObservationSet:
    """Normalized inputs paired with raw and standardized outputs."""
    X: np.ndarray
    y_raw: np.ndarray
    y_std: np.ndarray
    standardizer: Standardizer
    domain_bounds: np.ndarray

    def __post_init__(self):
        n = self.X.shape[0]
        if self.X.ndim != 2:
            raise ContractViolation(f"Inputs must be a 2-D array, got shape {self.X.shape}")
        if not (len(self.y_raw) == len(self.y_std) == n):
            raise ContractViolation(
                "Inputs and outputs must have equal length",
                {"n_inputs": n, "n_raw": len(self.y_raw), "n_std": len(self.y_std)},
            )
        if self.domain_bounds.shape != (self.X.shape[1], 2):
            raise ContractViolation("Domain bounds do not match input dimension")
        if np.any(self.X < -UNIT_TOLERANCE) or np.any(self.X > 1.0 + UNIT_TOLERANCE):
            raise ContractViolation("Normalized inputs must lie in [0, 1]")

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def dim(self) -> int:
        return int(self.X.shape[1])

    @classmethod
    def from_original(
        cls, points: ArrayLike, y_raw: ArrayLike, bounds: ArrayLike
    ) -> "ObservationSet":
        """Build a standardized set from points and outputs in original units."""
        b = _as_bounds(bounds)
        X = normalize_points(points, b)
        y = np.asarray(y_raw, dtype=float).ravel()
        if X.shape[0] != y.size:
            raise ContractViolation(
                "Inputs and outputs must have equal length",
                {"n_inputs": X.shape[0], "n_outputs": y.size},
            )
        standardizer = fit_standardizer(y)
        return cls(
            X=X,
            y_raw=y,
            y_std=np.asarray(standardizer.forward(y), dtype=float).reshape(-1),
            standardizer=standardizer,
            domain_bounds=b,
        )

    def append(self, x_unit: ArrayLike, y_raw: float) -> "ObservationSet":
        """Return a new set with one more observation, re-standardized."""
        x = np.asarray(x_unit, dtype=float).reshape(1, -1)
        if x.shape[1] != self.dim:
            raise ContractViolation(
                f"Point dimension {x.shape[1]} does not match data dimension {self.dim}"
            )
        grown = ObservationSet(
            X=np.vstack([self.X, np.clip(x, 0.0, 1.0)]),
            y_raw=np.append(self.y_raw, float(y_raw)),
            y_std=np.append(self.y_std, 0.0),
            standardizer=self.standardizer,
            domain_bounds=self.domain_bounds,
        )
        return standardize(grown)


def standardize(data: ObservationSet) -> ObservationSet:
    """Recompute the standardizer and y_std from the raw outputs."""
    standardizer = fit_standardizer(data.y_raw)
    return replace(
        data,
        y_std=np.asarray(standardizer.forward(data.y_raw), dtype=float).reshape(-1),
        standardizer=standardizer,
    )


@dataclass(frozen=True)
class PredictiveMoments:
    """Posterior mean and standard deviation (scalars or aligned arrays)."""
    mean: float | np.ndarray
    std: float | np.ndarray

    def __post_init__(self):
        if np.any(np.asarray(self.std) < 0):
            raise ContractViolation("Predictive standard deviation must be nonnegative")


@dataclass(frozen=True, eq=False)
class GpModel:
    """A GP conditioned on one ObservationSet; immutable after fit."""
    params: KernelParams
    data: ObservationSet
    chol: np.ndarray
    weights: np.ndarray
    targets: np.ndarray


def kernel_eval(a: ArrayLike, b: ArrayLike, params: KernelParams) -> float:
    """k(a, b) = exp(-||a - b||^2 / lengthscale)."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise ContractViolation(
            f"Kernel arguments differ in dimension: {a.size} vs {b.size}"
        )
    return float(np.exp(-np.sum((a - b) ** 2) / params.lengthscale))


def kernel_matrix(A: np.ndarray, B: np.ndarray, lengthscale: float) -> np.ndarray:
    return np.exp(-cdist(A, B, "sqeuclidean") / lengthscale)


def jitter_ladder(start: float, ceiling: float = DEFAULT_JITTER_CEILING) -> list[float]:
    """Jitter values tried in order: start, 10*start, ... up to the ceiling."""
    ladder = [start]
    while ladder[-1] * 10.0 <= ceiling * (1.0 + 1e-9):
        ladder.append(ladder[-1] * 10.0)
    return ladder


def _factorize(
    X: np.ndarray, params: KernelParams, jitter_ceiling: float
) -> tuple[np.ndarray, KernelParams]:
    n = X.shape[0]
    gram = kernel_matrix(X, X, params.lengthscale)
    ladder = jitter_ladder(params.jitter, jitter_ceiling)
    for jitter in ladder:
        try:
            chol = cholesky(gram + jitter * np.eye(n), lower=True, check_finite=False)
        except LinAlgError:
            continue
        if jitter != params.jitter:
            logger.warning(
                f"Cholesky needed jitter escalation {params.jitter:.1e} -> {jitter:.1e} "
                f"(n={n}, lengthscale={params.lengthscale:.4g})"
            )
            params = replace(params, jitter=jitter)
        return chol, params
    raise FitException(
        f"Gram matrix is not positive definite for lengthscale {params.lengthscale:.4g}",
        jitter_ladder=ladder,
        details={"n": n, "lengthscale": params.lengthscale},
    )


def _targets_for(data: ObservationSet, targets: Optional[ArrayLike]) -> np.ndarray:
    if data.n < 1:
        raise ContractViolation("A GP needs at least one observation")
    y = data.y_std if targets is None else np.asarray(targets, dtype=float).ravel()
    if y.size != data.n:
        raise ContractViolation(
            f"Expected {data.n} targets, got {y.size}", {"n": data.n, "n_targets": y.size}
        )
    return y


def fit(
    data: ObservationSet,
    params: KernelParams,
    targets: Optional[ArrayLike] = None,
    jitter_ceiling: float = DEFAULT_JITTER_CEILING,
) -> GpModel:
    """Condition a GP on the data.

    Args:
        data: Observations (inputs already in the unit hypercube)
        params: Kernel hyperparameters
        targets: Values to regress; defaults to ``data.y_std``
        jitter_ceiling: Largest jitter tried before giving up

    Returns:
        Fitted model; ``model.params.jitter`` records the jitter actually used

    Raises:
        FitException: If the Gram matrix cannot be factorized
    """
    y = _targets_for(data, targets)
    chol, params = _factorize(data.X, params, jitter_ceiling)
    weights = cho_solve((chol, True), y - params.prior_mean, check_finite=False)
    return GpModel(params=params, data=data, chol=chol, weights=weights, targets=y)


def predict(model: GpModel, x: ArrayLike) -> PredictiveMoments:
    """Posterior moments at one point (shape (d,)) or a batch (shape (m, d))."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    Xq = np.atleast_2d(x)
    if Xq.shape[1] != model.data.dim:
        raise ContractViolation(
            f"Query dimension {Xq.shape[1]} does not match model dimension {model.data.dim}"
        )
    k_star = kernel_matrix(Xq, model.data.X, model.params.lengthscale)
    mean = model.params.prior_mean + k_star @ model.weights
    v = solve_triangular(model.chol, k_star.T, lower=True, check_finite=False)
    var = np.maximum(0.0, 1.0 - np.sum(v * v, axis=0))
    std = np.sqrt(var)
    if single:
        return PredictiveMoments(mean=float(mean[0]), std=float(std[0]))
    return PredictiveMoments(mean=mean, std=std)


def log_marginal_likelihood(
    data: ObservationSet,
    params: KernelParams,
    targets: Optional[ArrayLike] = None,
    jitter_ceiling: float = DEFAULT_JITTER_CEILING,
) -> float:
    """log p(y | X, params) computed through the Cholesky factor."""
    y = _targets_for(data, targets)
    chol, params = _factorize(data.X, params, jitter_ceiling)
    resid = y - params.prior_mean
    alpha = cho_solve((chol, True), resid, check_finite=False)
    return float(
        -0.5 * resid @ alpha
        - np.sum(np.log(np.diag(chol)))
        - 0.5 * y.size * _LOG_2PI
    )


def default_lengthscale_grid(
    low: float = 0.01, high: float = 10.0, size: int = 25
) -> list[float]:
    return [float(v) for v in np.geomspace(low, high, size)]


def select_lengthscale(
    data: ObservationSet,
    grid: Optional[Sequence[float]] = None,
    targets: Optional[ArrayLike] = None,
    jitter: float = DEFAULT_JITTER,
    prior_mean: float = 0.0,
    jitter_ceiling: float = DEFAULT_JITTER_CEILING,
) -> KernelParams:
    """Pick the grid lengthscale with the highest marginal likelihood.

    Ties go to the smallest lengthscale, then to the earliest grid entry.

    Raises:
        ContractViolation: If the grid is empty or has a nonpositive entry
        SelectionException: If every grid entry fails to factorize
    """
    grid = default_lengthscale_grid() if grid is None else list(grid)
    if not grid:
        raise ContractViolation("Lengthscale grid is empty")
    if any(not (l > 0) for l in grid):
        raise ContractViolation("Lengthscale grid entries must be positive", {"grid": grid})

    best_key = None
    best_params = None
    for idx, lengthscale in enumerate(grid):
        params = KernelParams(lengthscale=lengthscale, jitter=jitter, prior_mean=prior_mean)
        try:
            lml = log_marginal_likelihood(data, params, targets, jitter_ceiling)
        except FitException as e:
            logger.debug(f"Skipping lengthscale {lengthscale:.4g}: {e.message}")
            continue
        if not np.isfinite(lml):
            continue
        key = (lml, -lengthscale, -idx)
        if best_key is None or key > best_key:
            best_key, best_params = key, params

    if best_params is None:
        raise SelectionException(
            "No lengthscale in the grid produced a factorizable Gram matrix",
            {"grid": grid, "n": data.n},
        )
    logger.debug(
        f"Selected lengthscale {best_params.lengthscale:.4g} "
        f"(log marginal likelihood {best_key[0]:.6g}, n={data.n})"
    )
    return best_params
