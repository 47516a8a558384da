"""Bayesian optimization with a known optimum output.

Runs start with a Latin-hypercube design, then warm-start with a vanilla
GP and EI until the upper confidence bound can reach f*, then switch to
the configured surrogate and acquisition. A run ends when the budget is
spent or an observation reaches the declared f*.
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.stats import qmc

from src.acquisitions import (
    AcquisitionContext,
    AcquisitionKind,
    Direction,
    acq_ucb,
    beta_schedule,
    evaluate_acquisition,
    normalize_acquisition,
    optimize_acquisition,
)
from src.core.config import settings
from src.core.exceptions import (
    ConfigurationException,
    ContractViolation,
    KnownOptException,
    KnownOptimumViolated,
    ObjectiveException,
)
from src.core.logging import get_logger
from src.report.traces import RunTrace, TraceRecord
from src.surrogates.gp import (
    GpModel,
    ObservationSet,
    PredictiveMoments,
    denormalize_points,
    fit,
    normalize_points,
    predict,
    select_lengthscale,
)
from src.surrogates.transformed_gp import (
    PriorMeanMode,
    SurrogateKind,
    TgpModel,
    describe,
    fit_tgp,
    predict_tgp,
    prior_mean_for,
    to_g_space,
)

logger = get_logger(__name__)

Objective = Callable[[np.ndarray], float]


class Phase(str, Enum):
    INIT = "init"
    WARMSTART = "warmstart"
    INFORMED = "informed"


@dataclass
class BoConfig:
    """Configuration of one optimization run."""
    objective: Objective
    domain_bounds: Sequence[Sequence[float]]
    f_star_declared: float
    acquisition: AcquisitionKind | str = AcquisitionKind.ERM
    surrogate: SurrogateKind | str = SurrogateKind.TGP
    T: int = 40
    n_init: Optional[int] = None
    seed: int = 0
    delta: float = field(default_factory=lambda: settings.beta_delta)
    m0_mode: PriorMeanMode | str = PriorMeanMode.SQRT2FSTAR
    stop_epsilon: Optional[float] = None
    f_star_true: Optional[float] = None
    warm_start: Optional[bool] = None
    lengthscale_grid: Optional[list[float]] = None
    jitter: float = field(default_factory=lambda: settings.gp_jitter)
    jitter_ceiling: float = field(default_factory=lambda: settings.jitter_ceiling)
    n_samples: Optional[int] = None
    n_refine: int = field(default_factory=lambda: settings.acq_refine_starts)
    run_id: int = 0

    def __post_init__(self):
        self.acquisition = normalize_acquisition(self.acquisition)
        try:
            if not isinstance(self.surrogate, SurrogateKind):
                self.surrogate = SurrogateKind(str(self.surrogate).strip().lower())
            self.m0_mode = PriorMeanMode(self.m0_mode)
        except ValueError as e:
            raise ConfigurationException(str(e))
        bounds = np.asarray(self.domain_bounds, dtype=float)
        if bounds.ndim != 2 or bounds.shape[1] != 2 or np.any(bounds[:, 1] <= bounds[:, 0]):
            raise ConfigurationException("domain_bounds must be a (d, 2) array with lo < hi")
        self.domain_bounds = bounds
        if self.T < 0:
            raise ConfigurationException(f"T must be >= 0, got {self.T}")
        if self.n_init is None:
            self.n_init = max(2, 3 * self.dim)
        if self.n_init < 2:
            raise ConfigurationException(f"n_init must be >= 2, got {self.n_init}")
        if not math.isfinite(self.f_star_declared):
            raise ConfigurationException("f_star_declared must be finite")
        if self.stop_epsilon is None:
            self.stop_epsilon = 1e-8 * max(1.0, abs(self.f_star_declared))
        if self.stop_epsilon < 0:
            raise ConfigurationException(f"stop_epsilon must be >= 0, got {self.stop_epsilon}")
        if self.f_star_true is None:
            self.f_star_true = self.f_star_declared
        if self.warm_start is None:
            self.warm_start = self.acquisition.uses_f_star
        if self.lengthscale_grid is None:
            self.lengthscale_grid = settings.lengthscale_grid
        if self.n_samples is None:
            self.n_samples = settings.acq_samples_per_dim * self.dim
        if not 0 < self.delta < 1:
            raise ConfigurationException(f"delta must lie in (0, 1), got {self.delta}")

    @property
    def dim(self) -> int:
        return int(np.asarray(self.domain_bounds).shape[0])

    @property
    def method(self) -> str:
        return f"{self.acquisition.value}-{self.surrogate.value}"


@dataclass
class RunState:
    """Mutable-by-replacement state of one run between steps."""
    data: ObservationSet
    phase: Phase
    t: int
    rng: np.random.Generator
    records: list[TraceRecord] = field(default_factory=list)
    gp: Optional[GpModel] = None
    tgp: Optional[TgpModel] = None
    switched_at: Optional[int] = None
    g_transforms: int = 0


def initial_design(bounds: Sequence[Sequence[float]], n_init: int, seed: int) -> np.ndarray:
    """Latin-hypercube design in original units, one point per stratum per axis."""
    if n_init < 2:
        raise ContractViolation(f"n_init must be >= 2, got {n_init}")
    b = np.asarray(bounds, dtype=float)
    sampler = qmc.LatinHypercube(d=b.shape[0], seed=np.random.default_rng(seed))
    return qmc.scale(sampler.random(n_init), b[:, 0], b[:, 1])


def reach_check(
    gp: GpModel,
    f_star_std: float,
    beta: float,
    n_samples: Optional[int] = None,
    n_refine: int = 5,
    seed: int = 0,
) -> bool:
    """True iff max_x mu(x) + sqrt(beta) sigma(x) >= f* on the vanilla GP."""
    if f_star_std <= float(np.max(gp.targets)):
        return True
    ctx = AcquisitionContext(beta=beta)
    _, best = optimize_acquisition(
        lambda U: acq_ucb(predict(gp, U), ctx),
        Direction.MAXIMIZE,
        gp.data.dim,
        n_samples=n_samples,
        n_refine=n_refine,
        seed=seed,
        extra_candidates=gp.data.X,
    )
    return best >= f_star_std


def _reached(config: BoConfig, data: ObservationSet) -> bool:
    return config.f_star_declared - float(np.max(data.y_raw)) <= config.stop_epsilon


def _evaluate_objective(config: BoConfig, x: np.ndarray, t: int) -> float:
    try:
        y = float(config.objective(x))
    except KnownOptException:
        raise
    except Exception as e:
        raise ObjectiveException(
            f"Objective failed at evaluation {t} of run {config.run_id}: {e}",
            {"run_id": config.run_id, "evaluation": t, "point": x.tolist()},
        ) from e
    if not math.isfinite(y):
        raise ObjectiveException(
            f"Objective returned a non-finite value at evaluation {t} of run {config.run_id}",
            {"run_id": config.run_id, "evaluation": t, "point": x.tolist(), "value": y},
        )
    return y


def _record(config: BoConfig, data: ObservationSet, x: np.ndarray, y: float,
            phase: Phase, acq_value: float = float("nan")) -> TraceRecord:
    best = float(np.max(data.y_raw))
    return TraceRecord(
        t=data.n,
        x=tuple(float(v) for v in x),
        y_raw=y,
        best_so_far=best,
        simple_regret=config.f_star_true - best,
        phase=phase.value,
        acq_value=acq_value,
    )


def _fit_models(state: RunState, config: BoConfig) -> RunState:
    """Refit the surrogates the current phase selects with."""
    data = state.data
    gp = tgp = None
    g_transforms = state.g_transforms
    if state.phase is not Phase.INFORMED or config.surrogate is SurrogateKind.GP:
        params = select_lengthscale(
            data, config.lengthscale_grid, jitter=config.jitter,
            jitter_ceiling=config.jitter_ceiling,
        )
        gp = fit(data, params, jitter_ceiling=config.jitter_ceiling)
    if state.phase is Phase.INFORMED and config.surrogate is SurrogateKind.TGP:
        f_star_std = float(data.standardizer.forward(config.f_star_declared))
        g_values = to_g_space(data.y_std, f_star_std)
        params = select_lengthscale(
            data, config.lengthscale_grid, targets=g_values, jitter=config.jitter,
            prior_mean=prior_mean_for(f_star_std, config.m0_mode),
            jitter_ceiling=config.jitter_ceiling,
        )
        tgp = fit_tgp(data, config.f_star_declared, params, config.m0_mode, config.jitter_ceiling)
        g_transforms += 1
        logger.debug(f"TGP refit: {describe(tgp)}")
    return replace(state, gp=gp, tgp=tgp, g_transforms=g_transforms)


def _moments_fn(state: RunState, config: BoConfig) -> tuple[AcquisitionKind, Callable[[np.ndarray], PredictiveMoments]]:
    if state.phase is Phase.WARMSTART:
        return AcquisitionKind.EI, lambda U: predict(state.gp, U)
    if config.surrogate is SurrogateKind.TGP:
        return config.acquisition, lambda U: predict_tgp(state.tgp, U).moments
    return config.acquisition, lambda U: predict(state.gp, U)


def step(state: RunState, config: BoConfig) -> RunState:
    """One select -> evaluate -> augment iteration.

    Raises:
        ObjectiveException: If the objective fails
        KnownOptimumViolated: If an observation exceeds the declared f*
    """
    t = state.t
    context = {"run_id": config.run_id, "method": config.method, "iteration": t}
    data = state.data
    f_star_std = float(data.standardizer.forward(config.f_star_declared))
    beta = beta_schedule(t, f_star_std, config.delta)
    reach_seed, select_seed = (int(s) for s in state.rng.integers(0, 2**31 - 1, size=2))

    try:
        if state.phase is Phase.WARMSTART and reach_check(
            state.gp, f_star_std, beta, config.n_samples, config.n_refine, reach_seed
        ):
            logger.info(
                f"Run {config.run_id}: UCB reaches f* at iteration {t}; switching to {config.method}",
                extra={"context": context},
            )
            state = _fit_models(replace(state, phase=Phase.INFORMED, switched_at=t), config)
    except KnownOptimumViolated as e:
        e.details.update(context)
        logger.error(f"Run {config.run_id} aborted, declared f* is misspecified: {e.message}",
                     extra={"context": context})
        raise

    kind, moments = _moments_fn(state, config)
    ctx = AcquisitionContext(
        f_star_std=f_star_std,
        incumbent=float(np.max(data.y_std)),
        beta=beta,
        delta=config.delta,
        iteration=t,
    )
    x_unit, acq_value = optimize_acquisition(
        lambda U: evaluate_acquisition(kind, moments(U), ctx),
        kind.direction,
        config.dim,
        n_samples=config.n_samples,
        n_refine=config.n_refine,
        seed=select_seed,
    )
    x = denormalize_points(x_unit, config.domain_bounds)[0]
    y = _evaluate_objective(config, x, data.n + 1)
    data = data.append(x_unit, y)
    record = _record(config, data, x, y, state.phase, float(acq_value))
    logger.debug(
        f"Run {config.run_id} iteration {t}: {kind.value}={acq_value:.6g}, y={y:.6g}, "
        f"regret={record.simple_regret:.6g}",
        extra={"context": context},
    )

    state = replace(state, data=data, t=t + 1, records=[*state.records, record])
    if _reached(config, data):
        return state
    try:
        return _fit_models(state, config)
    except KnownOptimumViolated as e:
        e.details.update(context)
        logger.error(f"Run {config.run_id} aborted, declared f* is misspecified: {e.message}",
                     extra={"context": context})
        raise


def run(config: BoConfig) -> RunTrace:
    """Run one seeded optimization and return its trace."""
    context = {"run_id": config.run_id, "method": config.method, "seed": config.seed}
    logger.info(
        f"Run {config.run_id} ({config.method}, seed {config.seed}, f*={config.f_star_declared:g}) started",
        extra={"context": context},
    )
    bounds = config.domain_bounds
    data: Optional[ObservationSet] = None
    records: list[TraceRecord] = []
    for x in initial_design(bounds, config.n_init, config.seed):
        y = _evaluate_objective(config, x, len(records) + 1)
        if data is None:
            data = ObservationSet.from_original(x[None, :], [y], bounds)
        else:
            data = data.append(normalize_points(x, bounds)[0], y)
        records.append(_record(config, data, x, y, Phase.INIT))
        if _reached(config, data):
            break

    state = RunState(
        data=data,
        phase=Phase.WARMSTART if config.warm_start else Phase.INFORMED,
        t=1,
        rng=np.random.default_rng(config.seed),
        records=records,
    )
    if not _reached(config, state.data):
        state = _fit_models(state, config)
        while state.t <= config.T and not _reached(config, state.data):
            state = step(state, config)

    trace = RunTrace(
        run_id=config.run_id,
        seed=config.seed,
        method=config.method,
        f_star_declared=config.f_star_declared,
        f_star_true=config.f_star_true,
        records=state.records,
        switched_at=state.switched_at,
        g_transforms=state.g_transforms,
        stop_reason="reached_f_star" if _reached(config, state.data) else "budget",
    )
    logger.info(
        f"Run {config.run_id} finished after {len(trace.records)} evaluations "
        f"({trace.stop_reason}), final regret {trace.final_regret:.6g}",
        extra={"context": context},
    )
    return trace


__all__ = [
    "BoConfig",
    "Phase",
    "RunState",
    "SurrogateKind",
    "initial_design",
    "reach_check",
    "run",
    "step",
]
