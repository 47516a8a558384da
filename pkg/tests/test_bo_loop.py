import math
from functools import lru_cache

import numpy as np
import pytest

from src.benchmarks import branin, get_problem
from src.core.exceptions import ConfigurationException, ContractViolation, ObjectiveException
from src.services.bo_loop import BoConfig, Phase, SurrogateKind, initial_design, reach_check, run
from src.surrogates.gp import KernelParams, ObservationSet, fit

UNIT_1D = [[0.0, 1.0]]
SMALL = {"n_samples": 96, "n_refine": 3}


def _parabola(x):
    return -float((x[0] - 0.6) ** 2)


def _branin_config(**overrides):
    problem = branin()
    kwargs = dict(
        objective=problem,
        domain_bounds=problem.bounds_array,
        f_star_declared=problem.f_true_star,
        T=6,
        seed=3,
        **SMALL,
    )
    kwargs.update(overrides)
    return BoConfig(**kwargs)


def test_initial_design_is_latin():
    n = 8
    points = initial_design([[-5.0, 10.0], [0.0, 15.0]], n, seed=11)
    assert points.shape == (n, 2)
    for axis, (lo, hi) in enumerate([(-5.0, 10.0), (0.0, 15.0)]):
        strata = np.floor((points[:, axis] - lo) / (hi - lo) * n).astype(int)
        assert sorted(strata) == list(range(n))


def test_initial_design_is_seeded():
    a = initial_design([[0.0, 1.0]] * 3, 9, seed=4)
    b = initial_design([[0.0, 1.0]] * 3, 9, seed=4)
    c = initial_design([[0.0, 1.0]] * 3, 9, seed=5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_initial_design_rejects_single_point():
    with pytest.raises(ContractViolation):
        initial_design(UNIT_1D, 1, seed=0)


def _single_point_gp():
    data = ObservationSet.from_original([[0.5]], [0.0], UNIT_1D)
    return fit(data, KernelParams(lengthscale=0.1))


def test_reach_check_fast_path_when_optimum_observed():
    gp = _single_point_gp()
    assert reach_check(gp, f_star_std=0.0, beta=1e-6, n_samples=32)


def test_reach_check_small_beta_cannot_reach():
    assert not reach_check(_single_point_gp(), f_star_std=10.0, beta=1.0, n_samples=64)


def test_reach_check_large_beta_reaches():
    assert reach_check(_single_point_gp(), f_star_std=10.0, beta=1e6, n_samples=64)


def test_constant_objective_at_optimum_stops_after_first_evaluation():
    config = BoConfig(
        objective=lambda x: 5.0, domain_bounds=UNIT_1D, f_star_declared=5.0, T=10, **SMALL
    )
    trace = run(config)
    assert len(trace.records) == 1
    assert trace.stop_reason == "reached_f_star"
    assert trace.final_regret == 0.0


def test_zero_budget_keeps_only_the_design():
    trace = run(_branin_config(T=0, n_init=5))
    assert len(trace.records) == 5
    assert {r.phase for r in trace.records} == {Phase.INIT.value}
    assert trace.stop_reason == "budget"


def test_runs_are_deterministic():
    a = run(_branin_config())
    b = run(_branin_config())
    assert [r.x for r in a.records] == [r.x for r in b.records]
    assert a.y_values == b.y_values


def test_trace_invariants():
    config = _branin_config(T=8)
    trace = run(config)
    assert len(trace.records) <= config.n_init + config.T

    best = [r.best_so_far for r in trace.records]
    regret = [r.simple_regret for r in trace.records]
    assert all(a <= b for a, b in zip(best, best[1:]))
    assert all(a >= b for a, b in zip(regret, regret[1:]))
    assert best == list(np.maximum.accumulate(trace.y_values))
    assert [r.t for r in trace.records] == list(range(1, len(trace.records) + 1))

    bounds = config.domain_bounds
    for record in trace.records:
        assert np.all(np.asarray(record.x) >= bounds[:, 0])
        assert np.all(np.asarray(record.x) <= bounds[:, 1])

    order = [Phase.INIT.value, Phase.WARMSTART.value, Phase.INFORMED.value]
    ranks = [order.index(r.phase) for r in trace.records]
    assert ranks == sorted(ranks)
    if trace.switched_at is not None:
        first_informed = next(r for r in trace.records if r.phase == Phase.INFORMED.value)
        assert first_informed.t == config.n_init + trace.switched_at


def test_vanilla_method_never_transforms():
    config = _branin_config(acquisition="ei", surrogate="gp")
    assert config.warm_start is False
    trace = run(config)
    assert trace.g_transforms == 0
    assert trace.switched_at is None
    assert Phase.WARMSTART.value not in {r.phase for r in trace.records}


def test_f_star_methods_warm_start_by_default():
    config = _branin_config(acquisition="erm", surrogate=SurrogateKind.TGP)
    assert config.warm_start is True
    assert config.method == "erm-tgp"


def test_raising_objective():
    def broken(x):
        raise RuntimeError("simulator crashed")

    with pytest.raises(ObjectiveException) as exc:
        run(BoConfig(objective=broken, domain_bounds=UNIT_1D, f_star_declared=0.0, **SMALL))
    assert exc.value.details["evaluation"] == 1


def test_non_finite_objective():
    with pytest.raises(ObjectiveException):
        run(BoConfig(objective=lambda x: math.nan, domain_bounds=UNIT_1D, f_star_declared=0.0, **SMALL))


def test_under_specified_optimum_stops_early():
    problem = branin()
    trace = run(_branin_config(f_star_declared=-400.0, f_star_true=problem.f_true_star))
    assert trace.stop_reason == "reached_f_star"
    assert len(trace.records) == 1
    assert trace.final_regret == pytest.approx(problem.f_true_star - trace.y_values[0])


@pytest.mark.parametrize("overrides", [
    {"T": -1},
    {"n_init": 1},
    {"delta": 1.0},
    {"f_star_declared": math.inf},
    {"acquisition": "thompson"},
    {"surrogate": "forest"},
    {"m0_mode": "mean"},
    {"domain_bounds": [[1.0, 0.0], [0.0, 15.0]]},
    {"stop_epsilon": -1.0},
])
def test_config_validation(overrides):
    with pytest.raises(ConfigurationException):
        _branin_config(**overrides)


def test_config_defaults():
    config = _branin_config()
    assert config.n_init == 6
    assert config.stop_epsilon == pytest.approx(1e-8)
    assert config.f_star_true == config.f_star_declared
    assert BoConfig(objective=_parabola, domain_bounds=UNIT_1D, f_star_declared=0.0).n_samples == 200


@pytest.mark.slow
def test_parabola_converges_for_most_seeds():
    hits = 0
    for seed in range(20):
        trace = run(BoConfig(
            objective=_parabola, domain_bounds=UNIT_1D, f_star_declared=0.0, T=15, seed=seed,
        ))
        hits += trace.final_regret <= 1e-2
    assert hits >= 18


@pytest.mark.slow
def test_branin_median_regret():
    regrets = [run(_branin_config(T=40, seed=s, n_samples=400)).final_regret for s in range(10)]
    assert float(np.median(regrets)) <= 0.5


@lru_cache(maxsize=None)
def _median_final_regret(problem_name, acquisition, surrogate, f_star=None, T=60, seeds=10):
    problem = get_problem(problem_name)
    regrets = [
        run(BoConfig(
            objective=problem,
            domain_bounds=problem.bounds_array,
            f_star_declared=problem.f_true_star if f_star is None else f_star,
            f_star_true=problem.f_true_star,
            acquisition=acquisition,
            surrogate=surrogate,
            T=T,
            seed=seed,
            run_id=seed,
        )).final_regret
        for seed in range(seeds)
    ]
    return float(np.median(regrets))


@pytest.mark.slow
@pytest.mark.parametrize("problem_name", ["gsobol-5", "alpine1-5"])
def test_erm_tgp_beats_ei_gp(problem_name):
    assert _median_final_regret(problem_name, "erm", "tgp") <= _median_final_regret(problem_name, "ei", "gp")


@pytest.mark.slow
def test_ei_explores_less_on_plain_gp_than_on_tgp():
    assert _median_final_regret("gsobol-5", "ei", "gp") <= _median_final_regret("gsobol-5", "ei", "tgp")


@pytest.mark.slow
def test_under_specified_optimum_hurts_on_hartmann3():
    true_regret = _median_final_regret("hartmann3", "erm", "tgp", T=40)
    assert _median_final_regret("hartmann3", "erm", "tgp", f_star=2.0, T=40) > true_regret


@pytest.mark.slow
@pytest.mark.xfail(
    strict=False,
    reason="At T=40 both the true and the over-specified optimum reach regret near 1e-2 on "
           "hartmann3 and their medians differ by less than seed noise",
)
def test_over_specified_optimum_is_no_better_on_hartmann3():
    true_regret = _median_final_regret("hartmann3", "erm", "tgp", T=40)
    assert true_regret <= _median_final_regret("hartmann3", "erm", "tgp", f_star=6.0, T=40)
