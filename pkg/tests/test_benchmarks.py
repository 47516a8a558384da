import math

import numpy as np
import pytest

from src.benchmarks import (
    BenchmarkProblem,
    alpine1,
    branin,
    get_problem,
    gsobol,
    hartmann3,
    hartmann6,
    problem_names,
    register_problem,
    simple_regret,
)
from src.benchmarks.branin import branin_min_form
from src.benchmarks.hartmann import _A3, _P3, hartmann_min_form
from src.core.exceptions import ConfigurationException, ContractViolation, UsageException


def _random_points(problem, n, seed):
    rng = np.random.default_rng(seed)
    b = problem.bounds_array
    return b[:, 0] + rng.random((n, problem.dim)) * (b[:, 1] - b[:, 0])


@pytest.mark.parametrize("point", [(math.pi, 2.275), (9.42478, 2.475), (-math.pi, 12.275)])
def test_branin_minimizers(point):
    assert branin()(point) == pytest.approx(-0.397887, abs=1e-4)


def test_branin_grid_oracle():
    problem = branin()
    best = max(
        problem((x1, x2))
        for x1 in np.linspace(-5, 10, 200)
        for x2 in np.linspace(0, 15, 200)
    )
    assert problem.f_true_star - best <= 1e-3


def test_branin_is_negated_textbook_form():
    problem = branin()
    for x in _random_points(problem, 20, 0):
        assert problem(x) == -branin_min_form(x)


def test_hartmann3_optimum():
    problem = hartmann3()
    assert problem.f_true_star == pytest.approx(3.86, abs=5e-3)
    assert problem(problem.x_star_known) == pytest.approx(3.86278, abs=1e-4)


def test_hartmann3_is_negated_textbook_form():
    problem = hartmann3()
    for x in _random_points(problem, 20, 1):
        assert problem(x) == -hartmann_min_form(x, _A3, _P3)


def test_hartmann6_at_published_argmax():
    problem = hartmann6()
    assert problem(problem.x_star_known) == pytest.approx(3.32237, abs=1e-4)


@pytest.mark.parametrize("factory", [branin, hartmann3, hartmann6, lambda: alpine1(5), lambda: gsobol(5)])
def test_ceiling_property(factory):
    problem = factory()
    values = [problem(x) for x in _random_points(problem, 20_000, 2)]
    assert max(values) <= problem.f_true_star + 1e-9


def test_alpine1_examples():
    assert alpine1(5)(np.zeros(5)) == 0.0
    assert alpine1(1)([math.pi]) == pytest.approx(-0.1 * math.pi, abs=1e-12)
    problem = alpine1(3)
    assert all(problem(x) <= 0 for x in _random_points(problem, 1000, 3))


@pytest.mark.parametrize("d", [1, 3, 5])
def test_gsobol_examples(d):
    problem = gsobol(d)
    assert problem(np.full(d, 0.5)) == 0.0
    assert problem(np.zeros(d)) == pytest.approx(-(2.0 ** d))


@pytest.mark.parametrize("factory", [alpine1, gsobol])
def test_family_rejects_zero_dimension(factory):
    with pytest.raises(ConfigurationException):
        factory(0)


def test_point_dimension_is_checked():
    with pytest.raises(ContractViolation):
        branin()([1.0, 2.0, 3.0])


def test_simple_regret_examples():
    assert simple_regret([4.0], 4.0) == [0.0]
    assert simple_regret([-3.0, -1.0, -2.0], 0.0) == [3.0, 1.0, 1.0]


def test_simple_regret_matches_brute_force():
    rng = np.random.default_rng(4)
    y = rng.normal(size=50)
    expected = [1.5 - max(y[: t + 1]) for t in range(len(y))]
    assert simple_regret(y, 1.5) == pytest.approx(expected, abs=0)
    assert all(a >= b for a, b in zip(expected, expected[1:]))


def test_simple_regret_empty():
    with pytest.raises(ContractViolation):
        simple_regret([], 0.0)


@pytest.mark.parametrize("name, dim", [
    ("branin", 2), ("hartmann3", 3), ("hartmann6", 6),
    ("alpine1-5", 5), ("gsobol-5", 5), ("gsobol-10", 10),
    ("gsobol-7", 7), ("Alpine1-2", 2),
])
def test_registry_lookup(name, dim):
    assert get_problem(name).dim == dim


def test_registry_unknown_name_lists_problems():
    with pytest.raises(UsageException) as exc:
        get_problem("rosenbrock")
    assert "branin" in exc.value.details["available"]


def test_plugin_problem():
    problem = get_problem("src.benchmarks.branin:branin")
    assert problem.name == "branin"


def test_plugin_missing_module():
    with pytest.raises(UsageException):
        get_problem("no_such_module_xyz:factory")


def test_register_problem():
    def factory():
        return BenchmarkProblem(
            name="parabola",
            dim=1,
            bounds=((0.0, 1.0),),
            evaluate=lambda x: -float((x[0] - 0.6) ** 2),
            f_true_star=0.0,
        )

    register_problem("parabola-test", factory)
    assert "parabola-test" in problem_names()
    assert get_problem("parabola-test")([0.6]) == 0.0
