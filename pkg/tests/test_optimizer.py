import numpy as np
import pytest

from src.acquisitions import Direction, optimize_acquisition
from src.acquisitions.optimizer import _pattern_search
from src.core.exceptions import ContractViolation


def _neg_quadratic(U):
    return -np.sum((U - 0.3) ** 2, axis=1)


def test_finds_quadratic_maximum():
    x, value = optimize_acquisition(_neg_quadratic, Direction.MAXIMIZE, 2, n_samples=512, seed=0)
    assert np.max(np.abs(x - 0.3)) <= 1e-2
    assert value == pytest.approx(float(_neg_quadratic(x[None, :])[0]))


def test_finds_quadratic_minimum():
    x, value = optimize_acquisition(
        lambda U: -_neg_quadratic(U), "minimize", 3, n_samples=256, seed=1
    )
    assert np.max(np.abs(x - 0.3)) <= 1e-2
    assert value >= 0.0


def test_constant_function_returns_a_sampled_point():
    x, value = optimize_acquisition(lambda U: np.ones(len(U)), Direction.MAXIMIZE, 2, n_samples=64, seed=5)
    assert value == 1.0
    pool = np.random.default_rng(5).random((64, 2))
    assert np.any(np.all(pool == x, axis=1))


def test_same_seed_is_bit_identical():
    a = optimize_acquisition(_neg_quadratic, Direction.MAXIMIZE, 2, n_samples=100, seed=11)
    b = optimize_acquisition(_neg_quadratic, Direction.MAXIMIZE, 2, n_samples=100, seed=11)
    assert np.array_equal(a[0], b[0])
    assert a[1] == b[1]


def test_never_worse_than_best_sample():
    def bumpy(U):
        return np.sin(13 * U[:, 0]) * np.cos(7 * U[:, 1])

    x, value = optimize_acquisition(bumpy, Direction.MAXIMIZE, 2, n_samples=200, seed=3)
    pool = np.random.default_rng(3).random((200, 2))
    assert value >= np.max(bumpy(pool))


def test_extra_candidates_join_the_pool():
    def peak(U):
        return -np.sum((U - 0.9) ** 2, axis=1)

    x, value = optimize_acquisition(
        peak, Direction.MAXIMIZE, 2, n_samples=1, n_refine=1, seed=0,
        extra_candidates=np.array([[0.9, 0.9]]),
    )
    assert value == 0.0
    assert np.array_equal(x, [0.9, 0.9])


def test_nan_scores_are_never_selected():
    def partly_nan(U):
        values = -np.sum((U - 0.5) ** 2, axis=1)
        values[U[:, 0] < 0.5] = np.nan
        return values

    x, value = optimize_acquisition(partly_nan, Direction.MAXIMIZE, 2, n_samples=128, seed=2)
    assert np.isfinite(value)


@pytest.mark.parametrize("kwargs", [{"dim": 0}, {"dim": 2, "n_samples": 0}, {"dim": 2, "n_refine": 0}])
def test_invalid_budget(kwargs):
    with pytest.raises(ContractViolation):
        optimize_acquisition(_neg_quadratic, Direction.MAXIMIZE, **kwargs)


def test_evaluate_must_return_one_value_per_point():
    with pytest.raises(ContractViolation):
        optimize_acquisition(lambda U: np.zeros(1), Direction.MAXIMIZE, 2, n_samples=10)


@pytest.mark.parametrize("target", [0.937, 0.999])
def test_refinement_reaches_min_step_in_ten_dimensions(target):
    def bowl(U):
        return -np.sum((U - target) ** 2, axis=1)

    x, score = _pattern_search(bowl, 1.0, np.zeros(10), float(bowl(np.zeros((1, 10)))[0]))
    assert np.max(np.abs(x - target)) < 1e-3
    assert score == pytest.approx(float(bowl(x[None, :])[0]))


def test_ten_dimensional_maximum_from_random_starts():
    def bowl(U):
        return -np.sum((U - 0.937) ** 2, axis=1)

    x, _ = optimize_acquisition(bowl, Direction.MAXIMIZE, 10, n_samples=200, n_refine=2, seed=4)
    assert np.max(np.abs(x - 0.937)) < 1e-3
