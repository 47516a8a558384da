import math

import pytest

from src.acquisitions import beta_schedule
from src.acquisitions.schedule import BETA_FLOOR
from src.core.exceptions import ContractViolation


def test_first_iteration_value():
    expected = 2.0 + 300.0 * math.log(10.0) ** 3
    assert beta_schedule(1, 1.0, 0.1) == pytest.approx(expected, rel=1e-12)
    assert beta_schedule(1, 1.0, 0.1) == pytest.approx(3664.4, abs=0.1)


def test_floor_for_very_negative_optimum():
    assert beta_schedule(1, -1e6, 0.1) == BETA_FLOOR


def test_nondecreasing_in_t():
    values = [beta_schedule(t, 0.3, 0.1) for t in range(1, 200)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("t, delta", [(0, 0.1), (1, 0.0), (1, 1.0)])
def test_invalid_inputs(t, delta):
    with pytest.raises(ContractViolation):
        beta_schedule(t, 1.0, delta)
