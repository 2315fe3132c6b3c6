import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trapsweep import InvalidInputError, PotentialParams, SweepSchedule, evaluate, x0_at


def test_x0_zero_is_exactly_harmonic():
    params = PotentialParams(6.4, 0.5, 0.0)
    x = np.linspace(-10, 10, 401)
    assert np.array_equal(evaluate(params, x), 0.5 * x**2)


def test_u0_zero_is_exactly_harmonic():
    params = PotentialParams(0.0, 0.5, -3.0)
    x = np.linspace(-10, 10, 401)
    assert np.array_equal(evaluate(params, x), 0.5 * x**2)


def test_well_bottom_value():
    # independent scalar arithmetic for the well bottom at x = x0 = -5
    expected = 12.5 + 6.4 * math.atan(-5.0)
    value = evaluate(PotentialParams(6.4, 0.5, -5.0), -5.0)
    assert value == pytest.approx(expected, abs=1e-12)
    assert value == pytest.approx(3.7102350915518976, abs=1e-12)


def test_distant_well_does_not_touch_the_centre():
    value = evaluate(PotentialParams(6.4, 0.5, -5.0), 0.0)
    assert abs(value) < 1e-20


def test_centre_perturbation_bound():
    for x0 in (-5.0, -4.0, -3.0, -2.0):
        params = PotentialParams(6.4, 0.5, x0)
        bound = 6.4 * (math.pi / 2) * math.exp(-(x0**2) / (2 * 0.5**2))
        assert abs(evaluate(params, 0.0)) < bound


def test_well_depth_fades_towards_centre():
    depths = [abs(PotentialParams(6.4, 0.5, x0).well_amplitude)
              for x0 in np.linspace(-5.0, -0.01, 40)]
    assert all(a > b for a, b in zip(depths, depths[1:]))


def test_attractive_for_negative_x0():
    params = PotentialParams(6.4, 0.5, -3.0)
    assert evaluate(params, -3.0) < 0.5 * 3.0**2


def test_invalid_inputs_rejected():
    with pytest.raises(InvalidInputError):
        PotentialParams(6.4, 0.0, -5.0)
    with pytest.raises(InvalidInputError):
        PotentialParams(6.4, -0.5, -5.0)
    with pytest.raises(InvalidInputError):
        PotentialParams(math.inf, 0.5, -5.0)
    with pytest.raises(InvalidInputError):
        evaluate(PotentialParams(6.4, 0.5, -5.0), math.nan)


def test_schedule_endpoints_and_midpoint():
    schedule = SweepSchedule(-5.0, 0.0, 0.1)
    assert schedule.duration == pytest.approx(50.0)
    assert x0_at(schedule, 0.0) == pytest.approx(-5.0)
    assert x0_at(schedule, 50.0) == pytest.approx(0.0)
    assert x0_at(schedule, 25.0) == pytest.approx(-2.5)


def test_schedule_clamps_past_the_end():
    schedule = SweepSchedule(-5.0, 0.0, 0.1)
    assert x0_at(schedule, 120.0) == pytest.approx(0.0)


def test_schedule_rejects_negative_time_and_velocity():
    schedule = SweepSchedule(-5.0, 0.0, 0.1)
    with pytest.raises(InvalidInputError):
        x0_at(schedule, -1e-9)
    with pytest.raises(InvalidInputError):
        SweepSchedule(-5.0, 0.0, 0.0)
    with pytest.raises(InvalidInputError):
        SweepSchedule(-5.0, 0.0, -0.1)


def test_reverse_sweep_moves_down():
    schedule = SweepSchedule(0.0, -5.0, 0.5)
    assert x0_at(schedule, 0.0) == pytest.approx(0.0)
    assert x0_at(schedule, 10.0) == pytest.approx(-5.0)
    assert x0_at(schedule, 5.0) == pytest.approx(-2.5)


@given(
    t1=st.floats(min_value=0.0, max_value=200.0),
    t2=st.floats(min_value=0.0, max_value=200.0),
)
def test_schedule_is_monotone_and_bounded(t1, t2):
    schedule = SweepSchedule(-5.0, 0.0, 0.1)
    lo, hi = sorted((t1, t2))
    a, b = x0_at(schedule, lo), x0_at(schedule, hi)
    assert a <= b + 1e-12
    assert -5.0 - 1e-12 <= a <= 1e-12
