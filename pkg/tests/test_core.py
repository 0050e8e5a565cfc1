import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pegame import (GameParams, GameState, StrategyCommand, is_captured, step_evader,
                    step_pursuer, wrap_angle)
from pegame.errors import InfeasibleStateError, InvalidParamsError, InvalidStateError

finite = st.floats(-50, 50, allow_nan=False)
angles = st.floats(-20, 20, allow_nan=False)


def test_step_pursuer_from_rest_is_semi_implicit():
    s = GameState(0, 0, 0, 0, 3, 3)
    out = step_pursuer(s, StrategyCommand(1.0, 0.0, 0.0, 0.0), 1.0, GameParams(1, 10, 0.5))
    # velocity first, then position with the new velocity
    assert (out.v_Px, out.x_P) == (1.0, 1.0)
    assert (out.x_E, out.y_E) == (3.0, 3.0)


def test_coasting_at_cap_keeps_speed():
    s = GameState(0, 0, 0, 10, 0, 0)
    out = step_pursuer(s, StrategyCommand(0.0, 1.3, 0.0, 0.0), 0.1, GameParams(1, 10, 0.5))
    assert out.pursuer_speed == 10.0


def test_projection_clamps_to_cap():
    s = GameState(0, 0, 0, 9.95, 0, 0)
    out = step_pursuer(s, StrategyCommand(1.0, math.pi / 2, 0, 0), 0.1, GameParams(1, 10, 0.5))
    # 9.95 + 0.1 = 10.05 projects back to 10
    assert out.pursuer_speed == pytest.approx(10.0, abs=1e-12)
    assert out.y_P == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("start, v, th, dt, end", [
    ((0, 0), 0.5, 0.0, 2.0, (1.0, 0.0)),
    ((1, 1), 0.0, 2.0, 1.0, (1.0, 1.0)),
    ((1, 1), 0.5, math.pi, 1.0, (0.5, 1.0)),
])
def test_step_evader(start, v, th, dt, end):
    s = GameState(7, 8, 0.1, 0.2, *start)
    out = step_evader(s, StrategyCommand(0, 0, v, th), dt)
    assert (out.x_E, out.y_E) == pytest.approx(end, abs=1e-15)
    assert (out.x_P, out.y_P, out.v_Px, out.v_Py) == (7, 8, 0.1, 0.2)


@pytest.mark.parametrize("dist, radius, expected", [
    (0.0, 0.0, True), (0.011, 0.01, False), (0.01, 0.01, True)])
def test_is_captured_boundary(dist, radius, expected):
    assert is_captured(GameState(0, 0, 0, 0, dist, 0), radius) is expected


def test_rejects_bad_inputs():
    with pytest.raises(InvalidStateError):
        GameState(0, 0, math.nan, 0, 0, 0)
    with pytest.raises(InvalidParamsError):
        GameParams(1, 0.5, 0.5)
    with pytest.raises(InvalidParamsError):
        GameParams(0, 2, 0.5)
    with pytest.raises(InvalidParamsError):
        GameParams(1, 2, -0.1)
    with pytest.raises(InfeasibleStateError):
        GameParams(1, 2, 0.5).check_state(GameState(0, 0, 3, 0, 1, 1))
    with pytest.raises(InvalidStateError):
        StrategyCommand(-1, 0, 0, 0)
    with pytest.raises(ValueError):
        is_captured(GameState(0, 0, 0, 0, 0, 0), -1)


def test_wrap_angle_range():
    assert wrap_angle(-1e-18) == 0.0 or wrap_angle(-1e-18) < 2 * math.pi
    assert wrap_angle(2 * math.pi) == 0.0
    assert wrap_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi)


@given(angles)
def test_wrap_angle_property(th):
    w = wrap_angle(th)
    assert 0.0 <= w < 2 * math.pi
    assert math.cos(w) == pytest.approx(math.cos(th), abs=1e-12)
    assert math.sin(w) == pytest.approx(math.sin(th), abs=1e-12)


@given(st.lists(st.tuples(st.floats(0, 3), angles), min_size=1, max_size=30),
       st.floats(0.5, 5), st.floats(1e-3, 0.5))
def test_speed_never_exceeds_cap(cmds, vmax, dt):
    params = GameParams(3.0, vmax, 0.0)
    s = GameState(0, 0, 0, 0, 1, 1)
    for a, th in cmds:
        s = step_pursuer(s, StrategyCommand(a, th, 0, 0), dt, params)
        assert s.pursuer_speed <= vmax


@given(finite, finite, st.floats(0, 3), angles, st.floats(1e-4, 2))
def test_evader_displacement_is_v_dt(x, y, v, th, dt):
    s = GameState(0, 0, 0, 0, x, y)
    out = step_evader(s, StrategyCommand(0, 0, v, th), dt)
    assert math.hypot(out.x_E - x, out.y_E - y) == pytest.approx(v * dt, rel=1e-12, abs=1e-12)


@given(finite, finite, finite, finite, finite, finite)
def test_psi_translation_invariant(xp, yp, xe, ye, dx, dy):
    s = GameState(xp, yp, 0, 0, xe, ye)
    assert s.translated(dx, dy).psi() == pytest.approx(s.psi(), rel=1e-9, abs=1e-9)


def test_state_array_round_trip():
    s = GameState(1, 2, 3, 4, 5, 6)
    assert GameState.from_array(s.as_array()) == s
    with pytest.raises(InvalidStateError):
        GameState.from_array(np.zeros(5))
