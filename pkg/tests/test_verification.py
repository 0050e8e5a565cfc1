import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pegame import GameParams, GameState, Phase, solve
from pegame.errors import BoundaryOfFeasibilityError, NoCrossingError
from pegame.sampling import random_instances
from pegame.verification import (fd_gradient, gradient_error, gradient_phase1, gradient_phase2,
                                 hji_residual, r_terms, scenario_one_sweep,
                                 switch_continuity_check, value_gradient, vmax_sweep_family)


def test_scenario1_residual_and_gradient(scenario1):
    s, p = scenario1
    assert abs(hji_residual(s, p)) <= 1e-8
    g = value_gradient(s, p)
    assert gradient_error(g, fd_gradient(s, p, 1e-6)) <= 1e-5


def test_scenario2_residual_and_gradient(scenario2):
    s, p = scenario2
    assert abs(hji_residual(s, p)) <= 1e-6
    g = value_gradient(s, p)
    assert gradient_error(g, fd_gradient(s, p, 1e-5)) <= 1e-4
    assert g.dV_dxE == -g.dV_dxP and g.dV_dyE == -g.dV_dyP


@pytest.fixture(scope="module")
def smooth_states():
    return (random_instances(404, 30, Phase.PRE_SATURATION, smooth=True),
            random_instances(405, 30, Phase.POST_SATURATION, smooth=True))


def test_phase1_structure(smooth_states):
    for s, p, res in smooth_states[0]:
        g = gradient_phase1(s, res.solution, p)
        assert g.dV_dxP == -g.dV_dxE and g.dV_dyP == -g.dV_dyE
        assert g.dV_dvPx == pytest.approx(res.t_f * g.dV_dxP, rel=1e-12)
        assert g.dV_dvPy == pytest.approx(res.t_f * g.dV_dyP, rel=1e-12)
        shifted = s.translated(3.7, -1.1)
        g2 = gradient_phase1(shifted, solve(shifted, p).solution, p)
        assert g2.as_array() == pytest.approx(g.as_array(), rel=1e-7, abs=1e-9)


def test_gradients_match_finite_differences(smooth_states):
    for group in smooth_states:
        for s, p, res in group:
            err = gradient_error(value_gradient(s, p, res), fd_gradient(s, p))
            assert err <= 1e-4


def test_residual_sweep():
    for s, p, _ in random_instances(406, 150, smooth=True):
        assert abs(hji_residual(s, p)) <= 1e-5


@given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.floats(0, 2 * math.pi),
       st.floats(0.3, 3), st.floats(0.01, 2))
def test_r_identity(vx, vy, th, a, extra):
    p = GameParams(a, math.hypot(vx, vy) + extra, 0.0)
    R1, R2 = r_terms(GameState(0, 0, vx, vy, 1, 1), th, p)
    assert R1 * math.cos(th) + R2 * math.sin(th) == pytest.approx(-1.0, abs=1e-9)


def test_edge_of_arc_raises(scenario2):
    # t(theta) rises like sqrt(w) off a w = 0 edge, so solver maxima are
    # interior; pin the heading to the edge to exercise the guard
    s, p = scenario2
    sol = solve(s, p).solution
    edge = sol.info["domain"].theta_lo
    pinned = dataclasses.replace(sol, theta_P_star=edge, info={"on_edge": False})
    with pytest.raises(BoundaryOfFeasibilityError):
        gradient_phase2(s, pinned, p)
    flagged = dataclasses.replace(sol, info={"on_edge": True})
    with pytest.raises(BoundaryOfFeasibilityError):
        gradient_phase2(s, flagged, p)


def test_wrong_phase_rejected(scenario1, scenario2):
    with pytest.raises(ValueError):
        gradient_phase2(scenario1[0], solve(*scenario1).solution, scenario1[1])
    with pytest.raises(ValueError):
        gradient_phase1(scenario2[0], solve(*scenario2).solution, scenario2[1])


def test_switch_continuity(scenario1):
    rep = switch_continuity_check(scenario_one_sweep())
    assert rep.passed
    assert rep.jump <= 1e-5 and rep.theta_gap <= 1e-4
    # [DERIVED] the switch sits near v_P_max = 1.714 for the first scenario
    v = 10.0 + (1.01 - 10.0) * rep.s_star
    assert v == pytest.approx(1.714, abs=1e-3)


def test_switch_sweep_to_two_does_not_cross(scenario1):
    # the example sweep 10 -> 2 stays pre-saturation for this start
    with pytest.raises(NoCrossingError):
        switch_continuity_check(vmax_sweep_family(*scenario1, 10.0, 2.0))


def test_no_crossing_in_phase1_family(scenario1):
    with pytest.raises(NoCrossingError):
        switch_continuity_check(vmax_sweep_family(*scenario1, 10.0, 5.0))
