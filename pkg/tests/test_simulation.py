import math

import numpy as np
import pytest

from pegame import GameParams, GameState, solve
from pegame.simulation import (OPTIMAL_VS_OPTIMAL, PURE_PURSUIT_VS_OPTIMAL, OutcomeKind,
                               PolicyKind, Replan, SimulationError, run_game)
import pegame.simulation as simmod


@pytest.fixture(scope="module")
def runs(request):
    from pegame.config import SCENARIO_1, SCENARIO_2
    dt = 1e-3
    return {name: (cfg, run_game(cfg.state, cfg.params, OPTIMAL_VS_OPTIMAL, dt, 10.0))
            for name, cfg in (("I", SCENARIO_1), ("II", SCENARIO_2))}


@pytest.mark.parametrize("name,ref", [("I", 2.437), ("II", 5.407)])
def test_optimal_play_matches_reference(runs, name, ref):
    # [PAPER] table reference values
    _, traj = runs[name]
    assert traj.outcome.kind is OutcomeKind.CAPTURED
    assert abs(traj.outcome.time - ref) <= max(2 * traj.dt, 5e-3)


@pytest.mark.parametrize("name", ["I", "II"])
def test_trajectory_invariants(runs, name):
    cfg, traj = runs[name]
    dt = traj.dt
    assert len(traj) == math.floor(traj.outcome.time / dt + 1e-9) + 1
    assert np.allclose(np.diff(traj.times), dt, rtol=0, atol=1e-12)
    assert traj.final_state.psi() <= cfg.params.capture_radius ** 2
    assert np.all(traj.pursuer_speed <= cfg.params.v_P_max)
    assert np.all(traj.commands[:, 0] <= cfg.params.a_P_max)
    assert np.all(traj.commands[:, 2] <= cfg.params.v_E_max)
    # no earlier sample was already inside the capture disk
    assert np.all(traj.separation[:-1] > cfg.params.capture_radius)


def test_pure_pursuit_never_captures(scenario2):
    s, p = scenario2
    traj = run_game(s, p, PURE_PURSUIT_VS_OPTIMAL, 1e-2, 50.0)
    assert traj.outcome.kind is OutcomeKind.TIMED_OUT
    assert traj.outcome.time == pytest.approx(50.0)


@pytest.mark.slow
@pytest.mark.parametrize("which", ["I", "II"])
def test_convergence_in_dt(scenario1, scenario2, which):
    """|t_sim - t_f| shrinks linearly in dt.

    The capture radius scales with dt (the distance both players can close in
    two steps) so that a coarse step cannot jump over the capture disk.
    """
    s, p = scenario1 if which == "I" else scenario2
    t_f = solve(s, p).t_f
    errs = []
    for dt in (1e-2, 1e-3, 1e-4):
        r = 2.0 * (p.v_P_max + p.v_E_max) * dt
        traj = run_game(s, p, OPTIMAL_VS_OPTIMAL, dt, 2 * t_f, capture_radius=r)
        assert traj.outcome.captured
        errs.append(abs(traj.outcome.time - t_f))
    assert errs[0] > errs[1] > errs[2]
    C = max(e / dt for e, dt in zip(errs, (1e-2, 1e-3, 1e-4)))
    assert C < 25.0, f"errors {errs}, C = {C}"


@pytest.mark.slow
@pytest.mark.parametrize("name", ["I", "II"])
def test_replanning_agrees_with_open_loop(runs, name):
    cfg, open_loop = runs[name]
    closed = run_game(cfg.state, cfg.params, OPTIMAL_VS_OPTIMAL, 1e-3, 10.0, Replan.EVERY_STEP)
    assert closed.outcome.captured
    assert abs(closed.outcome.time - open_loop.outcome.time) <= 10 * 1e-3


def test_solver_failure_keeps_partial_trajectory(scenario1, monkeypatch):
    s, p = scenario1
    calls = {"n": 0}
    real = simmod.solve

    def flaky(state, params):
        calls["n"] += 1
        if calls["n"] > 5:
            raise simmod.GameError("boom")
        return real(state, params)

    monkeypatch.setattr(simmod, "solve", flaky)
    with pytest.raises(SimulationError) as info:
        run_game(s, p, OPTIMAL_VS_OPTIMAL, 1e-3, 10.0, Replan.EVERY_STEP)
    part = info.value.trajectory
    assert len(part) == 5 and part.outcome.kind is OutcomeKind.TIMED_OUT


def test_bad_arguments(scenario1):
    s, p = scenario1
    with pytest.raises(ValueError):
        run_game(s, p, OPTIMAL_VS_OPTIMAL, 0.0, 1.0)
    with pytest.raises(ValueError):
        PolicyKind.parse("chase-vs-flee")
    assert PolicyKind.parse(" Optimal_vs_Optimal ") == OPTIMAL_VS_OPTIMAL


def test_start_inside_capture_disk():
    traj = run_game(GameState(0, 0, 0, 0, 1e-4, 0), GameParams(1, 2, 0.5), OPTIMAL_VS_OPTIMAL,
                    1e-3, 1.0)
    assert traj.outcome.captured and traj.outcome.time == 0.0 and len(traj) == 1
