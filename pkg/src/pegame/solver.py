"""Case dispatch between pre- and post-saturation capture."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import CaptureSolution, GameParams, GameState, Phase, StrategyCommand
from .errors import DegenerateTangencyError
from .phase1 import candidate_capture_times, phase1_strategy, saturation_time, tangency_point
from .phase2 import solve_phase2

# slack on the t_f <= t_theta acceptance test, relative to t_f
ACCEPT_TOL = 1e-12
# P accelerates only while its planned saturation time is still ahead of it
SATURATED_EPS = 1e-12


@dataclass(frozen=True)
class SolverResult:
    command: StrategyCommand
    solution: CaptureSolution
    candidates_examined: list = field(default_factory=list)

    @property
    def phase(self) -> Phase:
        return self.solution.phase

    @property
    def t_f(self) -> float:
        return self.solution.t_f


def _captured_now(state: GameState, params: GameParams) -> SolverResult:
    tt = saturation_time(state, 0.0, params)
    sol = CaptureSolution(t_f=0.0, capture_point=(state.x_E, state.y_E), theta_P_star=0.0,
                          theta_E_star=0.0, phase=Phase.PRE_SATURATION, t_theta_star=tt)
    return SolverResult(StrategyCommand(0.0, 0.0, 0.0, 0.0), sol, [])


def solve_phase1(state: GameState, params: GameParams):
    """Walk the candidate set upward and return the first admissible capture.

    Returns ``(solution_or_None, examined)`` where ``examined`` lists the
    ``(t, t_theta)`` pairs that were tested.
    """
    examined = []
    for t in candidate_capture_times(state, params):
        try:
            cmd, theta = phase1_strategy(state, t, params)
        except DegenerateTangencyError:
            # a root sitting on 2 v_E / a carries no heading information
            examined.append((t, math.nan))
            continue
        tt = saturation_time(state, theta, params)
        examined.append((t, tt))
        if t <= tt + ACCEPT_TOL * max(1.0, t):
            xf, yf = tangency_point(state, t, params)
            sol = CaptureSolution(t_f=t, capture_point=(xf, yf), theta_P_star=theta,
                                  theta_E_star=theta, phase=Phase.PRE_SATURATION,
                                  t_theta_star=tt)
            return sol, examined
    return None, examined


def command_for(solution: CaptureSolution, params: GameParams) -> StrategyCommand:
    """Instantaneous optimal controls implied by a capture solution."""
    if solution.phase is Phase.PRE_SATURATION:
        a_P = params.a_P_max
    else:
        a_P = params.a_P_max if solution.t_theta_star > SATURATED_EPS else 0.0
    return StrategyCommand(a_P=a_P, theta_P=solution.theta_P_star,
                           v_E=params.v_E_max, theta_E=solution.theta_E_star)


def solve(state: GameState, params: GameParams) -> SolverResult:
    """Optimal capture time and controls for both players from ``state``.

    Tries every pre-saturation candidate in ascending order and accepts the
    first one reached before P saturates.  Otherwise the post-saturation
    problem is solved.
    """
    params.check_state(state)
    if state.psi() == 0.0:
        return _captured_now(state, params)
    sol, examined = solve_phase1(state, params)
    if sol is None:
        sol = solve_phase2(state, params)
    return SolverResult(command_for(sol, params), sol, examined)
