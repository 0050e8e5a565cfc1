"""Closed-loop play between optimal players and line-of-sight baselines."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (CaptureSolution, GameParams, GameState, Phase, StrategyCommand,
                   step_evader, step_pursuer)
from .errors import GameError
from .solver import solve


class PursuerPolicy(enum.Enum):
    OPTIMAL = "OptimalPursuer"
    PURE_PURSUIT = "PurePursuit"


class EvaderPolicy(enum.Enum):
    OPTIMAL = "OptimalEvader"
    PURE_EVASION = "PureEvasion"


@dataclass(frozen=True)
class PolicyKind:
    pursuer: PursuerPolicy
    evader: EvaderPolicy

    def __str__(self):
        return f"{self.pursuer.value}-vs-{self.evader.value}"

    @classmethod
    def parse(cls, text: str) -> "PolicyKind":
        key = text.strip().lower().replace("_", "-")
        try:
            return NAMED_POLICIES[key]
        except KeyError:
            raise ValueError(f"unknown policy pair {text!r}; choose from "
                             f"{sorted(NAMED_POLICIES)}") from None


OPTIMAL_VS_OPTIMAL = PolicyKind(PursuerPolicy.OPTIMAL, EvaderPolicy.OPTIMAL)
OPTIMAL_VS_PURE_EVASION = PolicyKind(PursuerPolicy.OPTIMAL, EvaderPolicy.PURE_EVASION)
PURE_PURSUIT_VS_OPTIMAL = PolicyKind(PursuerPolicy.PURE_PURSUIT, EvaderPolicy.OPTIMAL)
PURE_PURSUIT_VS_PURE_EVASION = PolicyKind(PursuerPolicy.PURE_PURSUIT, EvaderPolicy.PURE_EVASION)

NAMED_POLICIES = {
    "optimal-vs-optimal": OPTIMAL_VS_OPTIMAL,
    "optimal-vs-pure-evasion": OPTIMAL_VS_PURE_EVASION,
    "pure-pursuit-vs-optimal": PURE_PURSUIT_VS_OPTIMAL,
    "pure-pursuit-vs-pure-evasion": PURE_PURSUIT_VS_PURE_EVASION,
}


class Replan(enum.Enum):
    OPEN_LOOP = "OpenLoop"
    EVERY_STEP = "EveryStep"


class OutcomeKind(enum.Enum):
    CAPTURED = "Captured"
    TIMED_OUT = "TimedOut"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    time: float

    @property
    def captured(self) -> bool:
        return self.kind is OutcomeKind.CAPTURED


@dataclass(frozen=True)
class Trajectory:
    """Samples of one run.

    ``states`` has one row per sample in GameState field order and
    ``commands`` holds (a_P, theta_P, v_E, theta_E) applied from that sample.
    The terminal row repeats the last applied command.
    """

    times: np.ndarray
    states: np.ndarray
    commands: np.ndarray
    outcome: Outcome
    dt: float

    def __len__(self):
        return len(self.times)

    @property
    def samples(self):
        for t, s, c in zip(self.times, self.states, self.commands):
            yield float(t), GameState.from_array(s), StrategyCommand(*c)

    @property
    def separation(self) -> np.ndarray:
        return np.hypot(self.states[:, 0] - self.states[:, 4],
                        self.states[:, 1] - self.states[:, 5])

    @property
    def pursuer_speed(self) -> np.ndarray:
        return np.hypot(self.states[:, 2], self.states[:, 3])

    @property
    def final_state(self) -> GameState:
        return GameState.from_array(self.states[-1])


class SimulationError(GameError):
    """A solver failure during a run; the partial trajectory is attached."""

    def __init__(self, message, trajectory: Trajectory, cause: Exception):
        super().__init__(message)
        self.trajectory = trajectory
        self.cause = cause


@dataclass(frozen=True)
class Plan:
    """A capture solution and the time it was computed."""

    solution: CaptureSolution
    t0: float

    @property
    def capture_time(self) -> float:
        return self.t0 + self.solution.t_f

    def pursuer(self, t: float, params: GameParams):
        sol = self.solution
        if sol.phase is Phase.PRE_SATURATION:
            a = params.a_P_max
        else:
            # bang-off: full thrust until the planned saturation instant
            a = params.a_P_max if (t - self.t0) < sol.t_theta_star - 1e-12 else 0.0
        return a, sol.theta_P_star

    def evader(self, params: GameParams):
        return params.v_E_max, self.solution.theta_E_star


def line_of_sight(state: GameState) -> float:
    """Heading from P to E."""
    return math.atan2(state.y_E - state.y_P, state.x_E - state.x_P)


def _replan(plan: Plan, deadline: float, state: GameState, t: float, params: GameParams,
            slack: float):
    """Re-solve at ``state`` unless the new plan would postpone capture.

    The open-loop optimal plan is not re-derivable everywhere along its own
    path: late in the game the pre-saturation candidate filter and the
    post-saturation maximiser can jump to a different branch.  A replacement
    whose capture time exceeds the earliest capture promised so far
    (``deadline``) by more than ``slack`` is ignored, and so is a
    pre-saturation plan once a post-saturation plan is in force (those come
    from nearly grazing tangency roots that move by O(1) per step).  This
    keeps optimal-vs-optimal play on its original plan and still lets P
    exploit an evader that leaves the optimal path.  Returns ``(plan, deadline)``.
    """
    new = Plan(solve(state, params).solution, t)
    if (plan.solution.phase is Phase.POST_SATURATION
            and new.solution.phase is Phase.PRE_SATURATION):
        return plan, deadline
    if new.capture_time <= deadline + slack:
        return new, min(deadline, new.capture_time)
    return plan, deadline


def run_game(initial: GameState, params: GameParams, policies: PolicyKind, dt: float,
             horizon: float, replan: Replan = Replan.OPEN_LOOP,
             capture_radius: float | None = None) -> Trajectory:
    """Simulate one game until capture or ``horizon``.

    Optimal players follow the solver: with ``OPEN_LOOP`` the plan from t = 0
    is replayed, with ``EVERY_STEP`` it is re-solved from every sample.
    Pure pursuit accelerates at full thrust toward E; pure evasion runs at
    full speed straight away from P.
    """
    if not dt > 0.0 or not horizon > 0.0:
        raise ValueError("dt and horizon must be positive")
    params.check_state(initial)
    radius = params.capture_radius if capture_radius is None else capture_radius
    r2 = radius * radius
    n_max = int(math.floor(horizon / dt + 1e-9))
    slack = 1e-9

    times = np.empty(n_max + 1)
    states = np.empty((n_max + 1, 6))
    commands = np.zeros((n_max + 1, 4))
    need_plan = (policies.pursuer is PursuerPolicy.OPTIMAL
                 or policies.evader is EvaderPolicy.OPTIMAL)

    def partial(k):
        out = Outcome(OutcomeKind.TIMED_OUT, k * dt)
        return Trajectory(times[:k].copy(), states[:k].copy(), commands[:k].copy(), out, dt)

    state = initial
    plan = None
    deadline = math.inf
    k = 0
    outcome = None
    while True:
        t = k * dt
        times[k] = t
        states[k] = state.as_array()
        if state.psi() <= r2:
            outcome = Outcome(OutcomeKind.CAPTURED, t)
            break
        if k == n_max:
            outcome = Outcome(OutcomeKind.TIMED_OUT, t)
            break
        if need_plan:
            try:
                if plan is None:
                    plan = Plan(solve(state, params).solution, t)
                    deadline = plan.capture_time
                elif replan is Replan.EVERY_STEP:
                    plan, deadline = _replan(plan, deadline, state, t, params, slack)
            except GameError as err:
                raise SimulationError(f"solver failed at t = {t:.6g}: {err}",
                                      partial(k), err) from err
        if policies.pursuer is PursuerPolicy.OPTIMAL:
            a_P, th_P = plan.pursuer(t, params)
        else:
            a_P, th_P = params.a_P_max, line_of_sight(state)
        if policies.evader is EvaderPolicy.OPTIMAL:
            v_E, th_E = plan.evader(params)
        else:
            v_E, th_E = params.v_E_max, line_of_sight(state)
        cmd = StrategyCommand(a_P, th_P, v_E, th_E)
        commands[k] = (cmd.a_P, cmd.theta_P, cmd.v_E, cmd.theta_E)
        state = step_evader(step_pursuer(state, cmd, dt, params), cmd, dt)
        k += 1
    if k > 0:
        commands[k] = commands[k - 1]
    return Trajectory(times[:k + 1].copy(), states[:k + 1].copy(), commands[:k + 1].copy(),
                      outcome, dt)


def divergence_evidence(traj: Trajectory, tail: float = 0.2) -> bool:
    """True if P-E separation never decreases over the final ``tail`` fraction."""
    sep = traj.separation
    start = int(math.floor(len(sep) * (1.0 - tail)))
    return bool(np.all(np.diff(sep[start:]) >= 0.0))
