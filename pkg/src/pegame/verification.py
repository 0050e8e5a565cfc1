"""Numerical checks that the capture time is the value of the game.

The value V(x) = t_f must satisfy

    dV/dx_P v_Px + dV/dy_P v_Py + dV/dx_E v_E cos(th_E) + dV/dy_E v_E sin(th_E)
      + dV/dv_Px a_P cos(th_P) + dV/dv_Py a_P sin(th_P) + 1 = 0

along optimal play.  The gradients below are closed forms obtained by
implicit differentiation of the capture conditions; finite differences of
the solver provide an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Callable

import numpy as np

from .core import CaptureSolution, GameParams, GameState, Phase, StrategyCommand
from .errors import BoundaryOfFeasibilityError, NoCrossingError, SingularDenominatorError
from .phase2 import pq_terms
from .solver import SolverResult, command_for, solve

FD_STEP_PHASE1 = 1e-6
FD_STEP_PHASE2 = 1e-5


@dataclass(frozen=True)
class ValueGradient:
    dV_dxP: float
    dV_dyP: float
    dV_dvPx: float
    dV_dvPy: float
    dV_dxE: float
    dV_dyE: float

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)])

    @classmethod
    def from_array(cls, arr) -> "ValueGradient":
        return cls(*np.asarray(arr, dtype=float).tolist())


def gradient_phase1(state: GameState, sol: CaptureSolution, params: GameParams) -> ValueGradient:
    """Gradient of t_f from implicit differentiation of Gamma(t_f; x) = 0."""
    if sol.phase is not Phase.PRE_SATURATION:
        raise ValueError("gradient_phase1 needs a pre-saturation solution")
    a, vE, t = params.a_P_max, params.v_E_max, sol.t_f
    dx = state.x_P - state.x_E + state.v_Px * t
    dy = state.y_P - state.y_E + state.v_Py * t
    gap = 0.5 * a * t * t - vE * t
    terms = (-dx * state.v_Px, -dy * state.v_Py, gap * (a * t - vE))
    D = sum(terms)
    if abs(D) < 1e-12 * max(1.0, sum(abs(x) for x in terms)):
        raise SingularDenominatorError(f"D = {D!r} is numerically zero")
    return ValueGradient(dx / D, dy / D, dx * t / D, dy * t / D, -dx / D, -dy / D)


def r_terms(state: GameState, theta: float, params: GameParams):
    """Derivatives of a * t_theta(theta) with respect to v_Px and v_Py."""
    c, s = math.cos(theta), math.sin(theta)
    cross = state.v_Px * s - state.v_Py * c
    root = math.sqrt(max(params.v_P_max ** 2 - cross * cross, 0.0))
    if root == 0.0:
        raise BoundaryOfFeasibilityError("saturation time is not differentiable here")
    R1 = (-state.v_Px * s * s + state.v_Py * s * c) / root - c
    R2 = (-state.v_Py * c * c + state.v_Px * s * c) / root - s
    return R1, R2


def gradient_phase2(state: GameState, sol: CaptureSolution, params: GameParams) -> ValueGradient:
    """Gradient of t_f = (g - h) / (v_P^2 - v_E^2) at the optimal heading.

    The heading is held fixed: it maximises t, so its own sensitivity drops
    out at first order.
    """
    if sol.phase is not Phase.POST_SATURATION:
        raise ValueError("gradient_phase2 needs a post-saturation solution")
    if sol.info.get("on_edge"):
        raise BoundaryOfFeasibilityError(
            "optimal heading sits on the edge of the admissible arc; "
            "the value is not differentiable through the envelope condition")
    th = sol.theta_P_star
    pq = pq_terms(state, th, params)
    px, py, qx, qy, tt = pq.p_x, pq.p_y, pq.q_x, pq.q_y, pq.t_theta
    gap = params.speed_gap
    h = px * qx + py * qy
    w = h * h - gap * (qx * qx + qy * qy)
    if w <= 0.0 or math.sqrt(w) <= 1e-12 * max(1.0, abs(h)):
        raise BoundaryOfFeasibilityError(f"g = sqrt({w!r}) is not positive")
    g = math.sqrt(w)
    R1, R2 = r_terms(state, th, params)
    c, s = math.cos(th), math.sin(th)
    ident = R1 * c + R2 * s
    if abs(ident + 1.0) > 1e-9:
        raise ArithmeticError(f"R1 cos + R2 sin = {ident!r}, expected -1")

    k = (h / g - 1.0) / gap
    dxP = k * px - qx / g
    dyP = k * py - qy / g
    dvx = (k * (-px * R1 * c * tt - py * R1 * s * tt + qx * (1.0 + R1 * c) + qy * R1 * s)
           + (qx * R1 * c * tt + qy * R1 * s * tt) / g)
    dvy = (k * (-px * R2 * c * tt - py * R2 * s * tt + qy * (1.0 + R2 * s) + qx * R2 * c)
           + (qx * R2 * c * tt + qy * R2 * s * tt) / g)
    return ValueGradient(dxP, dyP, dvx, dvy, -dxP, -dyP)


def value_gradient(state: GameState, params: GameParams,
                   result: SolverResult | None = None) -> ValueGradient:
    result = result if result is not None else solve(state, params)
    sol = result.solution
    if sol.phase is Phase.PRE_SATURATION:
        return gradient_phase1(state, sol, params)
    return gradient_phase2(state, sol, params)


def hamiltonian_residual(grad: ValueGradient, state: GameState, cmd: StrategyCommand) -> float:
    """Left side of the HJI equation for a given gradient and controls."""
    return (grad.dV_dxP * state.v_Px + grad.dV_dyP * state.v_Py
            + grad.dV_dxE * cmd.v_E * math.cos(cmd.theta_E)
            + grad.dV_dyE * cmd.v_E * math.sin(cmd.theta_E)
            + grad.dV_dvPx * cmd.a_P * math.cos(cmd.theta_P)
            + grad.dV_dvPy * cmd.a_P * math.sin(cmd.theta_P)
            + 1.0)


def hji_residual(state: GameState, params: GameParams) -> float:
    """HJI residual with the analytic gradient and the optimal controls; exactly 0 in theory."""
    result = solve(state, params)
    grad = value_gradient(state, params, result)
    cmd = command_for(result.solution, params)
    return hamiltonian_residual(grad, state, cmd)


def fd_gradient(state: GameState, params: GameParams, step: float | None = None) -> ValueGradient:
    """Central finite differences of the solver's t_f."""
    if step is None:
        phase = solve(state, params).solution.phase
        step = FD_STEP_PHASE1 if phase is Phase.PRE_SATURATION else FD_STEP_PHASE2
    x = state.as_array()
    out = np.empty(6)
    for i in range(6):
        e = np.zeros(6)
        e[i] = step
        tp = solve(GameState.from_array(x + e), params).solution.t_f
        tm = solve(GameState.from_array(x - e), params).solution.t_f
        out[i] = (tp - tm) / (2.0 * step)
    return ValueGradient.from_array(out)


def gradient_error(analytic: ValueGradient, numeric: ValueGradient, floor: float = 1e-6) -> float:
    """Largest component-wise relative error, relative to max(|numeric|, floor)."""
    a, n = analytic.as_array(), numeric.as_array()
    return float(np.max(np.abs(a - n) / np.maximum(np.abs(n), floor)))


@dataclass(frozen=True)
class ContinuityReport:
    s_star: float
    t_f_pre: float
    t_f_post: float
    theta_pre: float
    theta_post: float
    jump: float
    theta_gap: float
    passed: bool


StateFamily = Callable[[float], tuple]


def vmax_sweep_family(state: GameState, params: GameParams, v_start: float,
                      v_end: float) -> StateFamily:
    """Family s -> (state, params) with v_P_max moving linearly from v_start to v_end."""
    def family(s: float):
        v = v_start + (v_end - v_start) * s
        return state, GameParams(params.a_P_max, v, params.v_E_max,
                                 params.tol_speed, params.capture_radius)
    return family


def _angle_gap(a: float, b: float) -> float:
    return abs((a - b + math.pi) % (2.0 * math.pi) - math.pi)


def switch_continuity_check(family: StateFamily, lo: float = 0.0, hi: float = 1.0,
                            gap: float = 1e-8, jump_tol: float = 1e-5,
                            theta_tol: float = 1e-4) -> ContinuityReport:
    """Bisect a one-parameter family onto the phase switch and compare both sides."""
    def phase_at(s):
        st, pr = family(s)
        return solve(st, pr)

    r_lo, r_hi = phase_at(lo), phase_at(hi)
    if r_lo.solution.phase is r_hi.solution.phase:
        raise NoCrossingError(f"family stays in {r_lo.solution.phase} on [{lo}, {hi}]")
    while hi - lo > gap:
        mid = 0.5 * (lo + hi)
        r_mid = phase_at(mid)
        if r_mid.solution.phase is r_lo.solution.phase:
            lo, r_lo = mid, r_mid
        else:
            hi, r_hi = mid, r_mid
    if r_lo.solution.phase is Phase.PRE_SATURATION:
        pre, post = r_lo.solution, r_hi.solution
    else:
        pre, post = r_hi.solution, r_lo.solution
    jump = abs(pre.t_f - post.t_f)
    theta_gap = _angle_gap(pre.theta_P_star, post.theta_P_star)
    return ContinuityReport(s_star=0.5 * (lo + hi), t_f_pre=pre.t_f, t_f_post=post.t_f,
                            theta_pre=pre.theta_P_star, theta_post=post.theta_P_star,
                            jump=jump, theta_gap=theta_gap,
                            passed=jump <= jump_tol and theta_gap <= theta_tol)


RESIDUAL_TOL = 1e-5
GRADIENT_TOL = 1e-4
JUMP_TOL = 1e-5
THETA_TOL = 1e-4


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    residual_counts: dict
    gradient_counts: dict
    max_residual: float
    worst_residual: tuple
    max_gradient_error: float
    worst_gradient: tuple
    continuity: ContinuityReport

    @property
    def passed(self) -> bool:
        return (self.max_residual <= RESIDUAL_TOL
                and self.max_gradient_error <= GRADIENT_TOL
                and self.continuity.passed)


SWEEP_V_START = 10.0
SWEEP_V_END = 1.01


def scenario_one_sweep() -> StateFamily:
    """The v_P_max sweep used for the continuity check.

    The first scenario switches phase near v_P_max = 1.715, so a sweep that
    stops at 2 never crosses; it runs down to 1.01 instead.
    """
    return vmax_sweep_family(GameState(0.0, 0.0, 0.0, 1.0, 1.0, 1.0),
                             GameParams(a_P_max=1.0, v_P_max=10.0, v_E_max=0.5),
                             SWEEP_V_START, SWEEP_V_END)


def run_verification(seed: int = 42, n_residual: int = 100, n_gradient: int = 20,
                     gradient_hook: Callable | None = None) -> VerificationReport:
    """Residual, gradient and continuity suites on seeded random states.

    ``n_residual`` states of either phase enter the residual sweep and
    ``n_gradient`` states per phase the finite-difference comparison.
    ``gradient_hook`` maps each analytic ValueGradient before it is used; it
    exists for fault injection.
    """
    from .sampling import random_instances

    hook = gradient_hook or (lambda g: g)
    rng_seeds = np.random.SeedSequence(seed).spawn(3)
    res_counts = {p.value: 0 for p in Phase}
    max_res, worst_res = 0.0, None
    for state, params, result in random_instances(rng_seeds[0], n_residual, smooth=True):
        grad = hook(value_gradient(state, params, result))
        r = abs(hamiltonian_residual(grad, state, command_for(result.solution, params)))
        res_counts[result.phase.value] += 1
        if worst_res is None or r > max_res:
            max_res, worst_res = r, (state, params)

    grad_counts = {p.value: 0 for p in Phase}
    max_err, worst_grad = 0.0, None
    for k, phase in enumerate(Phase):
        for state, params, result in random_instances(rng_seeds[1 + k], n_gradient, phase,
                                                      smooth=True):
            analytic = hook(value_gradient(state, params, result))
            err = gradient_error(analytic, fd_gradient(state, params))
            grad_counts[phase.value] += 1
            if worst_grad is None or err > max_err:
                max_err, worst_grad = err, (state, params)

    cont = switch_continuity_check(scenario_one_sweep(), jump_tol=JUMP_TOL, theta_tol=THETA_TOL)
    return VerificationReport(seed, res_counts, grad_counts, max_res, worst_res,
                              max_err, worst_grad, cont)
