"""Pre-saturation capture: reachability circles, tangency and constant controls.

While P has not reached its speed cap, its reachable set at time t under a
fixed acceleration heading is the circle C_P(t) with centre
``p0 + v0 t`` and radius ``a t^2 / 2``.  E reaches the disk C_E(t) with
centre ``e0`` and radius ``v_E t``.  Capture happens first when C_E becomes
internally tangent to C_P, which is the quartic condition ``Gamma(t) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GameParams, GameState, StrategyCommand, wrap_angle
from .errors import DegenerateTangencyError, InfeasibleStateError
from .roots import real_roots

TOL_T = 1e-9


@dataclass(frozen=True)
class ReachabilityCircles:
    c_P: tuple
    R_P: float
    c_E: tuple
    R_E: float
    t: float


def reachability_circles(state: GameState, t: float, params: GameParams) -> ReachabilityCircles:
    c_P = (state.x_P + state.v_Px * t, state.y_P + state.v_Py * t)
    return ReachabilityCircles(c_P=c_P, R_P=0.5 * params.a_P_max * t * t,
                               c_E=(state.x_E, state.y_E), R_E=params.v_E_max * t, t=t)


def saturation_time(state: GameState, theta_P, params: GameParams):
    """Time for P to hit ``v_P_max`` accelerating at ``a_P_max`` along ``theta_P``.

    Accepts a scalar or an array of headings.
    """
    vmax = params.v_P_max
    if state.pursuer_speed > vmax * (1.0 + params.tol_speed):
        raise InfeasibleStateError(
            f"pursuer speed {state.pursuer_speed!r} already exceeds {vmax!r}")
    c, s = np.cos(theta_P), np.sin(theta_P)
    cross = state.v_Px * s - state.v_Py * c
    along = state.v_Px * c + state.v_Py * s
    # speed within tolerance of the cap can push the radicand a hair negative
    rad = np.maximum(vmax * vmax - cross * cross, 0.0)
    t = (np.sqrt(rad) - along) / params.a_P_max
    t = np.maximum(t, 0.0)
    if np.ndim(t) == 0:
        return float(t)
    return t


def gamma_quartic_coeffs(state: GameState, params: GameParams) -> np.ndarray:
    """Coefficients of Gamma(t), highest degree first.

    Gamma(t) = |d + v t|^2 - (a t^2 / 2 - v_E t)^2 with d = p0 - e0.
    """
    a, vE = params.a_P_max, params.v_E_max
    dx, dy = state.x_P - state.x_E, state.y_P - state.y_E
    vx, vy = state.v_Px, state.v_Py
    return np.array([
        -0.25 * a * a,
        a * vE,
        vx * vx + vy * vy - vE * vE,
        2.0 * (dx * vx + dy * vy),
        dx * dx + dy * dy,
    ])


def gamma(state: GameState, t, params: GameParams):
    """Unexpanded tangency function, for checking the coefficients."""
    a, vE = params.a_P_max, params.v_E_max
    ex = state.x_P - state.x_E + state.v_Px * t
    ey = state.y_P - state.y_E + state.v_Py * t
    gap = 0.5 * a * t * t - vE * t
    return ex * ex + ey * ey - gap * gap


def time_threshold(params: GameParams) -> float:
    """Smallest time at which C_P can be larger than C_E."""
    return 2.0 * params.v_E_max / params.a_P_max


def candidate_capture_times(state: GameState, params: GameParams) -> list[float]:
    """Real roots of Gamma with t >= 2 v_E / a (minus a small tolerance), ascending."""
    lo = time_threshold(params) - TOL_T
    roots = real_roots(gamma_quartic_coeffs(state, params))
    return [r for r in roots if r >= lo and r >= 0.0]


def _tangency_denominator(t: float, params: GameParams) -> float:
    # v_E t - a t^2 / 2, i.e. minus (R_P - R_E)
    den = params.v_E_max * t - 0.5 * params.a_P_max * t * t
    scale = max(1.0, 0.5 * params.a_P_max * t * t)
    if t <= 0.0 or abs(den) <= 1e-12 * scale:
        raise DegenerateTangencyError(
            f"t = {t!r} sits on the degenerate time 2 v_E / a = {time_threshold(params)!r}")
    return den


def tangency_point(state: GameState, t: float, params: GameParams) -> tuple:
    """Point where C_E touches C_P from inside at time t."""
    a, vE = params.a_P_max, params.v_E_max
    if t <= time_threshold(params) + TOL_T:
        raise DegenerateTangencyError(
            f"t = {t!r} is not beyond 2 v_E / a = {time_threshold(params)!r}")
    _tangency_denominator(t, params)
    k = 2.0 * vE * t / (a * t * t - 2.0 * vE * t)
    xf = state.x_E - k * (state.x_P + state.v_Px * t - state.x_E)
    yf = state.y_E - k * (state.y_P + state.v_Py * t - state.y_E)
    return (xf, yf)


def phase1_strategy(state: GameState, t_f: float, params: GameParams):
    """Constant controls leading both players to the tangency point at ``t_f``.

    Returns ``(command, theta_star)``; both players use the same heading.
    """
    den = _tangency_denominator(t_f, params)
    c = (state.x_P + state.v_Px * t_f - state.x_E) / den
    s = (state.y_P + state.v_Py * t_f - state.y_E) / den
    theta = wrap_angle(math.atan2(s, c))
    cmd = StrategyCommand(a_P=params.a_P_max, theta_P=theta,
                          v_E=params.v_E_max, theta_E=theta)
    return cmd, theta


def heading_norm(state: GameState, t_f: float, params: GameParams) -> float:
    """Norm of the raw (cos, sin) pair from the strategy formula; 1 at a root of Gamma."""
    den = _tangency_denominator(t_f, params)
    c = (state.x_P + state.v_Px * t_f - state.x_E) / den
    s = (state.y_P + state.v_Py * t_f - state.y_E) / den
    return math.hypot(c, s)


def intercept_time(state: GameState, theta_E: float, params: GameParams) -> float:
    """First time P's circle C_P(t) swallows an evader running straight at ``theta_E``.

    This is the pursuit used to argue the capture guarantee: once the point
    ``e0 + v_E t u`` lies on C_P(t), a constant acceleration heading reaches
    it at that instant.  Solves |d + (v - v_E u) t|^2 = (a t^2 / 2)^2.
    """
    a, vE = params.a_P_max, params.v_E_max
    dx, dy = state.x_P - state.x_E, state.y_P - state.y_E
    wx = state.v_Px - vE * math.cos(theta_E)
    wy = state.v_Py - vE * math.sin(theta_E)
    coeffs = [-0.25 * a * a, 0.0, wx * wx + wy * wy, 2.0 * (dx * wx + dy * wy),
              dx * dx + dy * dy]
    if dx == 0.0 and dy == 0.0:
        return 0.0
    roots = [r for r in real_roots(coeffs) if r > 0.0]
    return roots[0]
