"""Shared types, dynamics and the terminal test for the pursuit-evasion game.

The pursuer P is a planar double integrator whose acceleration magnitude is
bounded by ``a_P_max`` and whose speed is hard-capped at ``v_P_max``.  The
evader E is a single integrator with speed at most ``v_E_max``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleStateError, InvalidParamsError, InvalidStateError

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    out = math.fmod(float(theta), TWO_PI)
    if out < 0.0:
        out += TWO_PI
    # fmod of a tiny negative number can round back up to 2*pi
    if out >= TWO_PI:
        out = 0.0
    return out


@dataclass(frozen=True)
class GameState:
    """Joint state (x_P, y_P, v_Px, v_Py, x_E, y_E)."""

    x_P: float
    y_P: float
    v_Px: float
    v_Py: float
    x_E: float
    y_E: float

    def __post_init__(self):
        for name in ("x_P", "y_P", "v_Px", "v_Py", "x_E", "y_E"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise InvalidStateError(f"state field {name} is not finite: {val!r}")
            object.__setattr__(self, name, val)

    @classmethod
    def from_array(cls, arr) -> "GameState":
        arr = np.asarray(arr, dtype=float).ravel()
        if arr.shape != (6,):
            raise InvalidStateError(f"expected 6 state components, got {arr.size}")
        return cls(*arr.tolist())

    def as_array(self) -> np.ndarray:
        return np.array([self.x_P, self.y_P, self.v_Px, self.v_Py, self.x_E, self.y_E])

    @property
    def pursuer_speed(self) -> float:
        return math.hypot(self.v_Px, self.v_Py)

    @property
    def separation(self) -> float:
        return math.hypot(self.x_P - self.x_E, self.y_P - self.y_E)

    def psi(self) -> float:
        """Squared P-E distance, the terminal function."""
        dx = self.x_P - self.x_E
        dy = self.y_P - self.y_E
        return dx * dx + dy * dy

    def translated(self, dx: float, dy: float) -> "GameState":
        return GameState(self.x_P + dx, self.y_P + dy, self.v_Px, self.v_Py,
                         self.x_E + dx, self.y_E + dy)


@dataclass(frozen=True)
class GameParams:
    """Control bounds of both players plus numeric tolerances."""

    a_P_max: float
    v_P_max: float
    v_E_max: float
    tol_speed: float = 1e-9
    capture_radius: float = 1e-3

    def __post_init__(self):
        for name in ("a_P_max", "v_P_max", "v_E_max", "tol_speed", "capture_radius"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise InvalidParamsError(f"{name} is not finite: {val!r}")
            object.__setattr__(self, name, val)
        if self.a_P_max <= 0.0:
            raise InvalidParamsError(f"a_P_max must be positive, got {self.a_P_max}")
        if self.v_P_max <= 0.0:
            raise InvalidParamsError(f"v_P_max must be positive, got {self.v_P_max}")
        if self.v_E_max < 0.0:
            raise InvalidParamsError(f"v_E_max must be non-negative, got {self.v_E_max}")
        if self.v_P_max <= self.v_E_max:
            raise InvalidParamsError(
                f"v_P_max ({self.v_P_max}) must exceed v_E_max ({self.v_E_max}); "
                "capture is not guaranteed otherwise")
        if self.tol_speed < 0.0:
            raise InvalidParamsError("tol_speed must be non-negative")
        if self.capture_radius < 0.0:
            raise InvalidParamsError("capture_radius must be non-negative")

    @property
    def speed_gap(self) -> float:
        """v_P_max**2 - v_E_max**2, the leading coefficient of the capture quadratic."""
        return self.v_P_max ** 2 - self.v_E_max ** 2

    def check_state(self, state: GameState) -> None:
        """Raise if the pursuer speed violates the saturation bound."""
        speed = state.pursuer_speed
        if speed > self.v_P_max * (1.0 + self.tol_speed):
            raise InfeasibleStateError(
                f"pursuer speed {speed!r} exceeds v_P_max {self.v_P_max!r}")


@dataclass(frozen=True)
class StrategyCommand:
    """Instantaneous controls of both players."""

    a_P: float
    theta_P: float
    v_E: float
    theta_E: float

    def __post_init__(self):
        for name in ("a_P", "theta_P", "v_E", "theta_E"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise InvalidStateError(f"command field {name} is not finite")
            object.__setattr__(self, name, val)
        if self.a_P < 0.0 or self.v_E < 0.0:
            raise InvalidStateError("control magnitudes must be non-negative")
        object.__setattr__(self, "theta_P", wrap_angle(self.theta_P))
        object.__setattr__(self, "theta_E", wrap_angle(self.theta_E))

    def bounded_by(self, params: GameParams, slack: float = 1e-12) -> bool:
        return (self.a_P <= params.a_P_max * (1 + slack)
                and self.v_E <= params.v_E_max * (1 + slack))


class Phase(enum.Enum):
    PRE_SATURATION = "PreSaturation"
    POST_SATURATION = "PostSaturation"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CaptureSolution:
    """Outcome of the analytic game from a given state."""

    t_f: float
    capture_point: tuple
    theta_P_star: float
    theta_E_star: float
    phase: Phase
    t_theta_star: float
    # extra diagnostics, not part of equality
    info: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "theta_P_star", wrap_angle(self.theta_P_star))
        object.__setattr__(self, "theta_E_star", wrap_angle(self.theta_E_star))
        object.__setattr__(self, "capture_point",
                           (float(self.capture_point[0]), float(self.capture_point[1])))


def step_pursuer(state: GameState, cmd: StrategyCommand, dt: float,
                 params: GameParams) -> GameState:
    """Advance the pursuer by one semi-implicit Euler step.

    Velocity is updated first, radially projected back onto the speed disk if
    it leaves it, and the new velocity then moves the position.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    vx = state.v_Px + cmd.a_P * math.cos(cmd.theta_P) * dt
    vy = state.v_Py + cmd.a_P * math.sin(cmd.theta_P) * dt
    speed = math.hypot(vx, vy)
    if speed > params.v_P_max:
        scale = params.v_P_max / speed
        ux, uy = vx * scale, vy * scale
        # rounding can leave |v| one ulp above the cap; shave until it is not
        while math.hypot(ux, uy) > params.v_P_max:
            scale = math.nextafter(scale, 0.0)
            ux, uy = vx * scale, vy * scale
        vx, vy = ux, uy
    return GameState(state.x_P + vx * dt, state.y_P + vy * dt, vx, vy,
                     state.x_E, state.y_E)


def step_evader(state: GameState, cmd: StrategyCommand, dt: float) -> GameState:
    """Advance the evader by one Euler step at constant heading."""
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    return GameState(state.x_P, state.y_P, state.v_Px, state.v_Py,
                     state.x_E + cmd.v_E * math.cos(cmd.theta_E) * dt,
                     state.y_E + cmd.v_E * math.sin(cmd.theta_E) * dt)


def is_captured(state: GameState, capture_radius: float) -> bool:
    """True iff the players are within ``capture_radius`` (boundary inclusive)."""
    if capture_radius < 0.0:
        raise ValueError("capture_radius must be non-negative")
    return state.psi() <= capture_radius * capture_radius
