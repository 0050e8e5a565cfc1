"""Pursuit-evasion game between a speed-capped double-integrator pursuer and a
single-integrator evader: capture-time solver, closed-loop simulation and
numerical HJI verification."""

from .core import (CaptureSolution, GameParams, GameState, Phase, StrategyCommand,
                   is_captured, step_evader, step_pursuer, wrap_angle)
from .errors import GameError
from .phase1 import (candidate_capture_times, gamma, gamma_quartic_coeffs, phase1_strategy,
                     reachability_circles, saturation_time, tangency_point, time_threshold)
from .phase2 import (bracket_feasible_domain, capture_time_given_heading, feasible_arcs,
                     solve_phase2, ternary_search_max, w_feasibility)
from .roots import bisect, real_roots
from .simulation import (PolicyKind, Replan, Trajectory, divergence_evidence, run_game)
from .solver import SolverResult, command_for, solve
from .verification import (ValueGradient, fd_gradient, gradient_phase1, gradient_phase2,
                           hji_residual, switch_continuity_check)

__all__ = [name for name in dir() if not name.startswith("_")]
