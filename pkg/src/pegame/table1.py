"""The capture-time table: two scenarios against three strategy pairings."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import SCENARIO_1, SCENARIO_2, ScenarioConfig
from .simulation import (OPTIMAL_VS_OPTIMAL, OPTIMAL_VS_PURE_EVASION, PURE_PURSUIT_VS_OPTIMAL,
                         PolicyKind, Replan, Trajectory, divergence_evidence, run_game)

# horizon for the finite cells; the divergent cells use DIVERGENT_HORIZON
FINITE_HORIZON = 10.0
DIVERGENT_HORIZON = 50.0


@dataclass(frozen=True)
class CellSpec:
    scenario: str
    config: ScenarioConfig
    policies: PolicyKind
    replan: Replan
    horizon: float
    reference: float  # math.inf for cells that should never capture


CELLS = (
    CellSpec("I", SCENARIO_1, OPTIMAL_VS_OPTIMAL, Replan.OPEN_LOOP, FINITE_HORIZON, 2.437),
    # the pursuer re-solves every tick to react to a non-optimal evader
    CellSpec("I", SCENARIO_1, OPTIMAL_VS_PURE_EVASION, Replan.EVERY_STEP, FINITE_HORIZON, 2.155),
    CellSpec("I", SCENARIO_1, PURE_PURSUIT_VS_OPTIMAL, Replan.OPEN_LOOP, DIVERGENT_HORIZON,
             math.inf),
    CellSpec("II", SCENARIO_2, OPTIMAL_VS_OPTIMAL, Replan.OPEN_LOOP, FINITE_HORIZON, 5.407),
    CellSpec("II", SCENARIO_2, OPTIMAL_VS_PURE_EVASION, Replan.EVERY_STEP, FINITE_HORIZON, 5.397),
    CellSpec("II", SCENARIO_2, PURE_PURSUIT_VS_OPTIMAL, Replan.OPEN_LOOP, DIVERGENT_HORIZON,
             math.inf),
)


def tolerance(dt: float) -> float:
    return max(2.0 * dt, 5e-3)


@dataclass(frozen=True)
class CellResult:
    spec: CellSpec
    trajectory: Trajectory
    tol: float

    @property
    def outcome(self):
        return self.trajectory.outcome

    @property
    def diverging(self) -> bool:
        return divergence_evidence(self.trajectory)

    @property
    def closest(self) -> tuple:
        """(minimum separation, time it occurs)."""
        sep = self.trajectory.separation
        i = int(sep.argmin())
        return float(sep[i]), float(self.trajectory.times[i])

    @property
    def passed(self) -> bool:
        if math.isinf(self.spec.reference):
            return not self.outcome.captured and self.diverging
        return self.outcome.captured and abs(self.outcome.time - self.spec.reference) <= self.tol


def run_cell(spec: CellSpec, dt: float = 1e-3) -> CellResult:
    cfg = spec.config
    traj = run_game(cfg.state, cfg.params, spec.policies, dt, spec.horizon, spec.replan)
    return CellResult(spec, traj, tolerance(dt))


def run_table(dt: float = 1e-3) -> list:
    return [run_cell(spec, dt) for spec in CELLS]
