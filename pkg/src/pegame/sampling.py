"""Random solvable game instances for sweeps and property checks."""

from __future__ import annotations

import math

import numpy as np

from .core import GameParams, GameState, Phase
from .solver import solve


def _draw(rng: np.random.Generator, phase: Phase | None):
    a = rng.uniform(0.5, 2.0)
    vE = rng.uniform(0.0, 1.0)
    r = rng.uniform(0.5, 6.0)
    ang = rng.uniform(0.0, 2.0 * math.pi)
    speed = rng.uniform(0.0, 2.0)
    head = rng.uniform(0.0, 2.0 * math.pi)
    vx, vy = speed * math.cos(head), speed * math.sin(head)
    if phase is Phase.PRE_SATURATION:
        # a distant speed cap keeps P unsaturated for the whole game
        vP = 1e3
    elif phase is Phase.POST_SATURATION:
        vP = max(speed, vE) + rng.uniform(0.2, 1.5)
    else:
        vP = max(speed, vE) + rng.uniform(0.2, 6.0)
    x0, y0 = rng.uniform(-3.0, 3.0, size=2)
    state = GameState(x0, y0, vx, vy, x0 + r * math.cos(ang), y0 + r * math.sin(ang))
    return state, GameParams(a_P_max=a, v_P_max=vP, v_E_max=vE)


def random_instance(rng: np.random.Generator, phase: Phase | None = None,
                    max_tries: int = 1000, smooth: bool = False):
    """Draw ``(state, params, result)`` whose solution lies in ``phase``.

    ``phase=None`` accepts whichever phase the solver lands in.  With
    ``smooth=True``, states whose post-saturation maximiser sits on the edge
    of the admissible heading arc (where the value has a kink) are redrawn.
    """
    for _ in range(max_tries):
        state, params = _draw(rng, phase)
        result = solve(state, params)
        if phase is not None and result.solution.phase is not phase:
            continue
        if smooth and result.solution.info.get("on_edge"):
            continue
        return state, params, result
    raise RuntimeError(f"no {phase} instance after {max_tries} draws")


def random_instances(seed: int, n: int, phase: Phase | None = None, smooth: bool = False):
    rng = np.random.default_rng(seed)
    return [random_instance(rng, phase, smooth=smooth) for _ in range(n)]
