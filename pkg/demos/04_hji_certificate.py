"""
Checking the value function against the HJI equation
====================================================

The capture time V = t_f should satisfy the Hamilton-Jacobi-Isaacs equation
with the optimal controls plugged in.  The analytic gradient is compared
with central finite differences of the solver itself.
"""

# %%
import numpy as np

from pegame import GameParams, GameState, Phase
from pegame.sampling import random_instances
from pegame.verification import (fd_gradient, gradient_error, hji_residual, scenario_one_sweep,
                                 switch_continuity_check, value_gradient)

for state, params in ((GameState(0, 0, 0, 1, 1, 1), GameParams(1, 10, 0.5)),
                      (GameState(0, 0, 0, 1, 5, 5), GameParams(1, 2, 0.5))):
    g = value_gradient(state, params)
    err = gradient_error(g, fd_gradient(state, params))
    print(f"residual {hji_residual(state, params): .2e}   gradient error {err:.2e}")

# %%
# a small random sweep per phase
for phase in Phase:
    res = [abs(hji_residual(s, p)) for s, p, _ in random_instances(1, 50, phase, smooth=True)]
    print(f"{phase}: max residual {np.max(res):.2e}")

# %%
# sweeping the speed cap moves the first scenario across the phase boundary;
# the value is continuous there
rep = switch_continuity_check(scenario_one_sweep())
print(f"jump {rep.jump:.2e}  heading gap {rep.theta_gap:.2e}  passed {rep.passed}")
