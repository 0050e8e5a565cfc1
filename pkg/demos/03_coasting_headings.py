"""
Choosing the heading once the pursuer saturates
===============================================

After saturation the capture time is a function of the pursuer's
acceleration heading.  Only some headings give a real capture time, and
the evader picks the one that delays capture the most.
"""

# %%
import math

import numpy as np

from pegame import GameParams, GameState, feasible_arcs, solve_phase2
from pegame.phase2 import admissible_capture_time_curve, heading_feasibility

state = GameState(0.0, 0.0, 0.0, 1.0, 5.0, 5.0)
params = GameParams(1.0, 2.0, 0.5)

# %%
arcs = feasible_arcs(state, params)
for d in arcs:
    print(f"admissible arc [{d.theta_lo:.4f}, {d.theta_hi:.4f}]  width {d.width:.4f}")

# %%
theta = np.linspace(0.0, 2 * math.pi, 3600, endpoint=False)
curve = admissible_capture_time_curve(state, theta, params)
i = int(np.nanargmax(curve))
sol = solve_phase2(state, params)
print(f"grid maximum  {curve[i]:.6f} at {theta[i]:.4f}")
print(f"search        {sol.t_f:.6f} at {sol.theta_P_star:.4f}")

# %%
# aiming straight at the evader is not admissible here
los = math.atan2(5.5, 5.0)
print("feasibility at the line of sight:", heading_feasibility(state, los, params))

# %%
# The admissible set can split in two.  The best heading may then sit on
# the arc away from heading zero.
split = GameState(-0.4330092033618569, 0.8770353124959938, 0.14563017954998153,
                  -1.444551522605171, -0.15184864848159962, 0.24485927540246522)
split_params = GameParams(1.6612160470775306, 2.049762639018167, 0.8398193775896907)
for d in feasible_arcs(split, split_params):
    print(f"arc [{d.theta_lo:.4f}, {d.theta_hi:.4f}]")
print("t_f =", solve_phase2(split, split_params).t_f)
