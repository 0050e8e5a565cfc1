"""
Reachability circles and the tangency quartic
=============================================

Under full thrust along a fixed heading the pursuer can be anywhere on a
circle centred at p0 + v0 t with radius a t^2 / 2.  The evader's circle is
centred at e0 with radius v_E t.  Capture first becomes unavoidable when the
evader circle is inscribed in the pursuer's.
"""

# %%
import math

import numpy as np

from pegame import GameParams, GameState, candidate_capture_times
from pegame.phase1 import (gamma, gamma_quartic_coeffs, intercept_time, reachability_circles,
                           tangency_point, time_threshold)

state = GameState(0.0, 0.0, 0.0, 1.0, 1.0, 1.0)
params = GameParams(1.0, 10.0, 0.5)

# %%
print("quartic coefficients:", gamma_quartic_coeffs(state, params))
print("roots are kept from t >=", time_threshold(params))
ts = candidate_capture_times(state, params)
print("candidates:", ts)

# %%
# the tangency condition along a time grid
for t in np.linspace(0.0, 3.0, 7):
    print(f"t = {t:.2f}  Gamma = {gamma(state, t, params): .4f}")

# %%
t_f = ts[0]
c = reachability_circles(state, t_f, params)
gap = math.dist(c.c_P, c.c_E)
print(f"centre gap {gap:.6f}  radius difference {c.R_P - c.R_E:.6f}")
print("tangency point", tangency_point(state, t_f, params))

# %%
# Whatever straight line the evader takes, the pursuer's circle has
# swallowed it by t_f.  Only the optimal heading takes the full t_f.
headings = np.linspace(0.0, 2 * math.pi, 720, endpoint=False)
late = np.array([intercept_time(state, th, params) for th in headings])
print(f"latest intercept {late.max():.6f} vs t_f {t_f:.6f}")
