"""
Solving the game from two starting states
=========================================

A pursuer starting at the origin with velocity (0, 1) chases an evader.
With a high speed cap the capture happens while the pursuer is still
accelerating; with a low one it saturates first and coasts.
"""

# %%
from pegame import GameParams, GameState, Phase, solve

start_near = GameState(0.0, 0.0, 0.0, 1.0, 1.0, 1.0)
start_far = GameState(0.0, 0.0, 0.0, 1.0, 5.0, 5.0)

fast = GameParams(a_P_max=1.0, v_P_max=10.0, v_E_max=0.5)
capped = GameParams(a_P_max=1.0, v_P_max=2.0, v_E_max=0.5)

# %%
for label, state, params in (("near, fast cap", start_near, fast),
                             ("far, low cap", start_far, capped)):
    res = solve(state, params)
    sol = res.solution
    print(f"{label:15s} t_f = {sol.t_f:.4f}  phase = {sol.phase}")
    print(f"{'':15s} capture point = ({sol.capture_point[0]:.3f}, {sol.capture_point[1]:.3f})")
    print(f"{'':15s} headings  P {sol.theta_P_star:.4f}  E {sol.theta_E_star:.4f}")

# %%
# In the pre-saturation phase both players run along the same heading.
sol = solve(start_near, fast).solution
assert sol.phase is Phase.PRE_SATURATION
print(abs(sol.theta_P_star - sol.theta_E_star))

# %%
# Lowering the cap moves the first start into the coasting phase too.
for v in (10.0, 3.0, 2.0, 1.8, 1.7, 1.5):
    s = solve(start_near, GameParams(1.0, v, 0.5)).solution
    print(f"v_P_max = {v:4.1f}  t_f = {s.t_f:.4f}  {s.phase}")
