"""
Playing the game in discrete time
=================================

Simulate optimal play and the line-of-sight baselines, then look at what
happens when the optimal plan is re-solved along the way.
"""

# %%
from pegame import GameParams, GameState, Replan, run_game, solve
from pegame.simulation import NAMED_POLICIES

state = GameState(0.0, 0.0, 0.0, 1.0, 5.0, 5.0)
params = GameParams(1.0, 2.0, 0.5)
print("analytic t_f", solve(state, params).t_f)

# %%
for name, kind in NAMED_POLICIES.items():
    traj = run_game(state, params, kind, dt=1e-3, horizon=20.0)
    print(f"{name:30s} {traj.outcome.kind.value:9s} t = {traj.outcome.time:7.3f}  "
          f"closest {traj.separation.min():.4f}")

# %%
# The optimal pursuer needs to re-plan to punish a non-optimal evader; the
# open-loop run above replays a plan made for the optimal one.
kind = NAMED_POLICIES["optimal-vs-pure-evasion"]
traj = run_game(state, params, kind, 1e-3, 10.0, Replan.EVERY_STEP)
print(f"re-planning pursuer: {traj.outcome.kind.value}, closest {traj.separation.min():.4f}")

# %%
# Re-solving every tick reproduces open-loop optimal play.
for mode in Replan:
    traj = run_game(state, params, NAMED_POLICIES["optimal-vs-optimal"], 1e-3, 10.0, mode)
    print(f"{mode.value:10s} captured at {traj.outcome.time:.3f}")

# %%
# Open-loop optimal plans are not time consistent: re-solving from a point
# on the optimal path can give the evader a little more time.
traj = run_game(state, params, NAMED_POLICIES["optimal-vs-optimal"], 1e-3, 10.0)
t_f = solve(state, params).t_f
for frac in (0.1, 0.5, 0.9):
    k = int(frac * t_f / 1e-3)
    s = GameState.from_array(traj.states[k])
    print(f"at t = {traj.times[k]:.3f}: remaining {solve(s, params).t_f:.4f}, "
          f"planned {t_f - traj.times[k]:.4f}")
