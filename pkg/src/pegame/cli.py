"""Command-line entry point: ``pegame {solve,simulate,verify,table1}``.

Exit codes: 0 success, 1 invalid input, 2 tolerance failure, 3 solver error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from .config import PRESETS, SCENARIO_1, ConfigError, ScenarioConfig
from .errors import GameError
from .simulation import SimulationError, run_game
from .solver import solve
from . import table1 as tbl
from .verification import (GRADIENT_TOL, RESIDUAL_TOL, SWEEP_V_END, SWEEP_V_START,
                           ValueGradient, run_verification)

EXIT_OK, EXIT_INVALID, EXIT_TOLERANCE, EXIT_SOLVER = 0, 1, 2, 3

TRAJECTORY_HEADER = ("t", "x_P", "y_P", "v_Px", "v_Py", "x_E", "y_E",
                     "a_P", "theta_P", "v_E", "theta_E")


def fmt(x) -> str:
    """Numbers with 9 significant digits; everything else via str."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int, float)):
        return f"{x:.9g}"
    return str(x)


def record(fields: dict) -> str:
    """``key = value`` lines, readable back by ScenarioConfig's parser style."""
    return "".join(f"{k} = {fmt(v)}\n" for k, v in fields.items())


def _emit(text: str, out_dir: Path | None, name: str):
    sys.stdout.write(text)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_text(text)


def load_config(args) -> ScenarioConfig:
    base = PRESETS[args.preset] if args.preset else SCENARIO_1
    cfg = base
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as err:
            raise ConfigError(f"cannot read config {args.config}: {err}") from err
        cfg = ScenarioConfig.from_text(text, base=base)
    changes = {k: getattr(args, k) for k in ("dt", "horizon", "seed")
               if getattr(args, k) is not None}
    if args.out is not None:
        changes["output_path"] = args.out
    try:
        return cfg.replace(**changes)
    except (GameError, ValueError) as err:
        raise ConfigError(str(err)) from err


def _out_dir(args, cfg) -> Path | None:
    return Path(cfg.output_path) if args.out is not None else None


def cmd_solve(args) -> int:
    cfg = load_config(args)
    result = solve(cfg.state, cfg.params)
    sol = result.solution
    fields = {"t_f": sol.t_f, "phase": sol.phase.value, "theta_P_star": sol.theta_P_star,
              "theta_E_star": sol.theta_E_star, "capture_x": sol.capture_point[0],
              "capture_y": sol.capture_point[1], "t_theta_star": sol.t_theta_star,
              "candidates_examined": "[" + ", ".join(
                  f"({fmt(t)}, {fmt(tt)})" for t, tt in result.candidates_examined) + "]"}
    _emit(record(fields), _out_dir(args, cfg), "solution.txt")
    return EXIT_OK


def write_trajectory(path: Path, traj) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRAJECTORY_HEADER)
        for t, s, c in zip(traj.times, traj.states, traj.commands):
            writer.writerow([fmt(float(x)) for x in (t, *s, *c)])


def cmd_simulate(args) -> int:
    cfg = load_config(args)
    code = EXIT_OK
    try:
        traj = run_game(cfg.state, cfg.params, cfg.policies, cfg.dt, cfg.horizon, cfg.replan)
    except SimulationError as err:
        traj, code = err.trajectory, EXIT_SOLVER
        print(f"error: {err}", file=sys.stderr)
    out = Path(cfg.output_path)
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory(out / "trajectory.csv", traj)
    summary = {"policies": str(cfg.policies), "replan": cfg.replan.value, "dt": cfg.dt,
               "horizon": cfg.horizon, "outcome": traj.outcome.kind.value,
               "capture_time": traj.outcome.time if traj.outcome.captured else math.inf,
               "end_time": traj.outcome.time, "samples": len(traj),
               "min_separation": float(traj.separation.min())}
    if code != EXIT_OK:
        summary["outcome"] = "SolverError"
    _emit(record(summary), out, "summary.txt")
    return code


def _corrupt(grad: ValueGradient) -> ValueGradient:
    return ValueGradient.from_array(grad.as_array() * 1.01)


def _echo_state(label, pair):
    if pair is None:
        return ""
    state, params = pair
    fields = {f"{label}.{k}": getattr(state, k)
              for k in ("x_P", "y_P", "v_Px", "v_Py", "x_E", "y_E")}
    fields.update({f"{label}.{k}": getattr(params, k)
                   for k in ("a_P_max", "v_P_max", "v_E_max")})
    return record(fields)


def cmd_verify(args) -> int:
    cfg = load_config(args)
    hook = _corrupt if args.corrupt_gradient else None
    rep = run_verification(cfg.seed, args.states, args.gradient_states, gradient_hook=hook)
    c = rep.continuity
    fields = {"seed": rep.seed}
    fields.update({f"residual_states.{k}": v for k, v in rep.residual_counts.items()})
    fields.update({f"gradient_states.{k}": v for k, v in rep.gradient_counts.items()})
    fields.update({"max_residual": rep.max_residual, "residual_tol": RESIDUAL_TOL,
                   "max_gradient_error": rep.max_gradient_error, "gradient_tol": GRADIENT_TOL,
                   "continuity_jump": c.jump, "continuity_theta_gap": c.theta_gap,
                   "continuity_v_P_max":
                       SWEEP_V_START + (SWEEP_V_END - SWEEP_V_START) * c.s_star,
                   "passed": rep.passed})
    text = record(fields)
    if rep.max_residual > RESIDUAL_TOL:
        text += _echo_state("worst_residual", rep.worst_residual)
    if rep.max_gradient_error > GRADIENT_TOL:
        text += _echo_state("worst_gradient", rep.worst_gradient)
    _emit(text, _out_dir(args, cfg), "verify.txt")
    return EXIT_OK if rep.passed else EXIT_TOLERANCE


def cmd_table1(args) -> int:
    dt = args.dt if args.dt is not None else 1e-3
    if not dt > 0.0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    rows = ["scenario  policies                              replan     reference  "
            "outcome    time         tol         pass  closest_approach"]
    ok = True
    for res in tbl.run_table(dt):
        s = res.spec
        ref = "+inf" if math.isinf(s.reference) else fmt(s.reference)
        ok &= res.passed
        rows.append(f"{s.scenario:<9} {str(s.policies):<37} {s.replan.value:<10} {ref:<10} "
                     f"{res.outcome.kind.value:<10} {fmt(res.outcome.time):<12} "
                     f"{fmt(res.tol):<11} {'PASS' if res.passed else 'FAIL'}  "
                     f"{fmt(res.closest[0])} at t = {fmt(res.closest[1])}")
    text = "\n".join(rows) + "\n"
    _emit(text, Path(args.out) if args.out is not None else None, "table1.txt")
    return EXIT_OK if ok else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value scenario file")
    common.add_argument("--preset", choices=sorted(PRESETS), help="start from a built-in scenario")
    common.add_argument("--dt", type=float, help="simulation step")
    common.add_argument("--horizon", type=float, help="simulation horizon")
    common.add_argument("--seed", type=int, help="seed for randomized sweeps")
    common.add_argument("--out", metavar="DIR", help="directory for output files")

    parser = argparse.ArgumentParser(prog="pegame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="optimal capture time and strategies")
    sub.add_parser("simulate", parents=[common], help="run one game and write its trajectory")
    p = sub.add_parser("verify", parents=[common], help="HJI, gradient and continuity checks")
    p.add_argument("--states", type=int, default=500, help="states in the residual sweep")
    p.add_argument("--gradient-states", type=int, default=200,
                   help="states per phase in the finite-difference comparison")
    p.add_argument("--corrupt-gradient", action="store_true", help=argparse.SUPPRESS)
    sub.add_parser("table1", parents=[common], help="capture-time table for both scenarios")
    return parser


COMMANDS = {"solve": cmd_solve, "simulate": cmd_simulate, "verify": cmd_verify,
            "table1": cmd_table1}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as err:
        print(f"invalid input: {err}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, GameError) as err:
        kind = "invalid input" if isinstance(err, ValueError) else "solver error"
        print(f"{kind}: {err}", file=sys.stderr)
        return EXIT_INVALID if isinstance(err, ValueError) else EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
