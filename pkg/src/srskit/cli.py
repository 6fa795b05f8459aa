"""Command line front end.

Subcommands::

    srskit gait     -g sidewinding.ini -o out/        curve synthesis only
    srskit ik       -g sidewinding.ini -o out/        curves + jointspace solve
    srskit schedule -g sidewinding.ini -o out/ -t out/joints.json
                                                      pressures from a saved solve
    srskit run      -g sidewinding.ini -o out/        full pipeline
    srskit sweep    -g helical_rolling.ini -o out/    frequency x amplitude grid

Config files resolve against ``--config-dir``, which defaults to the
``SRSKIT_CONFIG_DIR`` environment variable or ``./configs``. Exit codes:
0 success, 2 configuration error, 3 solver nonconvergence, 4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import fileio, pipeline
from .configio import load_gait_settings, load_robot_config
from .errors import ConfigError, NoConvergenceError, SrsKitError
from .gaits import build_curve_set
from .pressure import map_pressures, resample_schedule

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IO = 4


def _config_dir(args) -> str:
    return args.config_dir or os.environ.get("SRSKIT_CONFIG_DIR", "configs")


def _resolve(args, name: str) -> str:
    if os.path.exists(name) or os.path.isabs(name):
        return name
    return os.path.join(_config_dir(args), name)


def _overrides(args) -> dict:
    out = {
        "lam": getattr(args, "lam", None),
        "phase_shift": getattr(args, "phase_shift", None),
        "samples_per_period": getattr(args, "nt", None),
        "samples_per_curve": getattr(args, "ns", None),
        "rate": getattr(args, "rate", None),
        "duration": getattr(args, "duration", None),
    }
    return {k: v for k, v in out.items() if v is not None}


def _load(args):
    robot_path = _resolve(args, args.robot)
    gait_path = _resolve(args, args.gait)
    robot = load_robot_config(robot_path)
    settings = pipeline.apply_overrides(load_gait_settings(gait_path), _overrides(args))
    return robot_path, gait_path, robot, settings


def cmd_gait(args) -> int:
    _, _, robot, settings = _load(args)
    curve_set = build_curve_set(settings.kind, settings.gait, robot)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "curves.csv")
    fileio.write_curves_csv(path, curve_set)
    print(f"wrote {path} ({len(curve_set.curves)} curve instances)")
    return EXIT_OK


def cmd_ik(args) -> int:
    _, _, robot, settings = _load(args)
    traj = pipeline.solve_settings(robot, settings, seed=args.seed, kernel=args.kernel)
    pipeline.check_convergence(traj, settings.solver.max_unconverged_frac)
    os.makedirs(args.out, exist_ok=True)
    fileio.write_joints_csv(os.path.join(args.out, "joints.csv"), traj)
    fileio.write_joints_json(os.path.join(args.out, "joints.json"), traj)
    print(
        f"solved {len(traj)} frames, mean residual "
        f"{traj.residuals.mean() * 1e3:.2f} mm, wrote {args.out}/joints.csv"
    )
    return EXIT_OK


def cmd_schedule(args) -> int:
    _, _, robot, settings = _load(args)
    if args.trajectory:
        traj = fileio.read_joints_json(args.trajectory)
    else:
        traj = pipeline.solve_settings(robot, settings, seed=args.seed, kernel=args.kernel)
        pipeline.check_convergence(traj, settings.solver.max_unconverged_frac)
    ptraj = map_pressures(traj, settings.pressure)
    times, values = resample_schedule(ptraj, settings.schedule)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "schedule.csv")
    fileio.write_schedule_csv(path, times, values)
    print(f"wrote {path} ({values.shape[0]} x {values.shape[1]} samples)")
    return EXIT_OK


def cmd_run(args) -> int:
    robot_path = _resolve(args, args.robot)
    gait_path = _resolve(args, args.gait)
    manifest = pipeline.run_pipeline(
        robot_path,
        gait_path,
        args.out,
        seed=args.seed,
        kernel=args.kernel,
        overrides=_overrides(args),
    )
    print(
        f"{manifest['kind']}: {manifest['frames']} frames, mean residual "
        f"{manifest['residuals']['mean'] * 1e3:.2f} mm, manifest at "
        f"{os.path.join(args.out, 'manifest.json')}"
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    robot_path = _resolve(args, args.robot)
    gait_path = _resolve(args, args.gait)
    if args.f_start > args.f_stop or args.f_step <= 0.0:
        raise ConfigError("need f-start <= f-stop and a positive f-step")
    frequencies = np.round(
        np.arange(args.f_start, args.f_stop + 1e-9, args.f_step), 10
    )
    manifest = pipeline.run_sweep(
        robot_path,
        gait_path,
        args.out,
        frequencies=frequencies,
        amplitude_scales=args.amplitudes,
        seed=args.seed,
        kernel=args.kernel,
        overrides=_overrides(args),
    )
    print(
        f"{manifest['kind']}: {len(manifest['runs'])} schedules, manifest at "
        f"{os.path.join(args.out, 'sweep_manifest.json')}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-r", "--robot", default="robot.ini", help="robot config file")
    common.add_argument("-g", "--gait", required=True, help="gait config file")
    common.add_argument("-o", "--out", default="out", help="output directory")
    common.add_argument("--config-dir", default=None, help="config search directory")
    common.add_argument("--seed", type=int, default=0, help="random restart seed")
    common.add_argument("--kernel", default=None, help="kernel backend (auto/compiled/python)")
    common.add_argument("--lam", type=float, default=None, help="regularization weight")
    common.add_argument(
        "--phase-shift", type=float, default=None, help="per-section rolling phase shift [rad]"
    )
    common.add_argument("--nt", type=int, default=None, help="curve instances per period")
    common.add_argument("--ns", type=int, default=None, help="points per curve instance")
    common.add_argument("--rate", type=float, default=None, help="control rate [Hz]")
    common.add_argument("--duration", type=float, default=None, help="schedule duration [s]")

    parser = argparse.ArgumentParser(
        prog="srskit",
        description="Gait synthesis pipeline for a four-section soft robotic snake.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gait", parents=[common], help="generate one period of gait curves").set_defaults(
        func=cmd_gait
    )
    sub.add_parser("ik", parents=[common], help="solve the jointspace trajectory").set_defaults(
        func=cmd_ik
    )
    p = sub.add_parser("schedule", parents=[common], help="map and resample pressures")
    p.add_argument(
        "-t", "--trajectory", default=None, help="reuse a saved joints.json instead of solving"
    )
    p.set_defaults(func=cmd_schedule)
    sub.add_parser("run", parents=[common], help="full pipeline with manifest").set_defaults(
        func=cmd_run
    )
    p = sub.add_parser("sweep", parents=[common], help="frequency x amplitude schedule grid")
    p.add_argument("--f-start", type=float, default=0.25, help="first frequency [Hz]")
    p.add_argument("--f-stop", type=float, default=1.0, help="last frequency [Hz]")
    p.add_argument("--f-step", type=float, default=0.05, help="frequency step [Hz]")
    p.add_argument(
        "--amplitudes",
        type=float,
        nargs="+",
        default=[1.0],
        help="jointspace amplitude scale factors",
    )
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoConvergenceError as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SrsKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
