"""End-to-end orchestration: configs in, artifact files out.

``run_pipeline`` is the single-run path (curves, IK, pressures, resampled
schedule, manifest). ``run_sweep`` reuses one solved base trajectory and
rescales it over a frequency and amplitude grid, emitting one schedule per
grid point; the gait frequency is realized by scaling the trajectory period
before resampling and the amplitude by a scalar multiplier on the
jointspace solution.
"""

from __future__ import annotations

import os
from dataclasses import asdict, fields, replace

import numpy as np

from . import fileio
from .configio import GaitSettings, load_gait_settings, load_robot_config
from .errors import ConfigError, NoConvergenceError
from .gaits import build_curve_set
from .ik import JointTrajectory, solve_period
from .pressure import map_pressures, resample_schedule
from .robot import RobotConfig

SCHEMA_VERSION = 1


def apply_overrides(settings: GaitSettings, overrides: dict | None) -> GaitSettings:
    """Apply flat key=value overrides to whichever settings block owns the key."""
    if not overrides:
        return settings
    blocks = {
        "gait": settings.gait,
        "solver": settings.solver,
        "pressure": settings.pressure,
        "schedule": settings.schedule,
    }
    owners = {
        f.name: block_name
        for block_name, block in blocks.items()
        for f in fields(block)
    }
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in owners:
            raise ConfigError(f"unknown override {key!r}")
        name = owners[key]
        blocks[name] = replace(blocks[name], **{key: value})
    return GaitSettings(
        kind=settings.kind,
        gait=blocks["gait"],
        solver=blocks["solver"],
        pressure=blocks["pressure"],
        schedule=blocks["schedule"],
    )


def _residual_stats(traj: JointTrajectory) -> dict:
    return {
        "mean": float(traj.residuals.mean()),
        "max": float(traj.residuals.max()),
        "min": float(traj.residuals.min()),
    }


def check_convergence(traj: JointTrajectory, max_unconverged_frac: float) -> float:
    frac = 1.0 - float(np.mean(traj.converged))
    if frac > max_unconverged_frac:
        raise NoConvergenceError(
            f"{frac:.0%} of frames failed to converge "
            f"(allowed {max_unconverged_frac:.0%})"
        )
    return frac


def solve_settings(
    robot: RobotConfig,
    settings: GaitSettings,
    seed: int = 0,
    kernel: str | None = None,
) -> JointTrajectory:
    """Curve synthesis plus full-period IK for one configuration."""
    curve_set = build_curve_set(settings.kind, settings.gait, robot)
    solver = settings.solver
    return solve_period(
        curve_set,
        robot,
        lam=solver.lam,
        starts=solver.starts,
        maxiter=solver.maxiter,
        seed=seed,
        smoothness_bound=solver.smoothness_bound,
        kernel=kernel,
    )


def run_pipeline(
    robot_path,
    gait_path,
    out_dir,
    seed: int = 0,
    kernel: str | None = None,
    overrides: dict | None = None,
) -> dict:
    """Full single-gait run; returns the manifest that was written.

    Both configuration files are parsed up front, so a bad config produces
    no partial outputs.
    """
    robot = load_robot_config(robot_path)
    settings = apply_overrides(load_gait_settings(gait_path), overrides)

    curve_set = build_curve_set(settings.kind, settings.gait, robot)
    solver = settings.solver
    traj = solve_period(
        curve_set,
        robot,
        lam=solver.lam,
        starts=solver.starts,
        maxiter=solver.maxiter,
        seed=seed,
        smoothness_bound=solver.smoothness_bound,
        kernel=kernel,
    )
    unconverged_frac = check_convergence(traj, solver.max_unconverged_frac)
    ptraj = map_pressures(traj, settings.pressure)
    times, values = resample_schedule(ptraj, settings.schedule)

    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "curves": os.path.join(out_dir, "curves.csv"),
        "joints": os.path.join(out_dir, "joints.csv"),
        "trajectory": os.path.join(out_dir, "joints.json"),
        "schedule": os.path.join(out_dir, "schedule.csv"),
    }
    fileio.write_curves_csv(paths["curves"], curve_set)
    fileio.write_joints_csv(paths["joints"], traj)
    fileio.write_joints_json(paths["trajectory"], traj)
    fileio.write_schedule_csv(paths["schedule"], times, values)

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": settings.kind,
        "seed": seed,
        "kernel": traj.metadata.get("kernel"),
        "configs": {
            "robot": {
                "path": str(robot_path),
                "sha256": fileio.sha256_of_file(robot_path),
            },
            "gait": {
                "path": str(gait_path),
                "sha256": fileio.sha256_of_file(gait_path),
            },
        },
        "gait_params": asdict(settings.gait),
        "solver": asdict(solver),
        "pressure_map": asdict(settings.pressure),
        "schedule": {
            "rate": settings.schedule.rate,
            "duration": settings.schedule.duration,
            "samples": int(values.shape[0]),
            "channels": int(values.shape[1]),
        },
        "frames": len(traj),
        "residuals": _residual_stats(traj),
        "closure_error": traj.closure_error(),
        "smoothness_violations": len(traj.smoothness_violations()),
        "unconverged_fraction": unconverged_frac,
        "clamp_count": ptraj.clamp_count,
        "solver_passes": traj.metadata.get("passes"),
        "outputs": {
            name: {
                "path": os.path.basename(path),
                "sha256": fileio.sha256_of_file(path),
            }
            for name, path in paths.items()
        },
    }
    fileio.write_manifest(os.path.join(out_dir, "manifest.json"), manifest)
    return manifest


def default_frequency_grid() -> np.ndarray:
    return np.round(np.arange(0.25, 1.0 + 1e-9, 0.05), 10)


def run_sweep(
    robot_path,
    gait_path,
    out_dir,
    frequencies=None,
    amplitude_scales=(1.0,),
    seed: int = 0,
    kernel: str | None = None,
    overrides: dict | None = None,
) -> dict:
    """Frequency x amplitude grid of pressure schedules.

    The base trajectory is solved once at the configured gait period; every
    grid point rescales it (period to 1/frequency, joint amplitudes by the
    scale factor), remaps pressures, resamples, and writes one schedule file
    plus a grid manifest.
    """
    robot = load_robot_config(robot_path)
    settings = apply_overrides(load_gait_settings(gait_path), overrides)
    if frequencies is None:
        frequencies = default_frequency_grid()

    base = solve_settings(robot, settings, seed=seed, kernel=kernel)
    check_convergence(base, settings.solver.max_unconverged_frac)

    os.makedirs(out_dir, exist_ok=True)
    entries = []
    for freq in frequencies:
        freq = float(freq)
        if freq <= 0.0:
            raise ConfigError(f"sweep frequency must be positive, got {freq}")
        time_scale = (1.0 / freq) / base.period
        for amp in amplitude_scales:
            amp = float(amp)
            traj = base.scaled(time_scale=time_scale, amplitude_scale=amp)
            ptraj = map_pressures(traj, settings.pressure)
            times, values = resample_schedule(ptraj, settings.schedule)
            name = f"schedule_f{freq:.2f}_a{amp:.2f}.csv"
            path = os.path.join(out_dir, name)
            fileio.write_schedule_csv(path, times, values)
            entries.append(
                {
                    "frequency": freq,
                    "amplitude_scale": amp,
                    "period": traj.period,
                    "clamp_count": ptraj.clamp_count,
                    "path": name,
                    "sha256": fileio.sha256_of_file(path),
                }
            )

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": settings.kind,
        "seed": seed,
        "kernel": base.metadata.get("kernel"),
        "configs": {
            "robot": {
                "path": str(robot_path),
                "sha256": fileio.sha256_of_file(robot_path),
            },
            "gait": {
                "path": str(gait_path),
                "sha256": fileio.sha256_of_file(gait_path),
            },
        },
        "base_residuals": _residual_stats(base),
        "schedule": {
            "rate": settings.schedule.rate,
            "duration": settings.schedule.duration,
        },
        "runs": entries,
    }
    fileio.write_manifest(os.path.join(out_dir, "sweep_manifest.json"), manifest)
    return manifest
