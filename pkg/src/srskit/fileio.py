"""Deterministic artifact files: CSV tables, JSON trajectories, manifests.

All floats are written with a fixed "%.12e" format and files are written
atomically (temp file then rename), so reruns with the same seed and
configuration produce byte-identical outputs.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

import numpy as np

from .errors import SrsKitError
from .gaits import GaitCurveSet
from .ik import JointTrajectory
from .robot import NUM_SECTIONS

FLOAT_FMT = "%.12e"

CURVE_COLUMNS = ["t", "point_index", "x", "y", "z", "qw", "qx", "qy", "qz"]
JOINT_COLUMNS = ["t"] + [
    f"l{i}{j}" for i in range(1, NUM_SECTIONS + 1) for j in (1, 2, 3)
]
SCHEDULE_COLUMNS = ["t"] + [
    f"p{i}{j}" for i in range(1, NUM_SECTIONS + 1) for j in (1, 2, 3)
]


def _fmt(x: float) -> str:
    return FLOAT_FMT % float(x)


def atomic_write_text(path, text: str) -> None:
    """Write text to ``path`` via a temp file and atomic rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def sha256_of_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_curves_csv(path, curve_set: GaitCurveSet) -> None:
    """Per-point rows of every curve instance: projected position in the
    robot frame plus the quaternion of the point's global-frame local frame."""
    lines = [",".join(CURVE_COLUMNS)]
    for curve in curve_set.curves:
        for idx, (point, frame) in enumerate(zip(curve.points, curve.source_frames)):
            quat = frame.quaternion()
            lines.append(
                ",".join(
                    [_fmt(curve.timestamp), str(idx)]
                    + [_fmt(v) for v in point]
                    + [_fmt(v) for v in quat]
                )
            )
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_joints_csv(path, traj: JointTrajectory) -> None:
    """All 12 actuator length changes per frame."""
    lengths = traj.full_lengths()
    lines = [",".join(JOINT_COLUMNS)]
    for t, row in zip(traj.times, lengths):
        lines.append(",".join([_fmt(t)] + [_fmt(v) for v in row]))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_schedule_csv(path, times: np.ndarray, values: np.ndarray) -> None:
    """Resampled pressure commands on the uniform control grid."""
    lines = [",".join(SCHEDULE_COLUMNS)]
    for t, row in zip(times, values):
        lines.append(",".join([_fmt(t)] + [_fmt(v) for v in row]))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_joints_json(path, traj: JointTrajectory) -> None:
    """Full trajectory with solver diagnostics, for lossless reload."""
    payload = {
        "kind": traj.kind,
        "period": traj.period,
        "smoothness_bound": traj.smoothness_bound,
        "times": traj.times.tolist(),
        "q": traj.q.tolist(),
        "residuals": traj.residuals.tolist(),
        "costs": traj.costs.tolist(),
        "converged": [bool(c) for c in traj.converged],
        "iterations": [int(i) for i in traj.iterations],
        "metadata": traj.metadata,
    }
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_joints_json(path) -> JointTrajectory:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SrsKitError(f"cannot read trajectory file {path}: {exc}") from exc
    return JointTrajectory(
        times=np.asarray(payload["times"], dtype=float),
        q=np.asarray(payload["q"], dtype=float),
        kind=payload["kind"],
        period=float(payload["period"]),
        residuals=np.asarray(payload["residuals"], dtype=float),
        costs=np.asarray(payload["costs"], dtype=float),
        converged=np.asarray(payload["converged"], dtype=bool),
        iterations=np.asarray(payload["iterations"], dtype=int),
        smoothness_bound=float(payload.get("smoothness_bound", 0.02)),
        metadata=payload.get("metadata", {}),
    )


def write_manifest(path, manifest: dict) -> None:
    atomic_write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
