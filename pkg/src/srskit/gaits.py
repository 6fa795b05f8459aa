"""Taskspace gait curves: sidewinding, planar rolling, helical rolling.

Each gait produces one period of discretized curves. A curve instance is a
list of 3D points in the global frame {O}; a local frame is attached at its
first point and the points are projected into that frame, which is where
the robot base sits. Rolling curves are synthesized directly in the robot
frame by forward kinematics of an analytic joint pattern, so for them the
projection is the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateCurveError, DegenerateFrameError, OutOfRangeError
from .robot import NUM_SECTIONS, RobotConfig, robot_transform, sample_backbone
from .sections import BendParameters, SectionJoints, bend_to_joints
from .transforms import BasePose, PoseTransform

# Maps the robot's kinematic axes onto the curve-local axes: the robot
# backbone (+Z) leaves the base along the curve tangent (local X), and the
# robot +Y points along the curve-local up (local Z).
_AXIS_ALIGN = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])

_DENSE_SAMPLES = 2048


@dataclass(frozen=True)
class SidewindingParams:
    """Traveling-wave sidewinding curve parameters.

    The body parameter s in [0, 1] spans one spatial period of the lateral
    wave; the shared wave argument is tau = s / frequency_y - t.
    """

    amplitude_y: float = 0.2
    amplitude_z: float = 0.05
    frequency_y: float = 2.0
    frequency_z: float = 2.0
    phase: float = math.pi / 3.0
    period: float = 1.0
    samples_per_period: int = 20
    samples_per_curve: int = 61

    def __post_init__(self):
        if self.amplitude_y < 0.0 or self.amplitude_z < 0.0:
            raise ValueError("amplitudes must be non-negative")
        if self.frequency_y <= 0.0 or self.frequency_z <= 0.0:
            raise ValueError("frequencies must be positive")
        if self.period <= 0.0:
            raise ValueError("period must be positive")
        if self.samples_per_period < 2 or self.samples_per_curve < 2:
            raise ValueError("need at least 2 samples per period and per curve")


@dataclass(frozen=True)
class RollingParams:
    """Rolling gait: constant bend magnitude, rotating bend direction.

    ``phase_shift`` is the per-section offset of the bending direction:
    0 gives planar rolling, pi/3 the helical gait (cumulative shifts pi/3,
    2*pi/3, pi for sections 2-4).
    """

    rotation_rate: float = 2.0 * math.pi
    arc_angle: float = 0.5
    phase_shift: float = math.pi / 3.0
    period: float = 1.0
    samples_per_period: int = 20
    samples_per_curve: int = 61

    def __post_init__(self):
        if self.arc_angle < 0.0 or self.arc_angle > math.pi:
            raise OutOfRangeError("arc_angle must lie in [0, pi]")
        if self.period <= 0.0:
            raise ValueError("period must be positive")
        if self.samples_per_period < 2 or self.samples_per_curve < 2:
            raise ValueError("need at least 2 samples per period and per curve")


@dataclass
class FramedCurve:
    """One time instance: points in the robot frame plus their source frames.

    ``points`` are expressed in the robot coordinate frame {O_b};
    ``source_frames`` are the per-point local frames in the global frame {O};
    ``base_frame`` is the robot base pose in {O} used for the projection.
    """

    timestamp: float
    points: np.ndarray
    source_frames: list[PoseTransform]
    base_frame: PoseTransform

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        steps = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        if steps.size and steps.min() < 1e-12:
            raise DegenerateCurveError(
                f"repeated curve points at t={self.timestamp}"
            )


@dataclass
class GaitCurveSet:
    """All curve instances of one gait period, in temporal order."""

    kind: str
    curves: list[FramedCurve]
    period: float

    def __post_init__(self):
        times = [c.timestamp for c in self.curves]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("curve timestamps must be strictly increasing")


def sidewinding_curve(
    params: SidewindingParams, t: float, s, x_span: float | None = None
) -> np.ndarray:
    """Point(s) of the sidewinding curve at time t and body parameter s.

    ``x_span`` is the x-extent covered by one body length; when omitted the
    curve advances one meter per unit s (the discretization step solves for
    the span that gives the correct arc length).
    """
    s = np.asarray(s, dtype=float)
    span = 1.0 if x_span is None else x_span
    tau = s / params.frequency_y - t
    x = span * s
    y = params.amplitude_y * np.sin(2.0 * math.pi * params.frequency_y * tau)
    z = params.amplitude_z * np.sin(2.0 * math.pi * params.frequency_z * tau + params.phase)
    return np.stack(np.broadcast_arrays(x, y, z), axis=-1)


def _sidewinding_x_span(params: SidewindingParams, t: float, arc_length: float) -> float:
    """Solve for the x-extent that gives the requested curve arc length."""
    s_dense = np.linspace(0.0, 1.0, _DENSE_SAMPLES + 1)

    def length(span: float) -> float:
        pts = sidewinding_curve(params, t, s_dense, x_span=span)
        return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())

    wave_only = length(0.0)
    if wave_only >= arc_length:
        raise DegenerateCurveError(
            f"wave oscillation alone is {wave_only:.3f} m, longer than the "
            f"requested curve length {arc_length:.3f} m"
        )
    hi = arc_length
    while length(hi) < arc_length:
        hi *= 2.0
    return brentq(lambda c: length(c) - arc_length, 0.0, hi, xtol=1e-12)


def discretize_sidewinding(
    params: SidewindingParams, arc_length: float
) -> list[tuple[float, np.ndarray]]:
    """One period of sidewinding curves, reparametrized by arc length.

    Each instance carries ``samples_per_curve`` points spaced uniformly in
    arc length so that the curve exactly carries ``arc_length``.
    """
    out = []
    s_dense = np.linspace(0.0, 1.0, _DENSE_SAMPLES + 1)
    for n in range(params.samples_per_period):
        t = n * params.period / params.samples_per_period
        span = _sidewinding_x_span(params, t, arc_length)
        dense = sidewinding_curve(params, t, s_dense, x_span=span)
        seg = np.linalg.norm(np.diff(dense, axis=0), axis=1)
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        stations = np.linspace(0.0, cum[-1], params.samples_per_curve)
        s_at = np.interp(stations, cum, s_dense)
        out.append((t, sidewinding_curve(params, t, s_at, x_span=span)))
    return out


def rolling_joint_pattern(
    params: RollingParams, config: RobotConfig, t: float
) -> tuple[SectionJoints, ...]:
    """Analytic joint pattern of the rolling gaits at time t (no shift on
    section 1, cumulative shifts on the following sections)."""
    joints = []
    for i in range(NUM_SECTIONS):
        theta = params.rotation_rate * t + i * params.phase_shift
        bend = BendParameters(theta, params.arc_angle)
        joints.append(bend_to_joints(bend, config.sections[i], check_bounds=False))
    return tuple(joints)


def rolling_curve(
    params: RollingParams, config: RobotConfig, t: float, s
) -> np.ndarray:
    """Point(s) of the rolling taskspace curve, generated by forward
    kinematics of the analytic joint pattern (robot frame = global frame)."""
    joints = rolling_joint_pattern(params, config, t)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    pts = np.array(
        [
            robot_transform(BasePose(), joints, config, float(si) * NUM_SECTIONS).translation
            for si in s
        ]
    )
    return pts if pts.shape[0] > 1 else pts[0]


def discretize_rolling(
    params: RollingParams, config: RobotConfig
) -> list[tuple[float, np.ndarray]]:
    """One period of rolling curves sampled on the backbone grid."""
    n_per, rem = divmod(params.samples_per_curve - 1, NUM_SECTIONS)
    if rem != 0 or n_per < 1:
        raise ValueError("samples_per_curve must be 4*n + 1 for rolling gaits")
    out = []
    for n in range(params.samples_per_period):
        t = n * params.period / params.samples_per_period
        joints = rolling_joint_pattern(params, config, t)
        pts = sample_backbone(BasePose(), joints, config, n_per)
        out.append((t, pts))
    return out


def local_frame_at(points: np.ndarray, index: int, up=(0.0, 0.0, 1.0)) -> PoseTransform:
    """Local frame at a curve point: X along the tangent, Z along the
    projection of the up reference orthogonal to it, Y = Z x X.

    Falls back to the global Y reference when the tangent is (nearly)
    parallel to the up vector.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    if index == 0:
        tangent = points[1] - points[0]
    elif index == n - 1:
        tangent = points[-1] - points[-2]
    else:
        tangent = points[index + 1] - points[index - 1]
    norm = np.linalg.norm(tangent)
    if norm < 1e-9:
        raise DegenerateCurveError(f"vanishing tangent at curve index {index}")
    x_axis = tangent / norm
    ref = np.asarray(up, dtype=float)
    z_axis = ref - np.dot(ref, x_axis) * x_axis
    if np.linalg.norm(z_axis) < 1e-6:
        ref = np.array([0.0, 1.0, 0.0])
        z_axis = ref - np.dot(ref, x_axis) * x_axis
        if np.linalg.norm(z_axis) < 1e-6:
            raise DegenerateFrameError(f"no valid frame reference at index {index}")
    z_axis = z_axis / np.linalg.norm(z_axis)
    y_axis = np.cross(z_axis, x_axis)
    return PoseTransform(np.column_stack([x_axis, y_axis, z_axis]), points[index])


def project_to_robot_frame(points: np.ndarray, body_frame: PoseTransform) -> np.ndarray:
    """Express global-frame curve points in the robot frame defined by
    ``body_frame`` (the base-designated point maps to the origin)."""
    return body_frame.inverse().apply(points)


def build_curve_set(
    kind: str,
    params,
    config: RobotConfig,
) -> GaitCurveSet:
    """Generate, frame, and project one period of gait curves.

    ``kind`` is "sidewinding", "planar_rolling", or "helical_rolling".
    The IK fit runs on the bending sections only, so curves are built
    against the offset-free robot (arc length = sum of backbone lengths).
    """
    fit_config = config.without_offsets()
    curves = []
    if kind == "sidewinding":
        instances = discretize_sidewinding(params, fit_config.bending_length)
        for t, pts in instances:
            frames = [local_frame_at(pts, i) for i in range(len(pts))]
            base = PoseTransform(frames[0].rotation @ _AXIS_ALIGN, frames[0].translation)
            curves.append(
                FramedCurve(t, project_to_robot_frame(pts, base), frames, base)
            )
    elif kind in ("planar_rolling", "helical_rolling"):
        instances = discretize_rolling(params, fit_config)
        for t, pts in instances:
            frames = [local_frame_at(pts, i) for i in range(len(pts))]
            base = PoseTransform.identity()
            curves.append(FramedCurve(t, pts.copy(), frames, base))
    else:
        raise ValueError(f"unknown gait kind {kind!r}")
    period = params.period
    return GaitCurveSet(kind, curves, period)
