"""Constant-curvature kinematics of a single bending section.

A section bends as a circular arc of fixed backbone length. Three actuators
sit tri-symmetrically at pitch radius ``r`` around the neutral axis, so the
length change of actuator j is

    l_j = -r * phi * cos(theta - 2*pi*(j - 1)/3)

with bending direction ``theta`` and bending angle ``phi``. The three length
changes always sum to zero; the first two are the independent joint
variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundsViolationError, OutOfRangeError
from .transforms import PoseTransform, rot_z

# Below this bending angle the arc terms switch to their series expansions.
PHI_SERIES_THRESHOLD = 1e-6

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class SectionConfig:
    """Geometry and actuator limits of one bending section.

    ``trailing_offset`` is a straight, passive backbone extension to the
    next section (zero for the last one). Strain limits bound each actuator
    length to [L0*(1 - eps_contract), L0*(1 + eps_extend)].
    """

    backbone_length: float = 0.240
    actuator_pitch_radius: float = 0.020
    skin_radius: float = 0.020
    trailing_offset: float = 0.050
    eps_extend: float = 0.35
    eps_contract: float = 0.35

    def __post_init__(self):
        if self.backbone_length <= 0.0:
            raise ValueError("backbone_length must be positive")
        if self.actuator_pitch_radius <= 0.0:
            raise ValueError("actuator_pitch_radius must be positive")
        if self.skin_radius <= 0.0:
            raise ValueError("skin_radius must be positive")
        if self.trailing_offset < 0.0:
            raise ValueError("trailing_offset must be non-negative")

    @property
    def min_joint(self) -> float:
        return -self.eps_contract * self.backbone_length

    @property
    def max_joint(self) -> float:
        return self.eps_extend * self.backbone_length


@dataclass(frozen=True)
class SectionJoints:
    """Length changes of the two independent actuators; l3 is derived."""

    l1: float = 0.0
    l2: float = 0.0

    @property
    def l3(self) -> float:
        return -(self.l1 + self.l2)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class BendParameters:
    """Bending direction theta in [-pi, pi] and bending angle phi in [0, pi].

    theta is wrapped into [-pi, pi] on construction and fixed to 0 for the
    straight pose, where the direction is undefined.
    """

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.phi < 0.0:
            raise OutOfRangeError(f"phi must be non-negative, got {self.phi}")
        theta = math.atan2(math.sin(self.theta), math.cos(self.theta)) if self.phi > 0.0 else 0.0
        object.__setattr__(self, "theta", theta)

    def curvature(self, config: SectionConfig) -> float:
        return self.phi / config.backbone_length


def check_joint_bounds(joints: SectionJoints, config: SectionConfig) -> None:
    """Raise BoundsViolationError if any of the three lengths is out of range."""
    lo, hi = config.min_joint, config.max_joint
    for name, value in zip(("l1", "l2", "l3"), joints.as_tuple()):
        if value < lo or value > hi:
            raise BoundsViolationError(
                f"{name}={value:.6f} m outside [{lo:.6f}, {hi:.6f}] m"
            )


def joints_to_bend(
    joints: SectionJoints, config: SectionConfig, check_bounds: bool = True
) -> BendParameters:
    """Recover (theta, phi) from the two independent length changes."""
    if check_bounds:
        check_joint_bounds(joints, config)
    l1, l2, l3 = joints.as_tuple()
    r = config.actuator_pitch_radius
    quad = l1 * l1 + l2 * l2 + l3 * l3 - l1 * l2 - l2 * l3 - l3 * l1
    phi = (2.0 / (3.0 * r)) * math.sqrt(max(quad, 0.0))
    if phi > math.pi:
        raise OutOfRangeError(f"bending angle phi={phi:.6f} exceeds pi")
    if phi == 0.0:
        return BendParameters(0.0, 0.0)
    theta = math.atan2((l3 - l2) / _SQRT3, -l1)
    return BendParameters(theta, phi)


def bend_to_joints(
    bend: BendParameters, config: SectionConfig, check_bounds: bool = True
) -> SectionJoints:
    """Length changes realizing a bend; exact inverse of joints_to_bend."""
    if bend.phi > math.pi:
        raise OutOfRangeError(f"bending angle phi={bend.phi:.6f} exceeds pi")
    r = config.actuator_pitch_radius
    l1 = -r * bend.phi * math.cos(bend.theta)
    l2 = -r * bend.phi * math.cos(bend.theta - 2.0 * math.pi / 3.0)
    joints = SectionJoints(l1, l2)
    if check_bounds:
        check_joint_bounds(joints, config)
    return joints


def arc_f1(s: float, force_branch: str | None = None) -> float:
    """sin(sqrt(s))/sqrt(s) as an entire function of s = (xi*phi)**2."""
    if force_branch == "series" or (force_branch is None and s < PHI_SERIES_THRESHOLD**2):
        return 1.0 - s / 6.0 + s * s / 120.0 - s * s * s / 5040.0
    u = math.sqrt(s)
    return math.sin(u) / u


def arc_f2(s: float, force_branch: str | None = None) -> float:
    """(1 - cos(sqrt(s)))/s as an entire function of s = (xi*phi)**2."""
    if force_branch == "series" or (force_branch is None and s < PHI_SERIES_THRESHOLD**2):
        return 0.5 - s / 24.0 + s * s / 720.0 - s * s * s / 40320.0
    u = math.sqrt(s)
    return (1.0 - math.cos(u)) / s


def section_transform(
    joints: SectionJoints,
    config: SectionConfig,
    xi: float,
    force_branch: str | None = None,
) -> PoseTransform:
    """Pose of the neutral-axis point at fraction xi in [0, 1] of the arc.

    R(xi) = Rz(theta) Ry(xi*phi) Rz(-theta); the translation follows the
    circular arc of radius L/phi in the bending plane. xi = 0 is the
    section base (identity), xi = 1 the tip.
    """
    if xi < 0.0 or xi > 1.0:
        raise OutOfRangeError(f"xi={xi} outside [0, 1]")
    bend = joints_to_bend(joints, config, check_bounds=False)
    theta, phi, length = bend.theta, bend.phi, config.backbone_length
    s = (xi * phi) ** 2
    f1 = arc_f1(s, force_branch)
    f2 = arc_f2(s, force_branch)
    # In-plane arc with bending direction rotated about Z by theta.
    ct, st = math.cos(theta), math.sin(theta)
    a, b = phi * ct, phi * st
    p = length * np.array([a * xi * xi * f2, b * xi * xi * f2, xi * f1])
    rz = rot_z(theta)
    r = rz @ _ry_from_terms(xi * phi, s, f1, f2) @ rz.T
    return PoseTransform(r, p)


def _ry_from_terms(angle: float, s: float, f1: float, f2: float) -> np.ndarray:
    """Ry(angle) written via the shared arc terms so both branches agree."""
    sin_a = angle * f1
    cos_a = 1.0 - s * f2
    return np.array([[cos_a, 0.0, sin_a], [0.0, 1.0, 0.0], [-sin_a, 0.0, cos_a]])


def skin_point_transform(
    joints: SectionJoints,
    config: SectionConfig,
    xi: float,
    sigma: float,
) -> PoseTransform:
    """Pose of a skin-surface point: neutral-axis pose, rotated about its Z
    by sigma, then offset by the skin radius along the rotated X axis."""
    t = section_transform(joints, config, xi)
    spin = PoseTransform.from_rotation(rot_z(sigma))
    offset = PoseTransform.from_translation([config.skin_radius, 0.0, 0.0])
    return t @ spin @ offset
