"""Whole-robot kinematics: four serially chained sections on a floating base.

The body selector ``xi`` runs over [0, 4]: 0 is the robot base, 4 the tip.
Inter-section backbone offsets are rigid Z-translations in the distal frame
of each section and are traversed atomically at integer ``xi`` (the value at
an integer includes the trailing offsets of all completed sections, so the
map is right-continuous there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import OutOfRangeError
from .sections import SectionConfig, SectionJoints, section_transform
from .transforms import BasePose, PoseTransform

NUM_SECTIONS = 4


@dataclass(frozen=True)
class RobotConfig:
    """Ordered section geometries of the 4-section robot."""

    sections: tuple[SectionConfig, ...] = field(
        default_factory=lambda: default_sections()
    )

    def __post_init__(self):
        sections = tuple(self.sections)
        if len(sections) != NUM_SECTIONS:
            raise ValueError(f"expected {NUM_SECTIONS} sections, got {len(sections)}")
        object.__setattr__(self, "sections", sections)

    @property
    def bending_length(self) -> float:
        """Total backbone arc length of the bending sections only."""
        return sum(s.backbone_length for s in self.sections)

    @property
    def total_length(self) -> float:
        """Straight-pose kinematic length including inter-section offsets."""
        return self.bending_length + sum(s.trailing_offset for s in self.sections)

    def without_offsets(self) -> "RobotConfig":
        """Copy with all trailing offsets removed (used by the IK fit)."""
        return RobotConfig(tuple(replace(s, trailing_offset=0.0) for s in self.sections))

    def joint_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Box bounds (lo, hi) on the 8 independent length changes."""
        lo = np.repeat([s.min_joint for s in self.sections], 2)
        hi = np.repeat([s.max_joint for s in self.sections], 2)
        return lo, hi


def default_sections() -> tuple[SectionConfig, ...]:
    base = SectionConfig()
    return (base, base, base, replace(base, trailing_offset=0.0))


def zero_joints() -> tuple[SectionJoints, ...]:
    return tuple(SectionJoints() for _ in range(NUM_SECTIONS))


def joints_from_array(q: np.ndarray) -> tuple[SectionJoints, ...]:
    """Build the per-section joints from the flat 8-vector [l11,l12,...,l42]."""
    q = np.asarray(q, dtype=float).reshape(NUM_SECTIONS, 2)
    return tuple(SectionJoints(float(a), float(b)) for a, b in q)


def joints_to_array(joints) -> np.ndarray:
    return np.array([v for j in joints for v in (j.l1, j.l2)])


def robot_transform(
    base: BasePose,
    joints,
    config: RobotConfig,
    xi: float,
) -> PoseTransform:
    """Pose of the neutral-axis point selected by xi in [0, 4]."""
    if xi < 0.0 or xi > NUM_SECTIONS:
        raise OutOfRangeError(f"xi={xi} outside [0, {NUM_SECTIONS}]")
    joints = tuple(joints)
    if len(joints) != NUM_SECTIONS:
        raise ValueError(f"expected {NUM_SECTIONS} joint sets, got {len(joints)}")
    n_full = int(math.floor(xi))
    frac = xi - n_full
    if n_full == NUM_SECTIONS:
        frac = 0.0
    t = base.to_transform()
    for i in range(n_full):
        t = t @ section_transform(joints[i], config.sections[i], 1.0)
        d = config.sections[i].trailing_offset
        if d != 0.0:
            t = t @ PoseTransform.from_translation([0.0, 0.0, d])
    if frac > 0.0:
        t = t @ section_transform(joints[n_full], config.sections[n_full], frac)
    return t


def sample_backbone(
    base: BasePose,
    joints,
    config: RobotConfig,
    n_per_section: int = 15,
) -> np.ndarray:
    """Neutral-axis points at the base plus n uniformly spaced xi values per
    section, (4n + 1, 3). The default grid yields 61 points."""
    if n_per_section < 1:
        raise ValueError("n_per_section must be >= 1")
    joints = tuple(joints)
    chain = base.to_transform()
    points = [chain.translation.copy()]
    for i in range(NUM_SECTIONS):
        cfg = config.sections[i]
        for m in range(1, n_per_section + 1):
            local = section_transform(joints[i], cfg, m / n_per_section)
            points.append((chain @ local).translation)
        chain = chain @ section_transform(joints[i], cfg, 1.0)
        if cfg.trailing_offset != 0.0:
            chain = chain @ PoseTransform.from_translation([0.0, 0.0, cfg.trailing_offset])
    return np.array(points)
