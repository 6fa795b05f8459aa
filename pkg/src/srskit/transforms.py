"""Rigid transforms and base poses.

All orientations are stored as 3x3 rotation matrices. Euler angles follow
the intrinsic Z-Y-X convention: R = Rz(alpha) @ Ry(beta) @ Rx(gamma).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ORTHONORMALITY_TOL = 1e-9


def rot_x(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass
class PoseTransform:
    """A rigid transform: p_global = rotation @ p_local + translation."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        self.rotation = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        self.translation = np.asarray(self.translation, dtype=float).reshape(3)

    @classmethod
    def identity(cls) -> "PoseTransform":
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_translation(cls, t) -> "PoseTransform":
        return cls(np.eye(3), t)

    @classmethod
    def from_rotation(cls, r) -> "PoseTransform":
        return cls(r, np.zeros(3))

    def compose(self, other: "PoseTransform") -> "PoseTransform":
        return PoseTransform(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def __matmul__(self, other: "PoseTransform") -> "PoseTransform":
        return self.compose(other)

    def inverse(self) -> "PoseTransform":
        rt = self.rotation.T
        return PoseTransform(rt, -rt @ self.translation)

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Map points (3,) or (N, 3) from the local into the global frame."""
        pts = np.asarray(points, dtype=float)
        return pts @ self.rotation.T + self.translation

    def orthonormality_error(self) -> float:
        r = self.rotation
        err = float(np.abs(r @ r.T - np.eye(3)).max())
        return max(err, abs(float(np.linalg.det(r)) - 1.0))

    def is_valid(self, tol: float = ORTHONORMALITY_TOL) -> bool:
        return self.orthonormality_error() <= tol

    def quaternion(self) -> np.ndarray:
        """Unit quaternion (w, x, y, z) of the rotation part."""
        return rotation_to_quaternion(self.rotation)


def rotation_to_quaternion(r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    tr = r[0, 0] + r[1, 1] + r[2, 2]
    if tr > 0.0:
        s = np.sqrt(tr + 1.0) * 2.0
        q = np.array(
            [0.25 * s, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s]
        )
    elif r[0, 0] >= r[1, 1] and r[0, 0] >= r[2, 2]:
        s = np.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2]) * 2.0
        q = np.array(
            [(r[2, 1] - r[1, 2]) / s, 0.25 * s, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s]
        )
    elif r[1, 1] >= r[2, 2]:
        s = np.sqrt(1.0 + r[1, 1] - r[0, 0] - r[2, 2]) * 2.0
        q = np.array(
            [(r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, 0.25 * s, (r[1, 2] + r[2, 1]) / s]
        )
    else:
        s = np.sqrt(1.0 + r[2, 2] - r[0, 0] - r[1, 1]) * 2.0
        q = np.array(
            [(r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, 0.25 * s]
        )
    if q[0] < 0.0:
        q = -q
    return q


@dataclass
class BasePose:
    """Floating-base state: position in meters, intrinsic Z-Y-X Euler angles."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def to_transform(self) -> PoseTransform:
        r = rot_z(self.alpha) @ rot_y(self.beta) @ rot_x(self.gamma)
        return PoseTransform(r, np.array([self.x, self.y, self.z]))

    @classmethod
    def from_transform(cls, t: PoseTransform) -> "BasePose":
        r = t.rotation
        beta = np.arcsin(np.clip(-r[2, 0], -1.0, 1.0))
        if abs(abs(r[2, 0]) - 1.0) < 1e-12:
            # Gimbal lock: fold gamma into alpha.
            alpha = np.arctan2(-r[0, 1], r[1, 1])
            gamma = 0.0
        else:
            alpha = np.arctan2(r[1, 0], r[0, 0])
            gamma = np.arctan2(r[2, 1], r[2, 2])
        x, y, z = t.translation
        return cls(float(x), float(y), float(z), float(alpha), float(beta), float(gamma))
