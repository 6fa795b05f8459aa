import numpy as np
import pytest
from hypothesis import given, strategies as st

from srskit.transforms import (
    BasePose,
    PoseTransform,
    rot_x,
    rot_y,
    rot_z,
    rotation_to_quaternion,
)

ANGLES = st.floats(-np.pi, np.pi, allow_nan=False)


def test_axis_rotations_are_orthonormal():
    for rot in (rot_x, rot_y, rot_z):
        r = rot(0.7)
        assert np.allclose(r @ r.T, np.eye(3), atol=1e-12)
        assert np.isclose(np.linalg.det(r), 1.0)


def test_rot_z_rotates_x_to_y():
    assert np.allclose(rot_z(np.pi / 2.0) @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])


def test_compose_and_inverse_cancel():
    t = BasePose(0.1, -0.2, 0.3, 0.4, -0.5, 0.6).to_transform()
    ident = t @ t.inverse()
    assert np.allclose(ident.rotation, np.eye(3), atol=1e-12)
    assert np.allclose(ident.translation, 0.0, atol=1e-12)


def test_apply_matches_compose():
    t = BasePose(1.0, 2.0, 3.0, 0.3, 0.2, 0.1).to_transform()
    p = np.array([0.4, -0.1, 0.25])
    via_compose = (t @ PoseTransform.from_translation(p)).translation
    assert np.allclose(t.apply(p), via_compose, atol=1e-12)


def test_apply_handles_point_arrays():
    t = BasePose(0.0, 0.0, 0.0, 1.0).to_transform()
    pts = np.random.default_rng(3).normal(size=(7, 3))
    rows = np.array([t.apply(p) for p in pts])
    assert np.allclose(t.apply(pts), rows, atol=1e-12)


def test_validity_check_flags_bad_rotation():
    assert PoseTransform.identity().is_valid()
    skew = PoseTransform(np.eye(3) + 0.01, np.zeros(3))
    assert not skew.is_valid()


def test_quaternion_identity_and_norm():
    assert np.allclose(PoseTransform.identity().quaternion(), [1.0, 0.0, 0.0, 0.0])
    q = rotation_to_quaternion(rot_z(2.0) @ rot_x(-1.0))
    assert np.isclose(np.linalg.norm(q), 1.0, atol=1e-12)
    assert q[0] >= 0.0


@pytest.mark.parametrize("angle", [0.0, 0.5, np.pi - 1e-6, -2.5])
def test_quaternion_reconstructs_rotation(angle):
    r = rot_y(angle) @ rot_z(0.3 * angle)
    w, x, y, z = rotation_to_quaternion(r)
    rebuilt = np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )
    assert np.allclose(rebuilt, r, atol=1e-9)


@given(alpha=ANGLES, beta=st.floats(-1.4, 1.4), gamma=ANGLES)
def test_base_pose_euler_round_trip(alpha, beta, gamma):
    pose = BasePose(0.0, 0.0, 0.0, alpha, beta, gamma)
    back = BasePose.from_transform(pose.to_transform())
    assert np.allclose(
        back.to_transform().rotation, pose.to_transform().rotation, atol=1e-9
    )


def test_base_pose_gimbal_lock():
    pose = BasePose(0.0, 0.0, 0.0, 0.4, np.pi / 2.0, 0.2)
    back = BasePose.from_transform(pose.to_transform())
    assert np.allclose(
        back.to_transform().rotation, pose.to_transform().rotation, atol=1e-9
    )
