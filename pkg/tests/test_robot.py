import numpy as np
import pytest

from srskit.errors import OutOfRangeError
from srskit.robot import (
    NUM_SECTIONS,
    RobotConfig,
    joints_from_array,
    joints_to_array,
    robot_transform,
    sample_backbone,
    zero_joints,
)
from srskit.sections import BendParameters, bend_to_joints
from srskit.transforms import BasePose


def _bent_joints(config, seed=0, phi_max=0.8):
    rng = np.random.default_rng(seed)
    return tuple(
        bend_to_joints(
            BendParameters(rng.uniform(-np.pi, np.pi), rng.uniform(0.1, phi_max)),
            config.sections[i],
            check_bounds=False,
        )
        for i in range(NUM_SECTIONS)
    )


def test_straight_robot_total_length(robot):
    t = robot_transform(BasePose(), zero_joints(), robot, 4.0)
    assert np.allclose(t.translation, [0.0, 0.0, robot.total_length], atol=1e-12)
    assert np.isclose(robot.total_length, 1.11)
    assert np.isclose(robot.bending_length, 0.96)


def test_base_point_is_identity(robot):
    t = robot_transform(BasePose(), _bent_joints(robot), robot, 0.0)
    assert np.allclose(t.rotation, np.eye(3), atol=1e-12)
    assert np.allclose(t.translation, 0.0, atol=1e-12)


def test_offsets_traversed_at_integer_selector(robot):
    joints = zero_joints()
    just_before = robot_transform(BasePose(), joints, robot, 1.0 - 1e-12).translation
    at_one = robot_transform(BasePose(), joints, robot, 1.0).translation
    d = robot.sections[0].trailing_offset
    assert np.isclose(at_one[2] - just_before[2], d, atol=1e-9)
    # right-continuity: approaching from above converges to the value at 1
    above = robot_transform(BasePose(), joints, robot, 1.0 + 1e-9).translation
    assert np.allclose(above, at_one, atol=1e-8)


def test_base_equivariance(robot):
    joints = _bent_joints(robot, seed=7)
    base = BasePose(0.3, -0.2, 0.1, 0.5, -0.3, 0.8)
    for xi in (0.4, 1.0, 2.7, 4.0):
        moved = robot_transform(base, joints, robot, xi)
        local = robot_transform(BasePose(), joints, robot, xi)
        composed = base.to_transform() @ local
        assert np.allclose(moved.rotation, composed.rotation, atol=1e-12)
        assert np.allclose(moved.translation, composed.translation, atol=1e-12)


def test_selector_out_of_range(robot):
    with pytest.raises(OutOfRangeError):
        robot_transform(BasePose(), zero_joints(), robot, 4.1)
    with pytest.raises(OutOfRangeError):
        robot_transform(BasePose(), zero_joints(), robot, -0.1)


def test_sample_backbone_default_grid(robot):
    pts = sample_backbone(BasePose(), zero_joints(), robot)
    assert pts.shape == (61, 3)
    assert np.allclose(pts[0], 0.0)
    assert np.all(np.diff(pts[:, 2]) > 0.0)
    assert np.isclose(pts[-1, 2], robot.total_length)


def test_sample_backbone_matches_robot_transform(robot):
    joints = _bent_joints(robot, seed=3)
    pts = sample_backbone(BasePose(), joints, robot, n_per_section=5)
    assert pts.shape == (21, 3)
    # spot-check interior samples against the selector map
    for k, xi in ((3, 3.0 / 5.0), (7, 1.0 + 2.0 / 5.0), (20, 4.0)):
        expect = robot_transform(BasePose(), joints, robot, xi).translation
        assert np.allclose(pts[k], expect, atol=1e-12)


def test_joint_array_round_trip():
    q = np.linspace(-0.02, 0.03, 8)
    assert np.allclose(joints_to_array(joints_from_array(q)), q)


def test_without_offsets(robot):
    bare = robot.without_offsets()
    assert bare.total_length == bare.bending_length == 0.96
    assert robot.sections[0].backbone_length == bare.sections[0].backbone_length


def test_robot_config_requires_four_sections(robot):
    with pytest.raises(ValueError):
        RobotConfig(robot.sections[:3])
