"""Kinematics and gait synthesis toolkit for a four-section, wheelless,
pneumatically driven soft robotic snake.

The pipeline stages, in order: constant-curvature section kinematics
(``sections``), whole-robot floating-base model (``robot``), taskspace gait
curve generation (``gaits``), jointspace fitting (``ik``), pressure mapping
and control-rate resampling (``pressure``), and artifact output
(``fileio``/``pipeline``/``cli``).
"""

from ._kernels import available_backends, get_backend
from .configio import (
    GaitSettings,
    SolverSettings,
    load_gait_settings,
    load_robot_config,
)
from .errors import (
    BoundsViolationError,
    ConfigError,
    DegenerateCurveError,
    DegenerateFrameError,
    DimensionMismatchError,
    EmptyTrajectoryError,
    NoConvergenceError,
    OutOfRangeError,
    SrsKitError,
)
from .gaits import (
    FramedCurve,
    GaitCurveSet,
    RollingParams,
    SidewindingParams,
    build_curve_set,
    discretize_rolling,
    discretize_sidewinding,
    local_frame_at,
    project_to_robot_frame,
    rolling_curve,
    rolling_joint_pattern,
    sidewinding_curve,
)
from .ik import (
    IkProblem,
    IkSolution,
    JointTrajectory,
    evaluate_cost,
    solve_frame,
    solve_period,
)
from .pipeline import run_pipeline, run_sweep
from .pressure import (
    ControlSchedule,
    PressureMap,
    PressureTrajectory,
    map_pressures,
    resample_schedule,
)
from .robot import (
    NUM_SECTIONS,
    RobotConfig,
    default_sections,
    joints_from_array,
    joints_to_array,
    robot_transform,
    sample_backbone,
    zero_joints,
)
from .sections import (
    BendParameters,
    SectionConfig,
    SectionJoints,
    bend_to_joints,
    joints_to_bend,
    section_transform,
    skin_point_transform,
)
from .transforms import BasePose, PoseTransform, rot_x, rot_y, rot_z

__version__ = "0.1.0"

__all__ = [
    "BasePose",
    "BendParameters",
    "BoundsViolationError",
    "ConfigError",
    "ControlSchedule",
    "DegenerateCurveError",
    "DegenerateFrameError",
    "DimensionMismatchError",
    "EmptyTrajectoryError",
    "FramedCurve",
    "GaitCurveSet",
    "GaitSettings",
    "IkProblem",
    "IkSolution",
    "JointTrajectory",
    "NUM_SECTIONS",
    "NoConvergenceError",
    "OutOfRangeError",
    "PoseTransform",
    "PressureMap",
    "PressureTrajectory",
    "RobotConfig",
    "RollingParams",
    "SectionConfig",
    "SectionJoints",
    "SidewindingParams",
    "SolverSettings",
    "SrsKitError",
    "available_backends",
    "bend_to_joints",
    "build_curve_set",
    "default_sections",
    "discretize_rolling",
    "discretize_sidewinding",
    "evaluate_cost",
    "get_backend",
    "joints_from_array",
    "joints_to_array",
    "joints_to_bend",
    "load_gait_settings",
    "load_robot_config",
    "local_frame_at",
    "map_pressures",
    "project_to_robot_frame",
    "resample_schedule",
    "robot_transform",
    "rolling_curve",
    "rolling_joint_pattern",
    "rot_x",
    "rot_y",
    "rot_z",
    "run_pipeline",
    "run_sweep",
    "sample_backbone",
    "section_transform",
    "sidewinding_curve",
    "skin_point_transform",
    "solve_frame",
    "solve_period",
    "zero_joints",
]
