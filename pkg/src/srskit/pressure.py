"""Jointspace-to-pressure mapping and control-rate resampling.

The per-channel map is a declared affine model with clamping,
p = clamp(bias + gain * l, floor, ceiling); all four parameters come from
configuration so a calibrated table can replace them without touching the
pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyTrajectoryError
from .ik import JointTrajectory

NUM_CHANNELS = 12


@dataclass(frozen=True)
class PressureMap:
    """Affine length-change to pressure map, in bar."""

    gain: float = 40.0
    bias: float = 2.0
    ceiling: float = 4.0
    floor: float = 0.0

    def __post_init__(self):
        if not (self.floor <= self.bias <= self.ceiling):
            raise ValueError(
                f"need floor <= bias <= ceiling, got {self.floor}, {self.bias}, {self.ceiling}"
            )


@dataclass(frozen=True)
class ControlSchedule:
    """Uniform control grid of the pressure regulators."""

    rate: float = 20.0
    duration: float = 12.0
    channels: int = NUM_CHANNELS

    def __post_init__(self):
        if self.rate <= 0.0:
            raise ValueError("rate must be positive")
        if self.duration <= 0.0:
            raise ValueError("duration must be positive")
        if self.channels != NUM_CHANNELS:
            raise ValueError(f"channel count must be {NUM_CHANNELS}")

    @property
    def sample_count(self) -> int:
        return int(round(self.rate * self.duration))


@dataclass
class PressureTrajectory:
    """Pressure commands over one gait period, one column per PMA."""

    times: np.ndarray
    values: np.ndarray
    period: float
    pressure_map: PressureMap
    clamp_count: int = 0


def map_pressures(traj: JointTrajectory, pmap: PressureMap) -> PressureTrajectory:
    """Map all 12 length changes to clamped pressures; clamping is counted
    and reported, not an error."""
    lengths = traj.full_lengths()
    raw = pmap.bias + pmap.gain * lengths
    clamped = np.clip(raw, pmap.floor, pmap.ceiling)
    n_clamped = int(np.count_nonzero(raw != clamped))
    return PressureTrajectory(
        times=traj.times.copy(),
        values=clamped,
        period=traj.period,
        pressure_map=pmap,
        clamp_count=n_clamped,
    )


def resample_schedule(
    ptraj: PressureTrajectory, sched: ControlSchedule
) -> tuple[np.ndarray, np.ndarray]:
    """Periodically extend one gait period onto the uniform control grid.

    Returns (times, values) with values of shape (rate * duration, 12),
    linearly interpolated between source samples.
    """
    if ptraj.times.size == 0:
        raise EmptyTrajectoryError("pressure trajectory has no samples")
    period = ptraj.period
    # Close the cycle for interpolation: the sample at t = T is the t = 0 one.
    src_t = np.concatenate([ptraj.times, [ptraj.times[0] + period]])
    src_v = np.vstack([ptraj.values, ptraj.values[:1]])
    n = sched.sample_count
    times = np.arange(n) / sched.rate
    phase = np.mod(times - ptraj.times[0], period) + ptraj.times[0]
    values = np.empty((n, ptraj.values.shape[1]))
    for c in range(ptraj.values.shape[1]):
        values[:, c] = np.interp(phase, src_t, src_v[:, c])
    return times, values
