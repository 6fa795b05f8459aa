import numpy as np
import pytest

from srskit.errors import EmptyTrajectoryError
from srskit.ik import JointTrajectory
from srskit.pressure import (
    ControlSchedule,
    PressureMap,
    PressureTrajectory,
    map_pressures,
    resample_schedule,
)


def _traj(q_rows, period=1.0):
    q = np.asarray(q_rows, dtype=float)
    n = len(q)
    return JointTrajectory(
        times=np.arange(n) * period / n,
        q=q,
        kind="test",
        period=period,
        residuals=np.zeros(n),
        costs=np.zeros(n),
        converged=np.ones(n, dtype=bool),
        iterations=np.zeros(n, dtype=int),
    )


def test_zero_lengths_map_to_bias():
    ptraj = map_pressures(_traj([np.zeros(8), np.zeros(8)]), PressureMap())
    assert np.allclose(ptraj.values, 2.0)
    assert ptraj.clamp_count == 0


def test_affine_map_and_ceiling_clamp():
    pmap = PressureMap(gain=40.0, bias=2.0, ceiling=4.0, floor=0.0)
    # l1 = 0.06 -> raw 4.4 bar clamps to the ceiling; l3 = -0.06 -> -0.4 floors
    q = np.zeros(8)
    q[0] = 0.06
    ptraj = map_pressures(_traj([q, q]), pmap)
    assert np.isclose(ptraj.values[0, 0], 4.0)
    assert np.isclose(ptraj.values[0, 2], 0.0)
    assert np.isclose(ptraj.values[0, 1], 2.0)  # l2 = 0 stays at bias
    assert ptraj.clamp_count == 4  # two frames x (one ceiling + one floor)
    # exactly at the limits (raw 4.0 and 0.0) is not a clamp
    q2 = np.zeros(8)
    q2[0] = 0.05
    assert map_pressures(_traj([q2, q2]), pmap).clamp_count == 0


def test_pressure_map_validation():
    with pytest.raises(ValueError):
        PressureMap(bias=5.0, ceiling=4.0)


def test_schedule_sample_count():
    sched = ControlSchedule(rate=20.0, duration=12.0)
    assert sched.sample_count == 240
    with pytest.raises(ValueError):
        ControlSchedule(rate=0.0)
    with pytest.raises(ValueError):
        ControlSchedule(channels=6)


def test_resample_shape_and_limits():
    rng = np.random.default_rng(6)
    traj = _traj(rng.uniform(-0.03, 0.03, size=(20, 8)))
    pmap = PressureMap()
    times, values = resample_schedule(map_pressures(traj, pmap), ControlSchedule())
    assert times.shape == (240,)
    assert values.shape == (240, 12)
    assert np.isclose(times[1] - times[0], 0.05)
    assert values.min() >= pmap.floor and values.max() <= pmap.ceiling


def test_resample_is_periodic_and_node_exact():
    rng = np.random.default_rng(13)
    traj = _traj(rng.uniform(-0.02, 0.02, size=(20, 8)))
    ptraj = map_pressures(traj, PressureMap())
    times, values = resample_schedule(ptraj, ControlSchedule(rate=20.0, duration=12.0))
    # the control grid hits every source sample exactly once per period
    assert np.allclose(values[:20], ptraj.values, atol=1e-12)
    # and later periods repeat the first one
    assert np.allclose(values[20:40], values[:20], atol=1e-9)
    assert np.allclose(values[-20:], values[:20], atol=1e-9)


def test_resample_interpolates_between_samples():
    ptraj = PressureTrajectory(
        times=np.array([0.0, 0.5]),
        values=np.array([[1.0] * 12, [3.0] * 12]),
        period=1.0,
        pressure_map=PressureMap(),
    )
    _, values = resample_schedule(ptraj, ControlSchedule(rate=4.0, duration=1.0))
    assert np.allclose(values[:, 0], [1.0, 2.0, 3.0, 2.0])


def test_resample_empty_rejected():
    ptraj = PressureTrajectory(
        times=np.array([]),
        values=np.zeros((0, 12)),
        period=1.0,
        pressure_map=PressureMap(),
    )
    with pytest.raises(EmptyTrajectoryError):
        resample_schedule(ptraj, ControlSchedule())
