"""Compare the compiled and pure-python IK kernels.

Usage: python3 benchmarks/bench_backends.py [repeats]
"""

import sys
import time

import numpy as np

from srskit import available_backends, get_backend
from srskit.gaits import RollingParams, build_curve_set
from srskit.ik import IkProblem, solve_frame
from srskit.robot import RobotConfig


def bench_kernel(backend, repeats):
    config = RobotConfig().without_offsets()
    sections = config.sections
    l0 = np.array([s.backbone_length for s in sections])
    doff = np.array([s.trailing_offset for s in sections])
    r_act = np.array([s.actuator_pitch_radius for s in sections])
    lo3 = np.array([s.min_joint for s in sections])
    hi3 = np.array([s.max_joint for s in sections])
    rng = np.random.default_rng(0)
    q = rng.uniform(-0.05, 0.05, 8)
    targets = backend.backbone_points(q * 0.9, l0, doff, r_act, 15)
    args = (q, targets, l0, doff, r_act, 15, 1.0, 1e-9, lo3, hi3, 1e3)

    results = {}
    for name, fn in (
        ("backbone_points", lambda: backend.backbone_points(q, l0, doff, r_act, 15)),
        ("cost", lambda: backend.cost(*args)),
        ("cost_and_grad", lambda: backend.cost_and_grad(*args)),
    ):
        fn()  # warm up
        start = time.perf_counter()
        for _ in range(repeats):
            fn()
        results[name] = (time.perf_counter() - start) / repeats
    return results


def bench_solve(kernel_name, frames=5):
    config = RobotConfig()
    curve_set = build_curve_set("helical_rolling", RollingParams(), config)
    fit = config.without_offsets()
    start = time.perf_counter()
    for curve in curve_set.curves[:frames]:
        problem = IkProblem(curve.points, fit, starts=4, kernel=kernel_name)
        solve_frame(problem)
    return (time.perf_counter() - start) / frames


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    rows = {}
    for name in available_backends():
        rows[name] = bench_kernel(get_backend(name), repeats)
        rows[name]["solve_frame"] = bench_solve(name)

    ops = ["backbone_points", "cost", "cost_and_grad", "solve_frame"]
    header = f"{'operation':<18}" + "".join(f"{n:>14}" for n in rows)
    print(header)
    print("-" * len(header))
    for op in ops:
        line = f"{op:<18}"
        for name in rows:
            line += f"{rows[name][op] * 1e6:>12.1f}us"
        print(line)
    if "compiled" in rows and "python" in rows:
        speedup = rows["python"]["cost_and_grad"] / rows["compiled"]["cost_and_grad"]
        print(f"\ncompiled cost_and_grad speedup: {speedup:.1f}x")


if __name__ == "__main__":
    main()
