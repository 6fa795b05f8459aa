"""Optimization-based inverse kinematics for projected gait curves.

The fit minimizes the sum of Euclidean distances between the sampled
backbone points (floating base fixed at identity) and the target curve
points, plus a quadratic penalty on all 12 actuator length changes. The
solver is multi-start bounded L-BFGS with complex-step gradients; inside
the optimizer the point distances are smoothed as sqrt(d^2 + eps^2) - eps
to stay differentiable at exact fits, while reported costs and residuals
always use the exact norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ._kernels import backend_name, get_backend
from .errors import DimensionMismatchError, NoConvergenceError
from .gaits import GaitCurveSet
from .robot import NUM_SECTIONS, RobotConfig, joints_from_array

# A candidate must improve the incumbent by this much to replace it, so
# equally good minima resolve to the earliest start deterministically.
_IMPROVEMENT_TOL = 1e-12


@dataclass
class IkProblem:
    """One frame of the fit: target curve points plus solver settings."""

    target: np.ndarray
    config: RobotConfig
    lam: float = 1.0
    eps_smooth: float = 1e-9
    bound_weight: float = 1e3
    starts: int = 8
    maxiter: int = 400
    kernel: str | None = None

    def __post_init__(self):
        self.target = np.ascontiguousarray(self.target, dtype=float)
        if self.target.ndim != 2 or self.target.shape[1] != 3:
            raise DimensionMismatchError("target must be an (K, 3) point array")
        n_per, rem = divmod(self.target.shape[0] - 1, NUM_SECTIONS)
        if rem != 0 or n_per < 1:
            raise DimensionMismatchError(
                f"target point count {self.target.shape[0]} is not 4*n + 1"
            )
        self.n_per_section = n_per
        sections = self.config.sections
        self._l0 = np.ascontiguousarray([s.backbone_length for s in sections])
        self._doff = np.ascontiguousarray([s.trailing_offset for s in sections])
        self._r_act = np.ascontiguousarray([s.actuator_pitch_radius for s in sections])
        self._lo3 = np.ascontiguousarray([s.min_joint for s in sections])
        self._hi3 = np.ascontiguousarray([s.max_joint for s in sections])
        self._backend = get_backend(self.kernel)

    @property
    def sample_count(self) -> int:
        return self.target.shape[0]

    @property
    def backend_name(self) -> str:
        return backend_name(self._backend)

    def bounds(self) -> list[tuple[float, float]]:
        lo, hi = self.config.joint_bounds()
        return list(zip(lo, hi))

    def backbone_points(self, q: np.ndarray) -> np.ndarray:
        q = np.ascontiguousarray(q, dtype=float)
        return self._backend.backbone_points(
            q, self._l0, self._doff, self._r_act, self.n_per_section
        )

    def point_distances(self, q: np.ndarray) -> np.ndarray:
        return np.linalg.norm(self.backbone_points(q) - self.target, axis=1)


@dataclass
class IkSolution:
    """Best fit of one frame."""

    q: np.ndarray
    residual: float
    cost: float
    converged: bool
    iterations: int
    start_index: int = 0

    @property
    def joints(self):
        return joints_from_array(self.q)


def evaluate_cost(q: np.ndarray, problem: IkProblem) -> float:
    """Exact fitting cost: sum of point distances plus the regularizer."""
    q = np.ascontiguousarray(q, dtype=float)
    if q.shape != (2 * NUM_SECTIONS,):
        raise DimensionMismatchError(f"expected an 8-vector, got shape {q.shape}")
    return float(
        problem._backend.cost(
            q,
            problem.target,
            problem._l0,
            problem._doff,
            problem._r_act,
            problem.n_per_section,
            problem.lam,
            0.0,
            problem._lo3,
            problem._hi3,
            0.0,
        )
    )


def smoothed_cost(q: np.ndarray, problem: IkProblem) -> float:
    """Cost as seen by the optimizer (smoothed norms, bound penalty)."""
    q = np.ascontiguousarray(q, dtype=float)
    return float(
        problem._backend.cost(
            q,
            problem.target,
            problem._l0,
            problem._doff,
            problem._r_act,
            problem.n_per_section,
            problem.lam,
            problem.eps_smooth,
            problem._lo3,
            problem._hi3,
            problem.bound_weight,
        )
    )


def smoothed_cost_gradient(q: np.ndarray, problem: IkProblem) -> tuple[float, np.ndarray]:
    """Smoothed cost and its complex-step gradient."""
    q = np.ascontiguousarray(q, dtype=float)
    value, grad = problem._backend.cost_and_grad(
        q,
        problem.target,
        problem._l0,
        problem._doff,
        problem._r_act,
        problem.n_per_section,
        problem.lam,
        problem.eps_smooth,
        problem._lo3,
        problem._hi3,
        problem.bound_weight,
    )
    return float(value), np.asarray(grad)


def solve_frame(
    problem: IkProblem,
    warm_start: np.ndarray | None = None,
    rng: np.random.Generator | None = None,
) -> IkSolution:
    """Multi-start bounded descent on one frame.

    Start points: the zero pose, the warm start (when given), and uniform
    random points within bounds up to ``problem.starts`` total. Ties between
    equally good minima go to the earliest start.
    """
    rng = rng or np.random.default_rng(0)
    lo, hi = problem.config.joint_bounds()
    starts = [np.zeros(2 * NUM_SECTIONS)]
    if warm_start is not None:
        starts.append(np.clip(np.asarray(warm_start, dtype=float), lo, hi))
    while len(starts) < problem.starts:
        starts.append(rng.uniform(lo, hi))

    bounds = problem.bounds()
    best = None
    best_val = np.inf
    best_idx = -1
    total_iter = 0
    for idx, x0 in enumerate(starts):
        res = minimize(
            lambda x: smoothed_cost_gradient(x, problem),
            x0,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"maxiter": problem.maxiter, "ftol": 1e-14, "gtol": 1e-10},
        )
        total_iter += int(res.nit)
        if res.fun < best_val - _IMPROVEMENT_TOL:
            best, best_val, best_idx = res, float(res.fun), idx
    q = np.clip(best.x, lo, hi)
    distances = problem.point_distances(q)
    return IkSolution(
        q=q,
        residual=float(distances.mean()),
        cost=evaluate_cost(q, problem),
        converged=bool(best.success),
        iterations=total_iter,
        start_index=best_idx,
    )


@dataclass
class JointTrajectory:
    """Time-indexed jointspace solutions over one gait period."""

    times: np.ndarray
    q: np.ndarray
    kind: str
    period: float
    residuals: np.ndarray
    costs: np.ndarray
    converged: np.ndarray
    iterations: np.ndarray
    smoothness_bound: float = 0.02
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.q = np.asarray(self.q, dtype=float)
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("timestamps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def full_lengths(self) -> np.ndarray:
        """All 12 length changes (N, 12) in section order l_i1, l_i2, l_i3."""
        n = len(self.times)
        out = np.empty((n, 3 * NUM_SECTIONS))
        for i in range(NUM_SECTIONS):
            l1 = self.q[:, 2 * i]
            l2 = self.q[:, 2 * i + 1]
            out[:, 3 * i] = l1
            out[:, 3 * i + 1] = l2
            out[:, 3 * i + 2] = -(l1 + l2)
        return out

    def closure_error(self) -> float:
        """Max per-joint change across the cycle wrap."""
        return float(np.abs(self.q[0] - self.q[-1]).max())

    def smoothness_violations(self) -> list[tuple[int, float]]:
        """Frames whose max per-joint change from the previous frame
        (cyclically) exceeds the smoothness bound."""
        out = []
        n = len(self.times)
        for k in range(n):
            delta = float(np.abs(self.q[k] - self.q[k - 1]).max())
            if delta > self.smoothness_bound:
                out.append((k, delta))
        return out

    def scaled(self, time_scale: float = 1.0, amplitude_scale: float = 1.0) -> "JointTrajectory":
        """Copy with the period stretched and/or joint amplitudes scaled."""
        return JointTrajectory(
            times=self.times * time_scale,
            q=self.q * amplitude_scale,
            kind=self.kind,
            period=self.period * time_scale,
            residuals=self.residuals.copy(),
            costs=self.costs.copy(),
            converged=self.converged.copy(),
            iterations=self.iterations.copy(),
            smoothness_bound=self.smoothness_bound,
            metadata=dict(self.metadata),
        )


def solve_period(
    curve_set: GaitCurveSet,
    config: RobotConfig,
    lam: float = 1.0,
    starts: int = 8,
    maxiter: int = 400,
    seed: int = 0,
    smoothness_bound: float = 0.02,
    kernel: str | None = None,
    strict: bool = False,
) -> JointTrajectory:
    """Solve every frame of a gait period in temporal order.

    Each frame warm-starts from the previous solution. If the cycle does not
    close within the smoothness bound, a second warm-started pass is run so
    the replayed trajectory has no jump at the wrap. With ``strict`` a
    non-converged frame raises NoConvergenceError carrying its index.
    """
    rng = np.random.default_rng(seed)
    # Curves are generated against the bending sections only, so the fit
    # model drops the rigid connector offsets as well.
    fit_config = config.without_offsets()
    problems = [
        IkProblem(
            curve.points,
            fit_config,
            lam=lam,
            starts=starts,
            maxiter=maxiter,
            kernel=kernel,
        )
        for curve in curve_set.curves
    ]

    def sweep(warm):
        sols = []
        for k, problem in enumerate(problems):
            sol = solve_frame(problem, warm_start=warm, rng=rng)
            if strict and not sol.converged:
                raise NoConvergenceError(
                    f"IK did not converge at frame {k}", frame_index=k, solution=sol
                )
            sols.append(sol)
            warm = sol.q
        return sols

    solutions = sweep(None)
    passes = 1
    closure = float(np.abs(solutions[0].q - solutions[-1].q).max())
    if closure > smoothness_bound:
        solutions = sweep(solutions[-1].q)
        passes = 2

    traj = JointTrajectory(
        times=np.array([c.timestamp for c in curve_set.curves]),
        q=np.array([s.q for s in solutions]),
        kind=curve_set.kind,
        period=curve_set.period,
        residuals=np.array([s.residual for s in solutions]),
        costs=np.array([s.cost for s in solutions]),
        converged=np.array([s.converged for s in solutions]),
        iterations=np.array([s.iterations for s in solutions]),
        smoothness_bound=smoothness_bound,
        metadata={
            "lam": lam,
            "starts": starts,
            "maxiter": maxiter,
            "seed": seed,
            "passes": passes,
            "kernel": problems[0].backend_name,
        },
    )
    return traj
