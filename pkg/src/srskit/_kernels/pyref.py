"""Reference (pure numpy) implementation of the hot IK kernels.

The forward map is written in terms of the bending vector
(a, b) = (phi*cos(theta), phi*sin(theta)), which is linear in the joint
length changes:

    a = -l1 / r          b = -(l1 + 2*l2) / (sqrt(3) * r)

Every arc term is an entire function of phi**2 = a**2 + b**2, so the whole
cost is complex-analytic in the joints and its gradient can be taken by
complex-step differentiation with no subtractive cancellation.
"""

from __future__ import annotations

import math

import numpy as np

_SQRT3 = math.sqrt(3.0)
_SERIES_TOL = 1e-12  # on s = (xi*phi)**2, i.e. phi < 1e-6 at xi = 1


def _f1(s):
    """sin(sqrt(s))/sqrt(s); entire in s."""
    s = np.asarray(s)
    small = s.real < _SERIES_TOL
    safe = np.where(small, 1.0, s)
    u = np.sqrt(safe)
    series = 1.0 - s / 6.0 + s * s / 120.0 - s * s * s / 5040.0
    return np.where(small, series, np.sin(u) / u)


def _f2(s):
    """(1 - cos(sqrt(s)))/s; entire in s."""
    s = np.asarray(s)
    small = s.real < _SERIES_TOL
    safe = np.where(small, 1.0, s)
    u = np.sqrt(safe)
    series = 0.5 - s / 24.0 + s * s / 720.0 - s * s * s / 40320.0
    return np.where(small, series, (1.0 - np.cos(u)) / safe)


def _section_terms(l1, l2, r_act, length, n_per, dtype):
    """Sample positions (n_per, 3) plus the tip rotation and translation."""
    a = -l1 / r_act
    b = -(l1 + 2.0 * l2) / (_SQRT3 * r_act)
    x = a * a + b * b
    xi = np.arange(1, n_per + 1, dtype=float) / n_per
    s = xi * xi * x
    f1 = _f1(s)
    f2 = _f2(s)
    pts = np.empty((n_per, 3), dtype=dtype)
    pts[:, 0] = length * a * xi * xi * f2
    pts[:, 1] = length * b * xi * xi * f2
    pts[:, 2] = length * xi * f1
    f1t = f1[-1]
    f2t = f2[-1]
    rot = np.array(
        [
            [1.0 - f2t * a * a, -f2t * a * b, f1t * a],
            [-f2t * a * b, 1.0 - f2t * b * b, f1t * b],
            [-f1t * a, -f1t * b, 1.0 - f2t * x],
        ],
        dtype=dtype,
    )
    return pts, rot, pts[-1].copy()


def backbone_points(q, l0, doff, r_act, n_per):
    """Neutral-axis sample points of the chained sections, identity base.

    Returns (4*n_per + 1, 3); row 0 is the base point at the origin.
    """
    q = np.asarray(q)
    dtype = q.dtype if np.iscomplexobj(q) else float
    out = np.zeros((4 * n_per + 1, 3), dtype=dtype)
    rot = np.eye(3, dtype=dtype)
    pos = np.zeros(3, dtype=dtype)
    k = 1
    for i in range(4):
        pts, rot_i, tip = _section_terms(q[2 * i], q[2 * i + 1], r_act[i], l0[i], n_per, dtype)
        out[k : k + n_per] = pts @ rot.T + pos
        k += n_per
        pos = pos + rot @ tip
        rot = rot @ rot_i
        pos = pos + rot[:, 2] * doff[i]
    return out


def cost(q, targets, l0, doff, r_act, n_per, lam, eps, lo3, hi3, bound_weight):
    """Fitting cost: sum of (smoothed) point distances to the targets, plus
    lam * sum of all 12 squared length changes, plus a hinge penalty keeping
    the dependent third length change inside [lo3, hi3].

    eps = 0 gives the exact (unsmoothed) cost.
    """
    q = np.asarray(q)
    pts = backbone_points(q, l0, doff, r_act, n_per)
    d = pts - np.asarray(targets, dtype=float)
    d2 = d[:, 0] ** 2 + d[:, 1] ** 2 + d[:, 2] ** 2
    total = np.sum(np.sqrt(d2 + eps * eps) - eps)
    reg = 0.0
    pen = 0.0
    for i in range(4):
        l1 = q[2 * i]
        l2 = q[2 * i + 1]
        l3 = -(l1 + l2)
        reg = reg + l1 * l1 + l2 * l2 + l3 * l3
        if bound_weight != 0.0:
            if l3.real > hi3[i]:
                pen = pen + (l3 - hi3[i]) ** 2
            elif l3.real < lo3[i]:
                pen = pen + (lo3[i] - l3) ** 2
    return total + lam * reg + bound_weight * pen


def cost_and_grad(q, targets, l0, doff, r_act, n_per, lam, eps, lo3, hi3, bound_weight, h=1e-30):
    """Cost and its 8-gradient via complex-step differentiation."""
    q = np.asarray(q, dtype=float)
    value = float(cost(q, targets, l0, doff, r_act, n_per, lam, eps, lo3, hi3, bound_weight))
    grad = np.empty(8)
    qc = q.astype(complex)
    for j in range(8):
        qc[j] = q[j] + 1j * h
        grad[j] = cost(qc, targets, l0, doff, r_act, n_per, lam, eps, lo3, hi3, bound_weight).imag / h
        qc[j] = q[j]
    return value, grad
