# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of the pure-numpy kernels in ``pyref``.

Same math, same complex-step gradient; written with fused scalar types so
the double and double-complex paths share one implementation.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex csin(double complex)
    double complex ccos(double complex)
    double cimag(double complex)
    double creal(double complex)

ctypedef double complex cplx

ctypedef fused floating:
    double
    cplx

DEF SERIES_TOL = 1e-12  # on s = (xi*phi)**2

cdef double SQRT3 = sqrt(3.0)


cdef inline double _re(floating x) nogil:
    if floating is double:
        return x
    else:
        return creal(x)


cdef inline floating _fsqrt(floating x) nogil:
    if floating is double:
        return sqrt(x)
    else:
        return csqrt(x)


cdef inline floating _fsin(floating x) nogil:
    if floating is double:
        return sin(x)
    else:
        return csin(x)


cdef inline floating _fcos(floating x) nogil:
    if floating is double:
        return cos(x)
    else:
        return ccos(x)


cdef inline floating _f1(floating s) nogil:
    cdef floating u
    if _re(s) < SERIES_TOL:
        return 1.0 - s / 6.0 + s * s / 120.0 - s * s * s / 5040.0
    u = _fsqrt(s)
    return _fsin(u) / u


cdef inline floating _f2(floating s) nogil:
    cdef floating u
    if _re(s) < SERIES_TOL:
        return 0.5 - s / 24.0 + s * s / 720.0 - s * s * s / 40320.0
    u = _fsqrt(s)
    return (1.0 - _fcos(u)) / s


cdef floating _chain_cost(floating* q, double* l0, double* doff, double* r_act,
                          int n_per, double[:, ::1] targets, double lam,
                          double eps, double* lo3, double* hi3,
                          double bound_weight) nogil:
    cdef floating r00 = 1.0, r01 = 0.0, r02 = 0.0
    cdef floating r10 = 0.0, r11 = 1.0, r12 = 0.0
    cdef floating r20 = 0.0, r21 = 0.0, r22 = 1.0
    cdef floating px = 0.0, py = 0.0, pz = 0.0
    cdef floating acc = 0.0, reg = 0.0, pen = 0.0
    cdef floating l1, l2, l3, a, b, x, s, f1, f2, lx, ly, lz, gx, gy, gz
    cdef floating dx, dy, dz
    cdef floating n00, n01, n02, n10, n11, n12, n20, n21, n22
    cdef floating i00, i01, i02, i10, i11, i12, i20, i21, i22
    cdef double xi, length
    cdef double e2 = eps * eps
    cdef int i, m, k = 0

    # Base point at the origin.
    dx = -targets[0, 0]
    dy = -targets[0, 1]
    dz = -targets[0, 2]
    acc = acc + _fsqrt(dx * dx + dy * dy + dz * dz + e2) - eps

    for i in range(4):
        l1 = q[2 * i]
        l2 = q[2 * i + 1]
        l3 = -(l1 + l2)
        reg = reg + l1 * l1 + l2 * l2 + l3 * l3
        if bound_weight != 0.0:
            if _re(l3) > hi3[i]:
                pen = pen + (l3 - hi3[i]) * (l3 - hi3[i])
            elif _re(l3) < lo3[i]:
                pen = pen + (lo3[i] - l3) * (lo3[i] - l3)
        a = -l1 / r_act[i]
        b = -(l1 + 2.0 * l2) / (SQRT3 * r_act[i])
        x = a * a + b * b
        length = l0[i]
        for m in range(1, n_per + 1):
            xi = (<double>m) / n_per
            s = (xi * xi) * x
            f1 = _f1(s)
            f2 = _f2(s)
            lx = length * a * xi * xi * f2
            ly = length * b * xi * xi * f2
            lz = length * xi * f1
            gx = px + r00 * lx + r01 * ly + r02 * lz
            gy = py + r10 * lx + r11 * ly + r12 * lz
            gz = pz + r20 * lx + r21 * ly + r22 * lz
            k += 1
            dx = gx - targets[k, 0]
            dy = gy - targets[k, 1]
            dz = gz - targets[k, 2]
            acc = acc + _fsqrt(dx * dx + dy * dy + dz * dz + e2) - eps
        # Advance the chain to the section tip, then along the rigid offset.
        f1 = _f1(x)
        f2 = _f2(x)
        lx = length * a * f2
        ly = length * b * f2
        lz = length * f1
        px = px + r00 * lx + r01 * ly + r02 * lz
        py = py + r10 * lx + r11 * ly + r12 * lz
        pz = pz + r20 * lx + r21 * ly + r22 * lz
        i00 = 1.0 - f2 * a * a
        i01 = -f2 * a * b
        i02 = f1 * a
        i10 = -f2 * a * b
        i11 = 1.0 - f2 * b * b
        i12 = f1 * b
        i20 = -f1 * a
        i21 = -f1 * b
        i22 = 1.0 - f2 * x
        n00 = r00 * i00 + r01 * i10 + r02 * i20
        n01 = r00 * i01 + r01 * i11 + r02 * i21
        n02 = r00 * i02 + r01 * i12 + r02 * i22
        n10 = r10 * i00 + r11 * i10 + r12 * i20
        n11 = r10 * i01 + r11 * i11 + r12 * i21
        n12 = r10 * i02 + r11 * i12 + r12 * i22
        n20 = r20 * i00 + r21 * i10 + r22 * i20
        n21 = r20 * i01 + r21 * i11 + r22 * i21
        n22 = r20 * i02 + r21 * i12 + r22 * i22
        r00 = n00; r01 = n01; r02 = n02
        r10 = n10; r11 = n11; r12 = n12
        r20 = n20; r21 = n21; r22 = n22
        if doff[i] != 0.0:
            px = px + r02 * doff[i]
            py = py + r12 * doff[i]
            pz = pz + r22 * doff[i]
    return acc + lam * reg + bound_weight * pen


def backbone_points(double[::1] q, double[::1] l0, double[::1] doff,
                    double[::1] r_act, int n_per):
    """Neutral-axis sample points of the chained sections, identity base."""
    cdef double r00 = 1.0, r01 = 0.0, r02 = 0.0
    cdef double r10 = 0.0, r11 = 1.0, r12 = 0.0
    cdef double r20 = 0.0, r21 = 0.0, r22 = 1.0
    cdef double px = 0.0, py = 0.0, pz = 0.0
    cdef double l1, l2, a, b, x, s, f1, f2, lx, ly, lz
    cdef double n00, n01, n02, n10, n11, n12, n20, n21, n22
    cdef double i00, i01, i02, i10, i11, i12, i20, i21, i22
    cdef double xi, length
    cdef int i, m, k = 0
    out_arr = np.zeros((4 * n_per + 1, 3))
    cdef double[:, ::1] out = out_arr
    for i in range(4):
        l1 = q[2 * i]
        l2 = q[2 * i + 1]
        a = -l1 / r_act[i]
        b = -(l1 + 2.0 * l2) / (SQRT3 * r_act[i])
        x = a * a + b * b
        length = l0[i]
        for m in range(1, n_per + 1):
            xi = (<double>m) / n_per
            s = (xi * xi) * x
            f1 = _f1(s)
            f2 = _f2(s)
            lx = length * a * xi * xi * f2
            ly = length * b * xi * xi * f2
            lz = length * xi * f1
            k += 1
            out[k, 0] = px + r00 * lx + r01 * ly + r02 * lz
            out[k, 1] = py + r10 * lx + r11 * ly + r12 * lz
            out[k, 2] = pz + r20 * lx + r21 * ly + r22 * lz
        f1 = _f1(x)
        f2 = _f2(x)
        lx = length * a * f2
        ly = length * b * f2
        lz = length * f1
        px = px + r00 * lx + r01 * ly + r02 * lz
        py = py + r10 * lx + r11 * ly + r12 * lz
        pz = pz + r20 * lx + r21 * ly + r22 * lz
        i00 = 1.0 - f2 * a * a
        i01 = -f2 * a * b
        i02 = f1 * a
        i10 = -f2 * a * b
        i11 = 1.0 - f2 * b * b
        i12 = f1 * b
        i20 = -f1 * a
        i21 = -f1 * b
        i22 = 1.0 - f2 * x
        n00 = r00 * i00 + r01 * i10 + r02 * i20
        n01 = r00 * i01 + r01 * i11 + r02 * i21
        n02 = r00 * i02 + r01 * i12 + r02 * i22
        n10 = r10 * i00 + r11 * i10 + r12 * i20
        n11 = r10 * i01 + r11 * i11 + r12 * i21
        n12 = r10 * i02 + r11 * i12 + r12 * i22
        n20 = r20 * i00 + r21 * i10 + r22 * i20
        n21 = r20 * i01 + r21 * i11 + r22 * i21
        n22 = r20 * i02 + r21 * i12 + r22 * i22
        r00 = n00; r01 = n01; r02 = n02
        r10 = n10; r11 = n11; r12 = n12
        r20 = n20; r21 = n21; r22 = n22
        if doff[i] != 0.0:
            px = px + r02 * doff[i]
            py = py + r12 * doff[i]
            pz = pz + r22 * doff[i]
    return out_arr


def cost(double[::1] q, double[:, ::1] targets, double[::1] l0,
         double[::1] doff, double[::1] r_act, int n_per, double lam,
         double eps, double[::1] lo3, double[::1] hi3, double bound_weight):
    """Scalar fitting cost; eps = 0 gives the exact (unsmoothed) cost."""
    return _chain_cost(&q[0], &l0[0], &doff[0], &r_act[0], n_per, targets,
                       lam, eps, &lo3[0], &hi3[0], bound_weight)


def cost_and_grad(double[::1] q, double[:, ::1] targets, double[::1] l0,
                  double[::1] doff, double[::1] r_act, int n_per, double lam,
                  double eps, double[::1] lo3, double[::1] hi3,
                  double bound_weight, double h=1e-30):
    """Cost and its 8-gradient via complex-step differentiation."""
    cdef cplx qc[8]
    cdef int j
    cdef double value
    grad_arr = np.empty(8)
    cdef double[::1] grad = grad_arr
    value = _chain_cost(&q[0], &l0[0], &doff[0], &r_act[0], n_per, targets,
                        lam, eps, &lo3[0], &hi3[0], bound_weight)
    for j in range(8):
        qc[j] = q[j]
    for j in range(8):
        qc[j] = q[j] + 1j * h
        grad[j] = cimag(_chain_cost(&qc[0], &l0[0], &doff[0], &r_act[0],
                                    n_per, targets, lam, eps, &lo3[0],
                                    &hi3[0], bound_weight)) / h
        qc[j] = q[j]
    return value, grad_arr
