# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same names, signatures and results as ``_pykernels``."""
from libc.math cimport cos, sin, fabs, INFINITY
from libc.stdlib cimport malloc, free

import numpy as np


cdef inline double cabs_(double complex z) nogil:
    return abs(z)


def series_1f1(a, b, z, double rel_tol, double abs_tol, long max_terms,
               long consecutive_small):
    cdef double complex ca = a, cb = b, cz = z
    cdef double complex term = 1.0, total = 1.0, ratio
    cdef double max_term = 1.0, t, lim, r
    cdef long small = 0, m = 0
    while m + 1 < max_terms:
        ratio = (ca + m) * cz / ((cb + m) * (m + 1))
        term = term * ratio
        total = total + term
        m += 1
        t = cabs_(term)
        if t > max_term:
            max_term = t
        lim = rel_tol * cabs_(total)
        if lim < abs_tol:
            lim = abs_tol
        r = cabs_(ratio)
        if r < 1.0 and t <= lim * (1.0 - r):
            small += 1
            if small >= consecutive_small:
                return complex(total), m + 1, max_term, True
        else:
            small = 0
    return complex(total), m + 1, max_term, False


def series_2f1(a, b, c, double z, double rel_tol, double abs_tol, long max_terms,
               long consecutive_small):
    cdef double complex ca = a, cb = b, cc = c
    cdef double complex term = 1.0, total = 1.0, ratio
    cdef double max_term = 1.0, t, lim, r
    cdef long small = 0, m = 0
    while m + 1 < max_terms:
        ratio = (ca + m) * (cb + m) * z / ((cc + m) * (m + 1))
        term = term * ratio
        total = total + term
        m += 1
        t = cabs_(term)
        if t > max_term:
            max_term = t
        lim = rel_tol * cabs_(total)
        if lim < abs_tol:
            lim = abs_tol
        r = cabs_(ratio)
        if r < 1.0 and t <= lim * (1.0 - r):
            small += 1
            if small >= consecutive_small:
                return complex(total), m + 1, max_term, True
        else:
            small = 0
    return complex(total), m + 1, max_term, False


cdef tuple _double_series(double complex diag_num, bint has_diag_num, double complex c,
                          double complex xa1, double complex xa2, int n_xa,
                          double complex x, double complex yb, bint has_yb,
                          double complex y, double rel_tol, long max_degree):
    cdef double complex *A = <double complex *> malloc((max_degree + 1) * sizeof(double complex))
    cdef double complex *B = <double complex *> malloc((max_degree + 1) * sizeof(double complex))
    if A == NULL or B == NULL:
        free(A)
        free(B)
        raise MemoryError()
    cdef double complex P = 1.0, total = 0.0, diag, t, ra, rb
    cdef double max_term = 0.0, prev_abs = INFINITY, diag_abs, diag_max, at, pa
    cdef long k, m, j, small = 0
    A[0] = 1.0
    B[0] = 1.0
    try:
        for k in range(max_degree + 1):
            if k > 0:
                j = k - 1
                ra = x / k
                if n_xa >= 1:
                    ra = ra * (xa1 + j)
                if n_xa >= 2:
                    ra = ra * (xa2 + j)
                A[k] = A[j] * ra
                rb = y / k
                if has_yb:
                    rb = rb * (yb + j)
                B[k] = B[j] * rb
                if has_diag_num:
                    P = P * (diag_num + j) / (c + j)
                else:
                    P = P / (c + j)
            diag = 0.0
            diag_abs = 0.0
            diag_max = 0.0
            for m in range(k + 1):
                t = A[m] * B[k - m]
                diag = diag + t
                at = cabs_(t)
                diag_abs += at
                if at > diag_max:
                    diag_max = at
            pa = cabs_(P)
            total = total + P * diag
            if pa * diag_max > max_term:
                max_term = pa * diag_max
            diag_abs *= pa
            if k > 0 and diag_abs <= rel_tol * cabs_(total) and diag_abs <= prev_abs:
                small += 1
                if small >= 3:
                    return complex(total), k, max_term, True
            else:
                small = 0
            prev_abs = diag_abs
        return complex(total), max_degree, max_term, False
    finally:
        free(A)
        free(B)


def series_phi1(a, b, c, x, y, double rel_tol, long max_degree):
    return _double_series(a, True, c, b, 0.0, 1, x, 0.0, False, y, rel_tol, max_degree)


def series_phi2(b1, b2, c, x, y, double rel_tol, long max_degree):
    return _double_series(0.0, False, c, b1, 0.0, 1, x, b2, True, y, rel_tol, max_degree)


def series_xi1(a1, a2, b, c, x, y, double rel_tol, long max_degree):
    return _double_series(0.0, False, c, a1, b, 2, x, a2, True, y, rel_tol, max_degree)


def mp_recurrence(double x, double c, double lam, double phi, long n_max):
    q_arr = np.empty(n_max + 1)
    cdef double[::1] q = q_arr
    cdef double cp = cos(phi), sp = sin(phi), prev = 0.0, den, nxt
    cdef long n
    q[0] = 1.0
    for n in range(n_max):
        den = n + c + 1.0
        if den == 0.0:
            raise ZeroDivisionError(f"n + c + 1 vanishes at n={n}")
        nxt = (2.0 * ((n + lam + c) * cp + x * sp) * q[n]
               - (n + 2.0 * lam + c - 1.0) * prev) / den
        prev = q[n]
        q[n + 1] = nxt
    return q_arr


# Right-hand sides write into `out`; kind selects the system.
cdef void _rhs(int kind, double arg, double s, double *u, double *out, int dim) nogil:
    cdef double th, ct, st, a2
    cdef int i
    if kind == 0:
        a2 = arg
        for i in range(9):
            out[i] = u[i + 3]
        for i in range(3):
            out[9 + i] = -(a2 * s * s + 1.0) * u[6 + i] - 3.0 * a2 * s * u[3 + i]
    elif kind == 1:
        th = 0.5 * arg * s * s
        ct = cos(th)
        st = sin(th)
        out[0] = 0.5 * (st * u[2] - ct * u[3])
        out[1] = 0.5 * (ct * u[2] + st * u[3])
        out[2] = -0.5 * (st * u[0] + ct * u[1])
        out[3] = 0.5 * (ct * u[0] - st * u[1])
    else:
        th = 0.5 * arg * s * s
        ct = cos(th)
        st = sin(th)
        for i in range(0, dim, 3):
            out[i] = -st * u[i + 2]
            out[i + 1] = ct * u[i + 2]
            out[i + 2] = st * u[i] - ct * u[i + 1]


cdef object _rk4_fixed(int kind, double arg, state0, long n_steps, double h):
    y0 = np.ascontiguousarray(state0, dtype=float)
    cdef int dim = y0.shape[0]
    res = np.empty((n_steps + 1, dim))
    cdef double[:, ::1] out = res
    cdef double *y = <double *> malloc(6 * dim * sizeof(double))
    if y == NULL:
        raise MemoryError()
    cdef double *k1 = y + dim
    cdef double *k2 = y + 2 * dim
    cdef double *k3 = y + 3 * dim
    cdef double *k4 = y + 4 * dim
    cdef double *tmp = y + 5 * dim
    cdef long i
    cdef int j
    cdef double s
    cdef double[::1] y0v = y0
    try:
        for j in range(dim):
            y[j] = y0v[j]
            out[0, j] = y[j]
        with nogil:
            for i in range(n_steps):
                s = i * h
                _rhs(kind, arg, s, y, k1, dim)
                for j in range(dim):
                    tmp[j] = y[j] + 0.5 * h * k1[j]
                _rhs(kind, arg, s + 0.5 * h, tmp, k2, dim)
                for j in range(dim):
                    tmp[j] = y[j] + 0.5 * h * k2[j]
                _rhs(kind, arg, s + 0.5 * h, tmp, k3, dim)
                for j in range(dim):
                    tmp[j] = y[j] + h * k3[j]
                _rhs(kind, arg, s + h, tmp, k4, dim)
                for j in range(dim):
                    y[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
                    out[i + 1, j] = y[j]
    finally:
        free(y)
    return res


def rk4_mehlum(double alpha, state0, long n_steps, double h):
    return _rk4_fixed(0, alpha * alpha, state0, n_steps, h)


def rk4_two_level(double alpha, state0, long n_steps, double h):
    return _rk4_fixed(1, alpha, state0, n_steps, h)


def rk4_rolling(double alpha, state0, long n_steps, double h):
    return _rk4_fixed(2, alpha, state0, n_steps, h)
