"""Pure-Python reference kernels.

Every function here has a twin with the same name and signature in the
Cython module ``_ckernels``.  ``sphero._backend`` picks one at import time.
The series kernels return ``(value, terms_used, max_term, converged)``.
"""
import math

import numpy as np


def series_1f1(a, b, z, rel_tol, abs_tol, max_terms, consecutive_small):
    a = complex(a)
    b = complex(b)
    z = complex(z)
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    max_term = 1.0
    small = 0
    m = 0
    while m + 1 < max_terms:
        ratio = (a + m) * z / ((b + m) * (m + 1))
        term = term * ratio
        total = total + term
        m += 1
        t = abs(term)
        if t > max_term:
            max_term = t
        # a small term counts only when the geometric tail bound t/(1-|ratio|) is small
        r = abs(ratio)
        if r < 1.0 and t <= max(rel_tol * abs(total), abs_tol) * (1.0 - r):
            small += 1
            if small >= consecutive_small:
                return total, m + 1, max_term, True
        else:
            small = 0
    return total, m + 1, max_term, False


def series_2f1(a, b, c, z, rel_tol, abs_tol, max_terms, consecutive_small):
    a = complex(a)
    b = complex(b)
    c = complex(c)
    z = float(z)
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    max_term = 1.0
    small = 0
    m = 0
    while m + 1 < max_terms:
        ratio = (a + m) * (b + m) * z / ((c + m) * (m + 1))
        term = term * ratio
        total = total + term
        m += 1
        t = abs(term)
        if t > max_term:
            max_term = t
        r = abs(ratio)
        if r < 1.0 and t <= max(rel_tol * abs(total), abs_tol) * (1.0 - r):
            small += 1
            if small >= consecutive_small:
                return total, m + 1, max_term, True
        else:
            small = 0
    return total, m + 1, max_term, False


def _double_series(diag_num, has_diag_num, c, xa1, xa2, n_xa, x, yb, has_yb, y,
                   rel_tol, max_degree):
    """Sum  sum_k P_k * sum_{m+n=k} A_m B_n  by anti-diagonals.

    P_k = (diag_num)_k / (c)_k (or 1/(c)_k), A_m carries the x-side
    Pochhammers and x^m/m!, B_n the y-side ones and y^n/n!.
    """
    A = [1.0 + 0.0j]
    B = [1.0 + 0.0j]
    P = 1.0 + 0.0j
    total = 0.0 + 0.0j
    max_term = 0.0
    prev_abs = math.inf
    small = 0
    for k in range(max_degree + 1):
        if k > 0:
            j = k - 1
            ra = x / k
            if n_xa >= 1:
                ra *= xa1 + j
            if n_xa >= 2:
                ra *= xa2 + j
            A.append(A[j] * ra)
            rb = y / k
            if has_yb:
                rb *= yb + j
            B.append(B[j] * rb)
            if has_diag_num:
                P = P * (diag_num + j) / (c + j)
            else:
                P = P / (c + j)
        diag = 0.0 + 0.0j
        diag_abs = 0.0
        diag_max = 0.0
        for m in range(k + 1):
            t = A[m] * B[k - m]
            diag += t
            at = abs(t)
            diag_abs += at
            if at > diag_max:
                diag_max = at
        pa = abs(P)
        total += P * diag
        if pa * diag_max > max_term:
            max_term = pa * diag_max
        diag_abs *= pa
        if k > 0 and diag_abs <= rel_tol * abs(total) and diag_abs <= prev_abs:
            small += 1
            if small >= 3:
                return total, k, max_term, True
        else:
            small = 0
        prev_abs = diag_abs
    return total, max_degree, max_term, False


def series_phi1(a, b, c, x, y, rel_tol, max_degree):
    return _double_series(complex(a), True, complex(c), complex(b), 0j, 1,
                          complex(x), 0j, False, complex(y), rel_tol, max_degree)


def series_phi2(b1, b2, c, x, y, rel_tol, max_degree):
    return _double_series(0j, False, complex(c), complex(b1), 0j, 1,
                          complex(x), complex(b2), True, complex(y), rel_tol, max_degree)


def series_xi1(a1, a2, b, c, x, y, rel_tol, max_degree):
    return _double_series(0j, False, complex(c), complex(a1), complex(b), 2,
                          complex(x), complex(a2), True, complex(y), rel_tol, max_degree)


def mp_recurrence(x, c, lam, phi, n_max):
    q = np.empty(n_max + 1)
    q[0] = 1.0
    cp = math.cos(phi)
    sp = math.sin(phi)
    prev = 0.0
    for n in range(n_max):
        den = n + c + 1.0
        if den == 0.0:
            raise ZeroDivisionError(f"n + c + 1 vanishes at n={n}")
        nxt = (2.0 * ((n + lam + c) * cp + x * sp) * q[n]
               - (n + 2.0 * lam + c - 1.0) * prev) / den
        prev = q[n]
        q[n + 1] = nxt
    return q


def _mehlum_rhs(s, u, a2):
    out = np.empty(12)
    out[0:3] = u[3:6]
    out[3:6] = u[6:9]
    out[6:9] = u[9:12]
    out[9:12] = -(a2 * s * s + 1.0) * u[6:9] - 3.0 * a2 * s * u[3:6]
    return out


def _two_level_rhs(s, u, alpha):
    th = 0.5 * alpha * s * s
    ct = math.cos(th)
    st = math.sin(th)
    # a' = (i/2) e^{-i th} b,  b' = (i/2) e^{i th} a
    ar, ai, br, bi = u
    return np.array([
        0.5 * (st * br - ct * bi),
        0.5 * (ct * br + st * bi),
        -0.5 * (st * ar + ct * ai),
        0.5 * (ct * ar - st * ai),
    ])


def _rolling_rhs(s, u, alpha):
    th = 0.5 * alpha * s * s
    ct = math.cos(th)
    st = math.sin(th)
    v = u.reshape(-1, 3)
    out = np.empty_like(v)
    out[:, 0] = -st * v[:, 2]
    out[:, 1] = ct * v[:, 2]
    out[:, 2] = st * v[:, 0] - ct * v[:, 1]
    return out.reshape(-1)


def _rk4_fixed(rhs, arg, state0, n_steps, h):
    y = np.array(state0, dtype=float)
    out = np.empty((n_steps + 1, y.size))
    out[0] = y
    for i in range(n_steps):
        s = i * h
        k1 = rhs(s, y, arg)
        k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1, arg)
        k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2, arg)
        k4 = rhs(s + h, y + h * k3, arg)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y
    return out


def rk4_mehlum(alpha, state0, n_steps, h):
    return _rk4_fixed(_mehlum_rhs, alpha * alpha, state0, n_steps, h)


def rk4_two_level(alpha, state0, n_steps, h):
    return _rk4_fixed(_two_level_rhs, alpha, state0, n_steps, h)


def rk4_rolling(alpha, state0, n_steps, h):
    return _rk4_fixed(_rolling_rhs, alpha, state0, n_steps, h)
