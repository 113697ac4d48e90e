"""Associated Meixner-Pollaczek polynomials Q_n^lambda(x; phi, c).

Generated by the forward three-term recurrence

    (n+c+1) Q_{n+1} = 2[(n+lambda+c) cos(phi) + x sin(phi)] Q_n - (n+2 lambda+c-1) Q_{n-1},

Q_{-1} = 0, Q_0 = 1.  Also here: the power series of the curve coordinates
in these polynomials, and the three generating functions for lambda = 0,
phi = pi/2, c in {1/2, 1, 3/2} with their closed forms in Kummer functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .curve import CurveParams
from .errors import ConvergenceError, SingularityError
from .special import SeriesControl, hyp1f1

C_CASES = (0.5, 1.0, 1.5)


@dataclass(frozen=True)
class MPParams:
    lam: float
    x: float
    phi: float
    c: float


@dataclass(frozen=True)
class PolySequence:
    params: MPParams
    values: np.ndarray  # Q_0 .. Q_N


def mp_sequence(params: MPParams, n_max: int) -> PolySequence:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    for n in range(n_max):
        if n + params.c + 1.0 == 0.0:
            raise SingularityError(f"n + c + 1 = 0 at n={n}")
    q = kernels.mp_recurrence(float(params.x), float(params.c), float(params.lam),
                              float(params.phi), int(n_max))
    return PolySequence(params, np.asarray(q))


def recurrence_residuals(seq: PolySequence) -> np.ndarray:
    """Residual of the recurrence at every n with both neighbours present,
    relative to max(1, max |Q|)."""
    p = seq.params
    q = seq.values
    scale = max(1.0, float(np.abs(q).max()))
    res = np.zeros(len(q))
    cp, sp = math.cos(p.phi), math.sin(p.phi)
    for n in range(len(q) - 1):
        prev = q[n - 1] if n > 0 else 0.0
        r = ((n + p.c + 1.0) * q[n + 1]
             - 2.0 * ((n + p.lam + p.c) * cp + p.x * sp) * q[n]
             + (n + 2.0 * p.lam + p.c - 1.0) * prev)
        res[n] = abs(r) / scale
    return res


def _q_half_pi(x: float, c: float, n: int) -> np.ndarray:
    return mp_sequence(MPParams(0.0, x, math.pi / 2.0, c), n).values


def _power_series(p: CurveParams, s: float, c: float, weight0: float,
                  extra_power: int, n_terms: int, rel_tol: float) -> float:
    # sum_j Q_j(1/(4 alpha); pi/2, c) (-alpha/2)^j s^(2j + extra) / (weight0)_j
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    q = _q_half_pi(1.0 / (4.0 * p.alpha), c, n_terms - 1)
    ratio = -0.5 * p.alpha * s * s
    coef = s ** extra_power
    total = 0.0
    term = 0.0
    for j in range(n_terms):
        if j > 0:
            coef *= ratio / (weight0 + j - 1)
        term = q[j] * coef
        total += term
    if abs(term) > max(rel_tol * abs(total), 1e-300):
        raise ConvergenceError(f"coordinate series not converged in {n_terms} terms at s={s}")
    return total


def series_x(p: CurveParams, s: float, n_terms: int = 80, rel_tol: float = 1e-14) -> float:
    return _power_series(p, s, 0.5, 1.0, 1, n_terms, rel_tol)


def series_y(p: CurveParams, s: float, n_terms: int = 80, rel_tol: float = 1e-14) -> float:
    return 0.5 * _power_series(p, s, 1.0, 1.5, 2, n_terms, rel_tol)


def series_z(p: CurveParams, s: float, n_terms: int = 80, rel_tol: float = 1e-14) -> float:
    return p.alpha / 6.0 * _power_series(p, s, 1.5, 2.0, 3, n_terms, rel_tol)


def _check_case(c_case):
    c = float(c_case)
    if c not in C_CASES:
        raise ValueError(f"c_case must be one of {C_CASES}")
    return c


def genfun_lhs(c_case: float, x: float, t: float, n_terms: int = 80) -> float:
    """Partial sum of Q_j^0(x; pi/2, c) t^j / w_j,
    w_j = j!, (3/2)_j, (j+1)! for c = 1/2, 1, 3/2."""
    c = _check_case(c_case)
    q = _q_half_pi(x, c, n_terms - 1)
    w0 = {0.5: 1.0, 1.0: 1.5, 1.5: 2.0}[c]
    coef = 1.0
    total = 0.0
    for j in range(n_terms):
        if j > 0:
            coef *= t / (w0 + j - 1)
        total += q[j] * coef
    return total


def _real(z: complex, scale: float) -> float:
    if abs(z.imag) > 1e-12 * max(1.0, scale):
        raise ArithmeticError(f"generating-function closed form is not real: {z!r}")
    return z.real


def genfun_rhs(c_case: float, x: float, t: float, ctrl: SeriesControl | None = None) -> float:
    """Closed form of the generating function as products of 1F1 at +-i t."""
    c = _check_case(c_case)
    hx = 0.5 * x
    it = complex(0.0, t)
    if c == 1.0:
        if x * t == 0.0:
            raise SingularityError("the c = 1 closed form is 0/0 at x t = 0; use genfun_lhs")
        prod = (hyp1f1(complex(0.0, hx), 0.5, -it, ctrl).value
                * hyp1f1(complex(0.0, -hx), 0.5, it, ctrl).value)
        val = (prod - 1.0) / (2.0 * x * t)
        return _real(val, abs(prod) / abs(2.0 * x * t))
    A = (hyp1f1(complex(0.0, -hx), 0.5, it, ctrl).value
         * hyp1f1(complex(0.5, hx), 1.5, -it, ctrl).value)
    B = (hyp1f1(complex(0.0, hx), 0.5, -it, ctrl).value
         * hyp1f1(complex(0.5, -hx), 1.5, it, ctrl).value)
    if c == 0.5:
        return _real(0.5 * (A + B), abs(A))
    if t == 0.0:
        raise SingularityError("the c = 3/2 closed form is singular at t = 0; use genfun_lhs")
    val = 1.5j / t * (A - B)
    return _real(val, 1.5 * abs(A) / abs(t))
