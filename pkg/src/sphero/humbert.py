"""Humbert confluent double series phi1, phi2 and Xi1.

The double sums are accumulated along anti-diagonals m + n = k, so the
Pochhammer pair indexed by m + n is shared by a whole diagonal.  The
``*_rect`` variants sum a plain rectangle m, n < N and exist as an
independent check on the diagonal truncation.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._backend import kernels
from .errors import ConvergenceError, DomainError, PoleError
from .special import SeriesControl, EvalResult, _make_result, hyp2f1, is_nonpositive_integer


@dataclass(frozen=True)
class DoubleSeriesControl:
    rel_tol: float = 1e-13
    max_total_degree: int = 400

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_total_degree < 1:
            raise ValueError("max_total_degree must be >= 1")


DEFAULT_DOUBLE_CONTROL = DoubleSeriesControl()
_ABS_FLOOR = 1e-300


def _check(c, x=None):
    if is_nonpositive_integer(c):
        raise PoleError(f"lower parameter c={complex(c)!r} is a nonpositive integer")
    if x is not None and not abs(complex(x)) < 1.0:
        raise DomainError(f"series requires |x| < 1, got |x|={abs(complex(x)):.3g}")


def _finish(name, out, ctrl):
    value, degree, max_term, ok = out
    if not ok:
        raise ConvergenceError(f"{name} not converged by total degree {ctrl.max_total_degree}")
    return _make_result(value, degree, max_term, _ABS_FLOOR)


def phi1(a, b, c, x, y, ctrl: DoubleSeriesControl | None = None) -> EvalResult:
    """phi1(a,b,c;x,y) = sum (a)_{m+n} (b)_m / (c)_{m+n} x^m/m! y^n/n!,  |x| < 1.

    ``terms_used`` of the result is the last total degree summed.
    """
    ctrl = ctrl or DEFAULT_DOUBLE_CONTROL
    _check(c, x)
    out = kernels.series_phi1(complex(a), complex(b), complex(c), complex(x), complex(y),
                              ctrl.rel_tol, ctrl.max_total_degree)
    return _finish("phi1", out, ctrl)


def phi2(b1, b2, c, x, y, ctrl: DoubleSeriesControl | None = None) -> EvalResult:
    """phi2(b1,b2,c;x,y) = sum (b1)_m (b2)_n / (c)_{m+n} x^m/m! y^n/n!  (entire)."""
    ctrl = ctrl or DEFAULT_DOUBLE_CONTROL
    _check(c)
    out = kernels.series_phi2(complex(b1), complex(b2), complex(c), complex(x), complex(y),
                              ctrl.rel_tol, ctrl.max_total_degree)
    return _finish("phi2", out, ctrl)


def xi1(a1, a2, b, c, x, y, ctrl: DoubleSeriesControl | None = None) -> EvalResult:
    """Xi1(a1,a2,b,c;x,y) = sum (a1)_m (a2)_n (b)_m / (c)_{m+n} x^m/m! y^n/n!,  |x| < 1."""
    ctrl = ctrl or DEFAULT_DOUBLE_CONTROL
    _check(c, x)
    out = kernels.series_xi1(complex(a1), complex(a2), complex(b), complex(c),
                             complex(x), complex(y), ctrl.rel_tol, ctrl.max_total_degree)
    return _finish("Xi1", out, ctrl)


def xi1_single_sum(a1, a2, b, c, x: float, y, n_terms: int,
                   ctrl: SeriesControl | None = None) -> complex:
    """Xi1 as a single sum over the y-index with Gauss-series coefficients.

    Xi1 = sum_n (a2)_n / (c)_n * 2F1(a1, b, c + n; x) * y^n / n!,
    truncated after ``n_terms`` outer terms.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    _check(c, x)
    a1, a2, b, c, y = (complex(v) for v in (a1, a2, b, c, y))
    weight = 1.0 + 0.0j
    total = 0j
    for n in range(n_terms):
        if n > 0:
            weight *= (a2 + n - 1) * y / ((c + n - 1) * n)
        total += weight * hyp2f1(a1, b, c + n, x, ctrl).value
    return total


def _rect(term_ratio_x, term_ratio_y, diag_ratio, n_max):
    # row-by-row: T(m, n) built from T(m, 0) with the y-ratio, which sees
    # the (c)_{m+n} growth through diag_ratio
    total = 0j
    row0 = 1.0 + 0.0j
    for m in range(n_max):
        if m > 0:
            row0 *= term_ratio_x(m - 1) * diag_ratio(m - 1)
        t = row0
        for n in range(n_max):
            if n > 0:
                t *= term_ratio_y(n - 1) * diag_ratio(m + n - 1)
            total += t
    return total


def phi1_rect(a, b, c, x, y, n_max: int = 120) -> complex:
    _check(c, x)
    a, b, c, x, y = (complex(v) for v in (a, b, c, x, y))
    return _rect(lambda j: (b + j) * x / (j + 1),
                 lambda j: y / (j + 1),
                 lambda k: (a + k) / (c + k), n_max)


def phi2_rect(b1, b2, c, x, y, n_max: int = 120) -> complex:
    _check(c)
    b1, b2, c, x, y = (complex(v) for v in (b1, b2, c, x, y))
    return _rect(lambda j: (b1 + j) * x / (j + 1),
                 lambda j: (b2 + j) * y / (j + 1),
                 lambda k: 1.0 / (c + k), n_max)


def xi1_rect(a1, a2, b, c, x, y, n_max: int = 120) -> complex:
    _check(c, x)
    a1, a2, b, c, x, y = (complex(v) for v in (a1, a2, b, c, x, y))
    return _rect(lambda j: (a1 + j) * (b + j) * x / (j + 1),
                 lambda j: (a2 + j) * y / (j + 1),
                 lambda k: 1.0 / (c + k), n_max)
