"""Scalar special functions with complex parameters.

Pochhammer symbol, log-gamma (Lanczos), the Kummer function 1F1, the Gauss
series 2F1 on the real segment (-1, 1), and the even/odd parabolic cylinder
solutions y1, y2.  Series are summed by Maclaurin expansion only; the
supported argument domain for 1F1 is ``|z| <= MAX_ABS_Z``.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

from ._backend import kernels
from .errors import (
    ConvergenceError,
    DomainError,
    NonFiniteError,
    PoleError,
    SpheroOverflowError,
)

MAX_ABS_Z = 50.0

_POLE_TOL = 1e-12
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# Lanczos coefficients for g = 607/128 (Godfrey), 15 terms.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for single Maclaurin series."""

    rel_tol: float = 1e-14
    abs_tol: float = 1e-300
    max_terms: int = 10000
    consecutive_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "SeriesControl":
        """Defaults, with ``SPHERO_MAX_TERMS`` overriding ``max_terms`` when set."""
        env = os.environ.get("SPHERO_MAX_TERMS")
        if env and "max_terms" not in overrides:
            overrides["max_terms"] = int(env)
        return cls(**overrides)


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class EvalResult:
    value: complex
    terms_used: int
    max_term_magnitude: float
    cancellation_digits: float

    def __complex__(self):
        return complex(self.value)


def _make_result(value, terms, max_term, abs_tol) -> EvalResult:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NonFiniteError(f"series produced a non-finite value {value!r}")
    denom = max(abs(value), abs_tol)
    digits = math.log10(max_term / denom) if max_term > 0 else 0.0
    return EvalResult(complex(value), int(terms), float(max_term), digits)


def is_nonpositive_integer(z, tol: float = _POLE_TOL) -> bool:
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return False
    return abs(z.real - round(z.real)) <= tol


def pochhammer(q, n: int) -> complex:
    """Rising factorial (q)_n = q (q+1) ... (q+n-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = complex(q)
    if n <= 64 or is_nonpositive_integer(q) or is_nonpositive_integer(q + n):
        out = 1.0 + 0.0j
        for k in range(n):
            out *= q + k
            if out == 0:
                break
    else:
        log_out = ln_gamma(q + n) - ln_gamma(q)
        if log_out.real > 709.0:
            raise SpheroOverflowError(f"(q)_n overflows for q={q!r}, n={n}")
        out = cmath.exp(log_out)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise SpheroOverflowError(f"(q)_n overflows for q={q!r}, n={n}")
    return out


def _lanczos_ln_gamma(z: complex) -> complex:
    z = z - 1.0
    x = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        x += _LANCZOS_C[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_sin(w: complex) -> complex:
    """log(sin w) modulo 2*pi*i, without overflow for large |Im w|."""
    w = complex(w)
    if w.imag >= 0:
        return -1j * w + cmath.log(0.5j) + cmath.log(1.0 - cmath.exp(2j * w))
    return 1j * w - cmath.log(2j) + cmath.log(1.0 - cmath.exp(-2j * w))


def log_cos(w: complex) -> complex:
    """log(cos w) modulo 2*pi*i, without overflow for large |Im w|."""
    w = complex(w)
    if w.imag >= 0:
        return -1j * w - math.log(2.0) + cmath.log(1.0 + cmath.exp(2j * w))
    return 1j * w - math.log(2.0) + cmath.log(1.0 + cmath.exp(-2j * w))


def ln_gamma(z) -> complex:
    """Principal-branch log-gamma.

    Lanczos sum for Re z >= 1/2, the reflection formula below that.  In the
    reflection region the imaginary part is moved onto the principal branch
    by accumulating arg(z + k) up to the Lanczos region.
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log-gamma pole at z={z!r}")
    if z.real >= 0.5:
        return _lanczos_ln_gamma(z)
    val = _LOG_PI - log_sin(math.pi * z) - _lanczos_ln_gamma(1.0 - z)
    n = math.ceil(0.5 - z.real)
    if n <= 10000:
        im = _lanczos_ln_gamma(z + n).imag
        for k in range(n):
            im -= cmath.phase(z + k)
        val = complex(val.real, val.imag + 2.0 * math.pi * round((im - val.imag) / (2.0 * math.pi)))
    return val


def gamma(z) -> complex:
    return cmath.exp(ln_gamma(z))


def rgamma(z) -> complex:
    """1/Gamma(z), zero at the poles."""
    if is_nonpositive_integer(z):
        return 0j
    return cmath.exp(-ln_gamma(z))


def gamma_ratio(num=(), den=(), scale: complex = 0j) -> complex:
    """exp(scale) * prod Gamma(num) / prod Gamma(den), evaluated in log space.

    Returns 0 when a denominator argument is a pole; raises PoleError when a
    numerator argument is.
    """
    for z in num:
        if is_nonpositive_integer(z):
            raise PoleError(f"Gamma({complex(z)!r}) in a numerator is a pole")
    if any(is_nonpositive_integer(z) for z in den):
        return 0j
    log_val = complex(scale)
    log_val += sum((ln_gamma(z) for z in num), 0j)
    log_val -= sum((ln_gamma(z) for z in den), 0j)
    if log_val.real > 709.0:
        raise SpheroOverflowError(f"gamma product overflows (log magnitude {log_val.real:.1f})")
    return cmath.exp(log_val)


def hyp1f1(a, b, z, ctrl: SeriesControl | None = None) -> EvalResult:
    """Kummer's confluent hypergeometric function by its Maclaurin series."""
    ctrl = ctrl or DEFAULT_CONTROL
    if is_nonpositive_integer(b):
        raise PoleError(f"1F1 lower parameter b={complex(b)!r} is a nonpositive integer")
    if abs(complex(z)) > MAX_ABS_Z:
        raise DomainError(f"|z|={abs(complex(z)):.3g} exceeds the supported 1F1 domain {MAX_ABS_Z}")
    value, terms, max_term, ok = kernels.series_1f1(
        complex(a), complex(b), complex(z),
        ctrl.rel_tol, ctrl.abs_tol, ctrl.max_terms, ctrl.consecutive_small)
    if not ok:
        raise ConvergenceError(f"1F1({a}, {b}; {z}) not converged in {ctrl.max_terms} terms")
    return _make_result(value, terms, max_term, ctrl.abs_tol)


def hyp2f1(a, b, c, z: float, ctrl: SeriesControl | None = None) -> EvalResult:
    """Gauss hypergeometric series for real |z| < 1."""
    ctrl = ctrl or DEFAULT_CONTROL
    z = float(z)
    if not abs(z) < 1.0:
        raise DomainError(f"2F1 series requires |z| < 1, got {z}")
    if is_nonpositive_integer(c):
        raise PoleError(f"2F1 lower parameter c={complex(c)!r} is a nonpositive integer")
    value, terms, max_term, ok = kernels.series_2f1(
        complex(a), complex(b), complex(c), z,
        ctrl.rel_tol, ctrl.abs_tol, ctrl.max_terms, ctrl.consecutive_small)
    if not ok:
        raise ConvergenceError(f"2F1({a}, {b}, {c}; {z}) not converged in {ctrl.max_terms} terms")
    return _make_result(value, terms, max_term, ctrl.abs_tol)


def pcf_y1(a, z, ctrl: SeriesControl | None = None) -> complex:
    """Even solution of y'' - (z^2/4 + a) y = 0 with y(0) = 1."""
    z2 = complex(z) * complex(z)
    return cmath.exp(-0.25 * z2) * hyp1f1(0.5 * complex(a) + 0.25, 0.5, 0.5 * z2, ctrl).value


def pcf_y2(a, z, ctrl: SeriesControl | None = None) -> complex:
    """Odd solution of y'' - (z^2/4 + a) y = 0 with y'(0) = 1."""
    z = complex(z)
    z2 = z * z
    return z * cmath.exp(-0.25 * z2) * hyp1f1(0.5 * complex(a) + 0.75, 1.5, 0.5 * z2, ctrl).value
