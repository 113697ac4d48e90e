"""The spherical clothoid on the unit sphere centred at (0, 1, 0).

Coordinates come from products of Kummer functions of w = i*alpha*s^2/2:

    x + i z = s * F(s) * G(s),        y = 2 - 2 |H(s)|^2,
    F = 1F1(-i/(8a), 1/2; -w),  G = 1F1(i/(8a) + 1/2, 3/2; w),  H = 1F1(i/(8a), 1/2; w).

Derivatives in s are analytic: each factor f(s) = 1F1(A, B; k s^2) is
differentiated with d/dz 1F1(A,B;z) = A/B 1F1(A+1,B+1;z) and the chain rule,
then combined with the Leibniz rule.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DomainError, PoleError, SingularityError, SpheroOverflowError
from .humbert import DoubleSeriesControl, phi1, phi2
from .special import SeriesControl, hyp1f1, ln_gamma, log_cos, pcf_y1, pcf_y2, pochhammer

MAX_HALF_ALPHA_S2 = 50.0
SPHERE_CENTER = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class CurveParams:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a == 0.0:
            raise DomainError("alpha must be finite and nonzero")
        if abs(a) > 1e3:
            raise DomainError("|alpha| > 1e3 is outside the working range")
        object.__setattr__(self, "alpha", a)

    @property
    def c_const(self) -> float:
        """The constant in kappa^2 * tau = C; equal to alpha on the unit sphere."""
        return self.alpha


@dataclass(frozen=True)
class CurveSample:
    s: float
    position: np.ndarray
    derivs: tuple  # (r', r'', r''', r'''')
    kappa: float
    tau: float
    kappa_g: float


def _check_range(p: CurveParams, s: float):
    if abs(0.5 * p.alpha * s * s) > MAX_HALF_ALPHA_S2:
        raise DomainError(
            f"|alpha s^2 / 2| = {abs(0.5 * p.alpha * s * s):.3g} exceeds {MAX_HALF_ALPHA_S2}")


def _factors(p: CurveParams):
    beta = 1.0 / (8.0 * p.alpha)
    half = 0.5 * p.alpha
    return (
        (complex(0.0, -beta), 0.5, complex(0.0, -half)),   # F
        (complex(0.5, beta), 1.5, complex(0.0, half)),     # G
        (complex(0.0, beta), 0.5, complex(0.0, half)),     # H
    )


def _kummer_jet(a, b, k, s, order, ctrl):
    """[f, f', ..., f^(order)] for f(s) = 1F1(a, b; k s^2)."""
    w = k * s * s
    M = [pochhammer(a, j) / pochhammer(b, j) * hyp1f1(a + j, b + j, w, ctrl).value
         for j in range(order + 1)]
    w1 = 2.0 * k * s
    w2 = 2.0 * k
    jet = [M[0]]
    if order >= 1:
        jet.append(M[1] * w1)
    if order >= 2:
        jet.append(M[2] * w1 ** 2 + M[1] * w2)
    if order >= 3:
        jet.append(M[3] * w1 ** 3 + 3.0 * M[2] * w1 * w2)
    if order >= 4:
        jet.append(M[4] * w1 ** 4 + 6.0 * M[3] * w1 ** 2 * w2 + 3.0 * M[2] * w2 ** 2)
    return jet


def _leibniz(f, g):
    return [sum(comb(n, j) * f[j] * g[n - j] for j in range(n + 1)) for n in range(len(f))]


def _jets(p: CurveParams, s: float, order: int, ctrl) -> np.ndarray:
    """Rows r, r', ..., r^(order) from the closed form."""
    s = float(s)
    _check_range(p, s)
    (fa, fb, fk), (ga, gb, gk), (ha, hb, hk) = _factors(p)
    F = _kummer_jet(fa, fb, fk, s, order, ctrl)
    G = _kummer_jet(ga, gb, gk, s, order, ctrl)
    H = _kummer_jet(ha, hb, hk, s, order, ctrl)
    S = [s, 1.0, 0.0, 0.0, 0.0][: order + 1]
    P = _leibniz(S, _leibniz(F, G))
    HH = _leibniz(H, [h.conjugate() for h in H])
    out = np.empty((order + 1, 3))
    for n in range(order + 1):
        out[n, 0] = P[n].real
        out[n, 1] = (2.0 if n == 0 else 0.0) - 2.0 * HH[n].real
        out[n, 2] = P[n].imag
    return out


def eval_position(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> np.ndarray:
    """Point r(s) = (x, y, z) of the curve."""
    s = float(s)
    _check_range(p, s)
    (fa, fb, fk), (ga, gb, gk), (ha, hb, hk) = _factors(p)
    w2 = s * s
    prod = s * hyp1f1(fa, fb, fk * w2, ctrl).value * hyp1f1(ga, gb, gk * w2, ctrl).value
    h = hyp1f1(ha, hb, hk * w2, ctrl).value
    return np.array([prod.real, 2.0 - 2.0 * (h.real ** 2 + h.imag ** 2), prod.imag])


def _ode_fourth(p: CurveParams, s: float, d1, d2):
    a2 = p.alpha * p.alpha
    return -(a2 * s * s + 1.0) * d2 - 3.0 * a2 * s * d1


def eval_derivatives(p: CurveParams, s: float, order: int = 4,
                     ctrl: SeriesControl | None = None, fourth: str = "ode") -> list:
    """[r'(s), ..., r^(order)(s)].

    Orders 1-3 are analytic.  The fourth derivative is taken from the
    differential equation (``fourth="ode"``) or differentiated analytically
    (``fourth="analytic"``).
    """
    if not 1 <= order <= 4:
        raise ValueError("order must be in 1..4")
    if fourth not in ("ode", "analytic"):
        raise ValueError("fourth must be 'ode' or 'analytic'")
    if order == 4 and fourth == "ode":
        jets = _jets(p, s, 3, ctrl)
        rows = [jets[1], jets[2], jets[3], _ode_fourth(p, s, jets[1], jets[2])]
    else:
        jets = _jets(p, s, order, ctrl)
        rows = [jets[n] for n in range(1, order + 1)]
    return rows


def _frenet_from_jets(p, s, r, d1, d2, d3, d4):
    kappa = float(np.linalg.norm(d2))
    cross = np.cross(d1, d2)
    c2 = float(cross @ cross)
    if c2 == 0.0:
        raise SingularityError("r' and r'' are parallel; torsion undefined")
    tau = float(cross @ d3) / c2
    # geodesic curvature det(n, r', r'') with the outward unit normal n = r - center
    kappa_g = float(np.dot(r - SPHERE_CENTER, cross))
    return CurveSample(float(s), r, (d1, d2, d3, d4), kappa, tau, kappa_g)


def frenet(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> CurveSample:
    """Position, derivatives, curvature, torsion and geodesic curvature at s."""
    jets = _jets(p, s, 3, ctrl)
    d4 = _ode_fourth(p, s, jets[1], jets[2])
    return _frenet_from_jets(p, s, jets[0], jets[1], jets[2], jets[3], d4)


def residual_ode(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> np.ndarray:
    """r'''' + (alpha^2 s^2 + 1) r'' + 3 alpha^2 s r' with every derivative analytic."""
    jets = _jets(p, s, 4, ctrl)
    a2 = p.alpha * p.alpha
    return jets[4] + (a2 * s * s + 1.0) * jets[2] + 3.0 * a2 * s * jets[1]


def residual_sphere(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> float:
    x, y, z = eval_position(p, s, ctrl)
    return x * x + (y - 1.0) ** 2 + z * z - 1.0


def _kappa_prime_ratio(p, s, ctrl):
    smp = frenet(p, s, ctrl)
    d2, d3 = smp.derivs[1], smp.derivs[2]
    kappa_prime = float(d2 @ d3) / smp.kappa
    return kappa_prime / (smp.tau * smp.kappa ** 2), smp


def residual_sphericity(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> float:
    """tau/kappa - (kappa' / (tau kappa^2))', outer derivative by central differences."""
    h = 1e-4 * max(1.0, abs(s))
    _, smp = _kappa_prime_ratio(p, s, ctrl)
    gp, _ = _kappa_prime_ratio(p, s + h, ctrl)
    gm, _ = _kappa_prime_ratio(p, s - h, ctrl)
    return smp.tau / smp.kappa - (gp - gm) / (2.0 * h)


def residual_kappa_sq_ode(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> float:
    """[(kappa^2)']^2 - 4 alpha^2 kappa^2 + 4 C^2 with (kappa^2)' = 2 alpha^2 s."""
    kappa = frenet(p, s, ctrl).kappa
    a2 = p.alpha * p.alpha
    return (2.0 * a2 * s) ** 2 - 4.0 * a2 * kappa ** 2 + 4.0 * p.c_const ** 2


def project_point(v) -> complex:
    """Stereographic image (x + i z) / (2 - y) of a point on the sphere about (0, 1, 0)."""
    x, y, z = (float(c) for c in v)
    den = 2.0 - y
    if abs(den) < 1e-14:
        raise PoleError("point coincides with the projection pole (y = 2)")
    return complex(x, z) / den


def stereographic(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> complex:
    """zeta(s) = s G(s) / (2 H(s))."""
    s = float(s)
    _check_range(p, s)
    _, (ga, gb, gk), (ha, hb, hk) = _factors(p)
    den = hyp1f1(ha, hb, hk * s * s, ctrl).value
    if abs(den) < 1e-12:
        raise SingularityError(f"1F1 denominator vanishes at s={s}")
    return s * hyp1f1(ga, gb, gk * s * s, ctrl).value / (2.0 * den)


def stereographic_pcf(p: CurveParams, s: float, ctrl: SeriesControl | None = None) -> complex:
    """zeta(s) as a quotient of odd and even parabolic cylinder functions (alpha > 0)."""
    if p.alpha <= 0:
        raise DomainError("parabolic-cylinder form needs alpha > 0; use zeta(-alpha) = conj(zeta(alpha))")
    s = float(s)
    _check_range(p, s)
    root = math.sqrt(p.alpha)
    a = complex(-0.5, 1.0 / (4.0 * p.alpha))
    arg = cmath.exp(0.25j * math.pi) * root * s
    den = pcf_y1(a, arg, ctrl)
    if abs(den) < 1e-12:
        raise SingularityError(f"y1 vanishes at s={s}")
    return cmath.exp(-0.25j * math.pi) * pcf_y2(a, arg, ctrl) / (2.0 * root * den)


def mehlum_y(p: CurveParams, s: float, dctrl: DoubleSeriesControl | None = None) -> float:
    """y(s) = 1 - phi2(i/(4a), -i/(4a), 1/2; i a s^2/2, -i a s^2/2)."""
    s = float(s)
    _check_range(p, s)
    q = complex(0.0, 1.0 / (4.0 * p.alpha))
    w = complex(0.0, 0.5 * p.alpha * s * s)
    return 1.0 - phi2(q, -q, 0.5, w, -w, dctrl).value.real


def uv_coefficients(alpha: float) -> tuple[complex, complex]:
    """The s-independent weights u, v of the phi1 representation of x + i z."""
    alpha = float(alpha)
    if alpha == 0.0:
        raise DomainError("alpha must be nonzero")
    if math.pi / (4.0 * abs(alpha)) > 700.0:
        raise SpheroOverflowError("cos(pi i / (4 alpha)) overflows; |alpha| too small")
    q = 1.0 / (4.0 * alpha)
    beta = 0.5 * q
    lc = log_cos(complex(0.0, math.pi * q))
    half_log_pi = 0.5 * math.log(math.pi)
    log_u = (half_log_pi + lc + ln_gamma(complex(-0.5, -q))
             - cmath.log(complex(0.0, q)) - 2.0 * ln_gamma(complex(0.0, -beta)))
    log_v = (half_log_pi + lc + ln_gamma(complex(-0.5, q))
             - math.log(2.0) - 2.0 * ln_gamma(complex(0.5, beta)))
    return cmath.exp(log_u), -cmath.exp(log_v)


def mehlum_xz(p: CurveParams, s: float, dctrl: DoubleSeriesControl | None = None) -> complex:
    """x + i z = s (u e^{-w} phi1 + v e^{w} phi1*), w = i alpha s^2 / 2."""
    s = float(s)
    _check_range(p, s)
    u, v = uv_coefficients(p.alpha)
    q = complex(0.0, 1.0 / (4.0 * p.alpha))
    w = complex(0.0, 0.5 * p.alpha * s * s)
    f = phi1(q + 1.0, q, q + 1.5, 0.5, w, dctrl).value
    f_star = phi1(-q + 1.0, -q, -q + 1.5, 0.5, -w, dctrl).value
    return s * (u * cmath.exp(-w) * f + v * cmath.exp(w) * f_star)
