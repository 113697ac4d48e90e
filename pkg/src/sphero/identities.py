"""Residual evaluators for the hypergeometric identities tied to the curve.

Each evaluator computes both sides independently and returns an
:class:`IdentityReport`.  ``run_suite`` replays all of them at the fixed
curve-regime points (a = i/(4 alpha), x = i alpha s^2 / 2) and at seeded
random points, and never raises for a failing check.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError, SpheroOverflowError
from .humbert import DoubleSeriesControl, phi1, phi2
from .special import SeriesControl, gamma_ratio, hyp1f1, hyp2f1, is_nonpositive_integer, log_cos

_LOG_SQRT_PI = 0.5 * math.log(math.pi)
_SQRT_PI = math.sqrt(math.pi)
_REL_SWITCH = 1e-8

CURVE_ALPHAS = (0.25, 1.0, 2.0)
CURVE_S = (0.5, 1.0, 2.0)
UV_ALPHAS = (0.5, 1.0, 2.0)
CURVE_TOL = 1e-9
RANDOM_TOL = 1e-8
UV_TOL = 1e-10


def _num(v: float):
    return float(v) if math.isfinite(v) else None


def _cx(z) -> dict:
    z = complex(z)
    return {"re": _num(z.real), "im": _num(z.imag)}


@dataclass
class IdentityReport:
    name: str
    inputs: list
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    passed: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": [_cx(z) for z in self.inputs],
            "lhs": _cx(self.lhs),
            "rhs": _cx(self.rhs),
            "abs_residual": _num(self.abs_residual),
            "rel_residual": _num(self.rel_residual),
            "passed": self.passed,
            "tolerance": self.tolerance,
        }

    def with_tolerance(self, tol: float) -> "IdentityReport":
        return make_report(self.name, self.inputs, self.lhs, self.rhs, tol)


def make_report(name, inputs, lhs, rhs, tol) -> IdentityReport:
    lhs, rhs = complex(lhs), complex(rhs)
    abs_res = abs(lhs - rhs)
    mag = abs(rhs)
    rel_res = abs_res / mag if mag > 0 else abs_res
    if mag < _REL_SWITCH:
        passed = abs_res <= tol
    else:
        passed = rel_res <= tol
    return IdentityReport(name, [complex(z) for z in inputs], lhs, rhs,
                          float(abs_res), float(rel_res), bool(passed), float(tol))


def residual_phi2_reduction(a, x, ctrl: SeriesControl | None = None,
                            dctrl: DoubleSeriesControl | None = None,
                            tol: float = 1e-10) -> IdentityReport:
    """phi2(a, -a, 1/2; x, -x)  vs  2 1F1(a/2, 1/2; x) 1F1(-a/2, 1/2; -x) - 1."""
    a, x = complex(a), complex(x)
    lhs = phi2(a, -a, 0.5, x, -x, dctrl).value
    rhs = 2.0 * hyp1f1(0.5 * a, 0.5, x, ctrl).value * hyp1f1(-0.5 * a, 0.5, -x, ctrl).value - 1.0
    return make_report("phi2_reduction", [a, x], lhs, rhs, tol)


def phi1_identity_prefactors(a) -> tuple[complex, complex]:
    """The two gamma prefactors multiplying e^{-x} phi1(...) and e^{x} phi1*(...)."""
    a = complex(a)
    if a == 0:
        raise PoleError("a = 0 divides the first prefactor")
    for label, z in (("Gamma(-a/2)", -0.5 * a), ("Gamma((a+1)/2)", 0.5 * (a + 1.0))):
        if is_nonpositive_integer(z):
            raise PoleError(f"{label} sits on a pole for a={a!r}")
    lc = log_cos(math.pi * a)
    p1 = gamma_ratio([-a - 0.5], [-0.5 * a, -0.5 * a], _LOG_SQRT_PI + lc - cmath.log(a))
    p2 = -gamma_ratio([a - 0.5], [0.5 * (a + 1.0), 0.5 * (a + 1.0)],
                      _LOG_SQRT_PI + lc - math.log(2.0))
    return p1, p2


def residual_phi1_identity(a, x, ctrl: SeriesControl | None = None,
                           dctrl: DoubleSeriesControl | None = None,
                           tol: float = 1e-9) -> IdentityReport:
    """P1 e^{-x} phi1(a+1, a, a+3/2; 1/2, x) + P2 e^{x} phi1(1-a, -a, 3/2-a; 1/2, -x)
    vs 1F1(-a/2, 1/2; -x) 1F1(a/2 + 1/2, 3/2; x)."""
    a, x = complex(a), complex(x)
    p1, p2 = phi1_identity_prefactors(a)
    lhs = (p1 * cmath.exp(-x) * phi1(a + 1.0, a, a + 1.5, 0.5, x, dctrl).value
           + p2 * cmath.exp(x) * phi1(1.0 - a, -a, 1.5 - a, 0.5, -x, dctrl).value)
    rhs = hyp1f1(-0.5 * a, 0.5, -x, ctrl).value * hyp1f1(0.5 * a + 0.5, 1.5, x, ctrl).value
    return make_report("phi1_identity", [a, x], lhs, rhs, tol)


def _gamma_pair(a, lead):
    # Gamma(lead) / Gamma((a+1)/2)^2  and  Gamma(lead) / (Gamma(a/2+1) Gamma(a/2))
    t1 = gamma_ratio([lead], [0.5 * (a + 1.0), 0.5 * (a + 1.0)])
    t2 = gamma_ratio([lead], [0.5 * a + 1.0, 0.5 * a])
    return t1, t2


def mitra_rhs(which: str, a) -> complex:
    """Gamma closed forms of 2F1(a, a+1, a+1/2; 1/2) and 2F1(a, a+1, a+3/2; 1/2)."""
    a = complex(a)
    if which == "half":
        t1, t2 = _gamma_pair(a, a + 0.5)
        return _SQRT_PI * (t1 + t2)
    if which == "three_half":
        t1, t2 = _gamma_pair(a, a + 1.5)
        return 2.0 * _SQRT_PI * (t1 - t2)
    raise ValueError("which must be 'half' or 'three_half'")


def contiguous_rhs(a) -> complex:
    """Gamma closed form of 2F1(a, a+1, a+5/2; 1/2)."""
    a = complex(a)
    t1, t2 = _gamma_pair(a, a + 2.5)
    return 4.0 / 3.0 * _SQRT_PI * ((1.0 - 4.0 * a) * t1 + (1.0 + 4.0 * a) * t2)


def residual_mitra(which: str, a, ctrl: SeriesControl | None = None,
                   tol: float = 1e-10) -> IdentityReport:
    a = complex(a)
    shift = {"half": 0.5, "three_half": 1.5}.get(which)
    if shift is None:
        raise ValueError("which must be 'half' or 'three_half'")
    lhs = hyp2f1(a, a + 1.0, a + shift, 0.5, ctrl).value
    return make_report(f"mitra_{which}", [a], lhs, mitra_rhs(which, a), tol)


def residual_contiguous(a, ctrl: SeriesControl | None = None,
                        tol: float = 1e-10) -> IdentityReport:
    a = complex(a)
    lhs = hyp2f1(a, a + 1.0, a + 2.5, 0.5, ctrl).value
    return make_report("contiguous", [a], lhs, contiguous_rhs(a), tol)


def check_uv_conditions(alpha: float, tol: float = UV_TOL) -> tuple[IdentityReport, IdentityReport]:
    """Replay u b + v b* = 1 and 3! (u c + v c*) = -1 + i alpha numerically."""
    from .curve import uv_coefficients

    alpha = float(alpha)
    if abs(alpha) < 0.05:
        raise SpheroOverflowError("|alpha| < 0.05: cos(pi i/(4 alpha)) overflows the check")
    u, v = uv_coefficients(alpha)
    a = complex(0.0, 1.0 / (4.0 * alpha))
    b = mitra_rhs("three_half", a)
    b_star = mitra_rhs("three_half", -a)
    c = 0.5 / (a + 1.5) * contiguous_rhs(a) * complex(0.0, -0.5 * alpha)
    c_star = 0.5 / (-a + 1.5) * contiguous_rhs(-a) * complex(0.0, 0.5 * alpha)
    first = make_report("uv_first_derivative", [alpha], u * b + v * b_star, 1.0, tol)
    third = make_report("uv_third_derivative", [alpha], 6.0 * (u * c + v * c_star),
                        complex(-1.0, alpha), tol)
    return first, third


def _near_pole(args, dist=0.05) -> bool:
    for z in args:
        z = complex(z)
        if z.real < 0.5 and abs(z - round(z.real)) < dist:
            return True
    return False


def _draw_disk(rng, radius):
    while True:
        re, im = rng.uniform(-radius, radius, size=2)
        if re * re + im * im <= radius * radius:
            return complex(re, im)


def _draw_a(rng, pole_args):
    while True:
        a = _draw_disk(rng, 2.0)
        if not _near_pole(pole_args(a)):
            return a


def _safe(fn, name, inputs, tol):
    try:
        rep = fn()
    except Exception:  # recorded as a failure, never raised
        return IdentityReport(name, [complex(z) for z in inputs], complex("nan"), complex("nan"),
                              math.inf, math.inf, False, tol)
    return rep


def run_suite(seed: int = 0, n_random: int = 50, ctrl: SeriesControl | None = None,
              dctrl: DoubleSeriesControl | None = None) -> list[IdentityReport]:
    """Fixed curve-regime checks followed by ``n_random`` seeded draws per identity."""
    if n_random < 0:
        raise ValueError("n_random must be >= 0")
    reports = []
    add = reports.append

    for alpha in CURVE_ALPHAS:
        a = complex(0.0, 1.0 / (4.0 * alpha))
        for s in CURVE_S:
            x = complex(0.0, 0.5 * alpha * s * s)
            add(_safe(lambda: residual_phi2_reduction(a, x, ctrl, dctrl, CURVE_TOL),
                      "phi2_reduction", [a, x], CURVE_TOL))
            add(_safe(lambda: residual_phi1_identity(a, x, ctrl, dctrl, CURVE_TOL),
                      "phi1_identity", [a, x], CURVE_TOL))
        for which in ("half", "three_half"):
            add(_safe(lambda: residual_mitra(which, a, ctrl, CURVE_TOL), f"mitra_{which}", [a], CURVE_TOL))
        add(_safe(lambda: residual_contiguous(a, ctrl, CURVE_TOL), "contiguous", [a], CURVE_TOL))
    for alpha in UV_ALPHAS:
        reports.extend(check_uv_conditions(alpha))

    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        a = _draw_a(rng, lambda a: [0.5 + 0j])
        x = _draw_disk(rng, 5.0)
        add(_safe(lambda: residual_phi2_reduction(a, x, ctrl, dctrl, RANDOM_TOL),
                  "phi2_reduction", [a, x], RANDOM_TOL))
    for _ in range(n_random):
        a = _draw_a(rng, lambda a: [a, -a - 0.5, a - 0.5, -0.5 * a, 0.5 * (a + 1), a + 1.5, 1.5 - a])
        x = _draw_disk(rng, 5.0)
        add(_safe(lambda: residual_phi1_identity(a, x, ctrl, dctrl, RANDOM_TOL),
                  "phi1_identity", [a, x], RANDOM_TOL))
    for which, shift in (("half", 0.5), ("three_half", 1.5)):
        for _ in range(n_random):
            a = _draw_a(rng, lambda a: [a + shift])
            add(_safe(lambda: residual_mitra(which, a, ctrl, RANDOM_TOL),
                      f"mitra_{which}", [a], RANDOM_TOL))
    for _ in range(n_random):
        a = _draw_a(rng, lambda a: [a + 2.5])
        add(_safe(lambda: residual_contiguous(a, ctrl, RANDOM_TOL), "contiguous", [a], RANDOM_TOL))
    return reports


def summarize(reports) -> dict:
    """Per-identity count, pass flag and worst relative residual."""
    out = {}
    for r in reports:
        entry = out.setdefault(r.name, {"count": 0, "passed": True, "worst_rel_residual": 0.0})
        entry["count"] += 1
        entry["passed"] = entry["passed"] and r.passed
        entry["worst_rel_residual"] = max(entry["worst_rel_residual"], r.rel_residual)
    return out


def reports_to_json(reports, indent: int | None = 2) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=indent, allow_nan=False)
