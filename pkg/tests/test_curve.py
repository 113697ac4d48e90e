import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphero.curve import (CurveParams, eval_derivatives, eval_position, frenet, mehlum_xz,
                          mehlum_y, project_point, residual_kappa_sq_ode, residual_ode,
                          residual_sphere, residual_sphericity, stereographic,
                          stereographic_pcf, uv_coefficients)
from sphero.errors import DomainError, PoleError, SpheroOverflowError
from sphero.humbert import xi1
from sphero.verify import geometry_deviations

finite = dict(allow_nan=False, allow_infinity=False)


def curve_point(max_half_alpha_s2):
    """(alpha, s) with |alpha| in [0.1, 10] and |alpha s^2 / 2| <= the bound."""
    def build(sign, log_a, frac, s_sign):
        a = sign * 10 ** log_a
        s = s_sign * math.sqrt(2 * frac * max_half_alpha_s2 / abs(a))
        return a, s
    return st.builds(build, st.sampled_from([-1.0, 1.0]), st.floats(-1, 1, **finite),
                     st.floats(0, 1, **finite), st.sampled_from([-1.0, 1.0]))


# ---------------------------------------------------------------- params

@pytest.mark.parametrize("alpha", [0.0, math.inf, math.nan, 1e4, -2e3])
def test_params_validation(alpha):
    with pytest.raises(DomainError):
        CurveParams(alpha)


def test_c_const():
    assert CurveParams(0.7).c_const == 0.7


def test_working_range():
    with pytest.raises(DomainError):
        eval_position(CurveParams(1.0), 10.1)
    eval_position(CurveParams(1.0), 10.0)


# ---------------------------------------------------------------- position

def test_origin():
    for a in (0.25, 1.0, -2.0):
        assert np.all(eval_position(CurveParams(a), 0.0) == 0.0)


@pytest.mark.parametrize("key,alpha,s,tol", [("position_alpha1_s1", 1.0, 1.0, 1e-14),
                                             ("position_alpha0p25_s3", 0.25, 3.0, 1e-14),
                                             ("position_alpha2_sm1p5", 2.0, -1.5, 1e-14),
                                             ("position_alpha1_s5", 1.0, 5.0, 1e-11)])
def test_position_frozen(ref, key, alpha, s, tol):
    assert np.abs(eval_position(CurveParams(alpha), s) - ref(key)).max() < tol


@settings(max_examples=60, deadline=None)
@given(curve_point(20))
def test_parity_and_alpha_reflection(point):
    a, s = point
    r = eval_position(CurveParams(a), s)
    m = eval_position(CurveParams(a), -s)
    refl = eval_position(CurveParams(-a), s)
    scale = max(1.0, math.exp(abs(a * s * s / 2)) * 1e-3)
    assert np.abs(m - r * [-1, 1, -1]).max() <= 1e-13 * scale
    assert np.abs(refl - r * [1, 1, -1]).max() <= 1e-13 * scale


# ---------------------------------------------------------------- derivatives

@pytest.mark.parametrize("alpha", [0.25, 1.0, 2.0, -3.0])
def test_initial_conditions(alpha):
    d1, d2, d3, d4 = eval_derivatives(CurveParams(alpha), 0.0)
    assert np.array_equal(d1, [1, 0, 0])
    assert np.array_equal(d2, [0, 1, 0])
    assert np.abs(d3 - [-1, 0, alpha]).max() < 1e-15
    assert np.abs(d4 - [0, -1, 0]).max() < 1e-15


def test_derivatives_vs_finite_differences():
    p = CurveParams(1.0)
    s, h = 0.5, 1e-5
    d1, d2, d3 = eval_derivatives(p, s, order=3)
    fd1 = (eval_position(p, s + h) - eval_position(p, s - h)) / (2 * h)
    assert np.abs(d1 - fd1).max() < 1e-7
    # a plain second difference at h = 1e-5 is roundoff-bound (~eps/h^2); difference r' instead
    first = lambda t: eval_derivatives(p, t, order=1)[0]
    fd2 = (first(s + h) - first(s - h)) / (2 * h)
    assert np.abs(d2 - fd2).max() < 1e-7
    second = lambda t: eval_derivatives(p, t, order=2)[1]
    fd3 = (second(s + h) - second(s - h)) / (2 * h)
    assert np.abs(d3 - fd3).max() < 1e-7


def test_fourth_derivative_routes_agree():
    p = CurveParams(0.8)
    for s in (0.3, 1.7, -2.2):
        ode = eval_derivatives(p, s, fourth="ode")[3]
        ana = eval_derivatives(p, s, fourth="analytic")[3]
        assert np.abs(ode - ana).max() < 1e-11


def test_derivative_order_validation():
    with pytest.raises(ValueError):
        eval_derivatives(CurveParams(1.0), 0.5, order=5)
    assert len(eval_derivatives(CurveParams(1.0), 0.5, order=2)) == 2


# ---------------------------------------------------------------- frenet

def test_frenet_examples():
    smp = frenet(CurveParams(1.0), 0.0)
    assert smp.kappa == 1.0
    assert abs(smp.tau - 1.0) < 1e-15
    assert smp.kappa_g == 0.0
    assert abs(frenet(CurveParams(0.3), 0.0).tau - 0.3) < 1e-15
    assert abs(frenet(CurveParams(1.0), 2.0).kappa ** 2 - 5.0) < 1e-12


def test_kappa_g_sign_follows_alpha_s():
    for a, s in ((1.0, 1.5), (1.0, -1.5), (-1.0, 1.5), (-1.0, -1.5)):
        assert math.copysign(1, frenet(CurveParams(a), s).kappa_g) == math.copysign(1, a * s)


def module_tol(a, s):
    # cancellation-aware bound on sphere, speed and curvature residuals
    return 1e-12 * max(1.0, math.exp(abs(a * s * s / 2)) * 1e-14 * 1e3)


@settings(max_examples=150, deadline=None)
@given(curve_point(6))
def test_invariants_small_argument(point):
    a, s = point
    d = geometry_deviations(CurveParams(a), s)
    tol = module_tol(a, s)
    assert d["sphere"] < tol
    assert d["unit_speed"] < tol
    assert d["curvature"] < tol * (1 + a * a * s * s)
    assert d["torsion"] < 1e-6 * (1 + a * a * s * s)
    assert d["geodesic_curvature"] < 1e-6 * (1 + abs(a * s))


@settings(max_examples=150, deadline=None)
@given(curve_point(20))
def test_invariants_roundoff_scaled(point):
    # beyond |alpha s^2/2| ~ 6 the residuals follow the e^{|alpha s^2/2|} * eps cancellation
    a, s = point
    d = geometry_deviations(CurveParams(a), s)
    k2 = 1 + a * a * s * s
    eps_w = 1e-15 * math.exp(abs(a * s * s / 2))
    assert d["sphere"] < max(1e-13, 10 * eps_w)
    assert d["unit_speed"] < max(1e-13, 10 * eps_w)
    assert d["curvature"] < max(1e-13, 10 * eps_w) * k2
    assert d["geodesic_curvature"] < max(1e-13, 10 * eps_w) * math.sqrt(k2)
    assert d["torsion"] < max(1e-12, 1e3 * eps_w) * k2


# ---------------------------------------------------------------- residuals

@pytest.mark.parametrize("alpha,s", [(1.0, 0.5), (1.0, 1.0), (1.0, 2.0), (0.25, 3.0)])
def test_residual_ode(alpha, s):
    assert np.abs(residual_ode(CurveParams(alpha), s)).max() < 1e-8 * (1 + alpha ** 2 * s ** 2)


def test_residual_ode_origin():
    for a in (0.1, 1.0, 7.0):
        assert np.abs(residual_ode(CurveParams(a), 0.0)).max() < 1e-12


def test_residual_sphere():
    assert residual_sphere(CurveParams(1.0), 0.0) == 0.0
    bound = lambda a, s: 1e-10 * math.exp(a * s * s / 2) * 1e-3
    assert abs(residual_sphere(CurveParams(1.0), 2.0)) < bound(1.0, 2.0)
    assert abs(residual_sphere(CurveParams(2.0), 1.0)) < bound(2.0, 1.0)


@pytest.mark.parametrize("alpha,s", [(1.0, 1.0), (0.5, 2.0), (1.0, 0.5)])
def test_residual_sphericity(alpha, s):
    p = CurveParams(alpha)
    assert abs(residual_sphericity(p, s)) < 1e-4
    assert abs(residual_sphericity(p, s) - residual_sphericity(p, -s)) < 1e-4


@pytest.mark.parametrize("alpha,s", [(1.0, 0.0), (1.0, 1.5), (3.0, 1.0)])
def test_residual_kappa_sq_ode(alpha, s):
    assert abs(residual_kappa_sq_ode(CurveParams(alpha), s)) < 1e-9 * (1 + alpha ** 2 * s ** 2) ** 2


# ---------------------------------------------------------------- projections

def test_project_point_examples():
    assert project_point((0, 0, 0)) == 0
    assert project_point((1, 1, 0)) == 1
    assert project_point((0, 1, 1)) == 1j
    with pytest.raises(PoleError):
        project_point((0, 2, 0))


def test_stereographic_origin():
    assert stereographic(CurveParams(1.0), 0.0) == 0
    assert stereographic_pcf(CurveParams(1.0), 0.0) == 0


def test_stereographic_pcf_requires_positive_alpha():
    with pytest.raises(DomainError):
        stereographic_pcf(CurveParams(-1.0), 1.0)


@settings(max_examples=80, deadline=None)
@given(curve_point(10).filter(lambda p: p[0] > 0))
def test_projection_triple(point):
    a, s = point
    p = CurveParams(a)
    z1 = stereographic(p, s)
    z2 = project_point(eval_position(p, s))
    z3 = stereographic_pcf(p, s)
    scale = max(abs(z1), 1e-300)
    assert abs(z1 - z2) <= 1e-10 * scale
    assert abs(z1 - z3) <= 1e-10 * scale


def test_projection_alpha_reflection():
    for s in (0.5, 1.0, 2.5):
        assert abs(stereographic(CurveParams(-0.7), s)
                   - stereographic_pcf(CurveParams(0.7), s).conjugate()) < 1e-13


# ---------------------------------------------------------------- Humbert forms

@pytest.mark.parametrize("alpha,s", [(1.0, 1.0), (0.5, 2.0), (0.5, 0.5)])
def test_mehlum_y(alpha, s):
    p = CurveParams(alpha)
    assert abs(mehlum_y(p, s) - eval_position(p, s)[1]) < 1e-10
    assert mehlum_y(p, 0.0) == 0.0


@pytest.mark.parametrize("alpha,s", [(1.0, 1.0), (0.25, 1.5), (0.5, 0.5)])
def test_mehlum_xz(alpha, s):
    p = CurveParams(alpha)
    x, _, z = eval_position(p, s)
    assert abs(mehlum_xz(p, s) - complex(x, z)) < 1e-8 * max(1.0, abs(complex(x, z)))
    assert mehlum_xz(p, 0.0) == 0


def test_xz_through_xi1_form():
    # s (u Xi1 + v Xi1*) carries the same point as the phi1 form
    p = CurveParams(1.0)
    s = 0.5
    u, v = uv_coefficients(1.0)
    q = 0.25j
    w = 0.5j * s * s
    via_xi = s * (u * xi1(q, 0.5, q + 1, q + 1.5, 0.5, -w).value
                  + v * xi1(-q, 0.5, -q + 1, -q + 1.5, 0.5, w).value)
    assert abs(via_xi - mehlum_xz(p, s)) < 1e-12


def test_uv_overflow_guard():
    with pytest.raises(SpheroOverflowError):
        uv_coefficients(1e-3)
    u, v = uv_coefficients(0.01)
    assert math.isfinite(abs(u)) and math.isfinite(abs(v))
