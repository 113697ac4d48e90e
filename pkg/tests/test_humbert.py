import cmath

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from sphero.errors import DomainError, PoleError
from sphero.humbert import (DoubleSeriesControl, phi1, phi1_rect, phi2, phi2_rect, xi1,
                            xi1_rect, xi1_single_sum)
from sphero.identities import residual_phi2_reduction
from sphero.special import hyp1f1, hyp2f1

finite = dict(allow_nan=False, allow_infinity=False)


def cplx(r):
    return st.builds(complex, st.floats(-r, r, **finite),
                     st.floats(-r, r, **finite)).filter(lambda z: abs(z) <= r)


def param():
    # keep c-type parameters off the poles
    return cplx(2).filter(lambda c: not (c.real < 0.5 and abs(c - round(c.real)) < 0.2))


Q = 0.25j


def test_origin_is_one():
    assert phi1(0.3, 1 + 1j, 2.5, 0, 0).value == 1
    assert phi2(0.3, 1 + 1j, 2.5, 0, 0).value == 1
    assert xi1(0.3, 1 + 1j, 0.2, 2.5, 0, 0).value == 1


def test_frozen_values(ref):
    assert abs(phi1(Q + 1, Q, Q + 1.5, 0.5, 0.5j).value - ref("phi1_example")) < 1e-13
    assert abs(phi2(Q, -Q, 0.5, 0.5j, -0.5j).value - ref("phi2_example")) < 1e-13
    assert abs(xi1(Q, 0.5, Q + 1, Q + 1.5, 0.5, -0.5j).value - ref("xi1_alpha1_s1")) < 1e-13


def test_errors():
    with pytest.raises(DomainError):
        phi1(1, 1, 2, 1.0, 0.1)
    with pytest.raises(DomainError):
        xi1(1, 1, 1, 2, -1.2, 0.1)
    with pytest.raises(PoleError):
        phi2(1, 1, -3, 0.1, 0.1)
    with pytest.raises(ValueError):
        DoubleSeriesControl(max_total_degree=0)


@settings(max_examples=40, deadline=None)
@given(param(), param(), param(), cplx(5))
def test_slices_reduce_to_kummer(a, b, c, y):
    # y-only slices of phi1 and xi1, x-only slice of phi2
    k = hyp1f1(a, c, y)
    tol = 10 ** (max(k.cancellation_digits, 0) - 11) * max(1.0, abs(k.value))
    assert abs(phi1(a, b, c, 0, y).value - k.value) <= tol
    assert abs(xi1(b, a, b, c, 0, y).value - k.value) <= tol
    assert abs(phi2(a, b, c, y, 0).value - k.value) <= tol


@settings(max_examples=40, deadline=None)
@given(param(), param(), param(), st.floats(-0.9, 0.9, **finite))
def test_phi1_x_slice_is_gauss(a, b, c, x):
    g = hyp2f1(a, b, c, x)
    got = phi1(a, b, c, x, 0).value
    assert abs(got - g.value) <= 1e-11 * max(1.0, abs(g.value), g.max_term_magnitude)


@settings(max_examples=40, deadline=None)
@given(param(), param(), param(), cplx(3), cplx(3))
def test_phi2_symmetry(b1, b2, c, x, y):
    p = phi2(b1, b2, c, x, y)
    q = phi2(b2, b1, c, y, x)
    assert abs(p.value - q.value) <= 1e-13 * max(1.0, p.max_term_magnitude)


@settings(max_examples=30, deadline=None)
@given(param(), param(), param(), param(), cplx(0.5), cplx(5))
def test_diagonal_vs_rectangular(a1, a2, b, c, x, y):
    cases = [(phi1(a1, b, c, x, y), phi1_rect(a1, b, c, x, y)),
             (phi2(a1, a2, c, x, y), phi2_rect(a1, a2, c, x, y)),
             (xi1(a1, a2, b, c, x, y), xi1_rect(a1, a2, b, c, x, y))]
    for diag, rect in cases:
        scale = max(abs(diag.value), 1e-300)
        slack = 10 ** max(diag.cancellation_digits, 0)
        assert abs(diag.value - rect) <= 1e-11 * scale * slack


@pytest.mark.parametrize("a1,a2,b,c,x,y", [
    (Q + 1, Q, 0.3, Q + 1.5, 0.5, 0.5j),
    (0.7 - 0.2j, 1.1, -0.4j, 2.2, -0.3 + 0.2j, 2 - 1j),
])
def test_against_mpmath(a1, a2, b, c, x, y):
    want_phi1 = complex(mpmath.hyper2d({"m+n": [a1], "m": [b]}, {"m+n": [c]}, x, y))
    want_phi2 = complex(mpmath.hyper2d({"m": [a1], "n": [a2]}, {"m+n": [c]}, x, y))
    want_xi1 = complex(mpmath.hyper2d({"m": [a1, b], "n": [a2]}, {"m+n": [c]}, x, y))
    assert abs(phi1(a1, b, c, x, y).value - want_phi1) < 1e-12 * abs(want_phi1)
    assert abs(phi2(a1, a2, c, x, y).value - want_phi2) < 1e-12 * abs(want_phi2)
    assert abs(xi1(a1, a2, b, c, x, y).value - want_xi1) < 1e-12 * abs(want_xi1)


def test_xi1_single_sum_first_term():
    got = xi1_single_sum(Q, 0.5, Q + 1, Q + 1.5, 0.5, 0.0, 1)
    assert abs(got - hyp2f1(Q + 1, Q, Q + 1.5, 0.5).value) < 1e-15


@pytest.mark.parametrize("alpha,s", [(1.0, 1.0), (1.0, 0.5), (0.5, 2.0)])
def test_xi1_single_sum_matches_rectangular(alpha, s):
    a = 1j / (4 * alpha)
    y = -0.5j * alpha * s * s
    single = xi1_single_sum(a, 0.5, a + 1, a + 1.5, 0.5, y, 60)
    assert abs(single - xi1_rect(a, 0.5, a + 1, a + 1.5, 0.5, y)) < 1e-10 * abs(single)


@pytest.mark.parametrize("alpha,s", [(1.0, 0.5), (1.0, 1.0), (0.25, 1.5)])
def test_xi1_equals_shifted_phi1(alpha, s):
    # Xi1(a, 1/2, a+1, a+3/2; 1/2, -x) = e^{-x} phi1(a+1, a, a+3/2; 1/2, x), x = i alpha s^2/2
    a = 1j / (4 * alpha)
    x = 0.5j * alpha * s * s
    lhs = xi1(a, 0.5, a + 1, a + 1.5, 0.5, -x).value
    rhs = cmath.exp(-x) * phi1(a + 1, a, a + 1.5, 0.5, x).value
    assert abs(lhs - rhs) < 1e-12 * abs(lhs)


@settings(max_examples=50, deadline=None)
@given(cplx(2), cplx(5))
def test_phi2_reduction_random(a, x):
    rep = residual_phi2_reduction(a, x)
    assert rep.passed, rep.to_dict()
