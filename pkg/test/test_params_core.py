# -*- coding: utf-8 -*-
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.errors import SingularPointError, DomainError, InvalidParameterError
from app.model import Params
from app.service import params_core

exponents = st.floats(min_value=1.05, max_value=4.0, allow_nan=False, allow_infinity=False)
singular_q = st.floats(min_value=1.05, max_value=1.99, allow_nan=False, allow_infinity=False)
dimensions = st.integers(min_value=1, max_value=6)


@pytest.mark.parametrize("p,q,expected", [(3.0, 2.0, 2.0), (1.7, 1.7, 1.0), (1.5, 1.25, 2.0)])
def test_kappa(p, q, expected):
    assert params_core.kappa(Params(n=2, p=p, q=q)) == pytest.approx(expected, rel=1e-15)


def test_fictitious_dimension_examples():
    assert params_core.fictitious_dimension(Params(n=5, p=1.7, q=1.7)) == 5.0
    assert params_core.fictitious_dimension(Params(n=2, p=3.0, q=2.0)) == pytest.approx(1.5)
    critical = Params(n=3, p=1.2, q=1.8)
    d = params_core.fictitious_dimension(critical)
    assert d == pytest.approx(9.0, rel=1e-12)
    assert d == pytest.approx((3 - 1.2) / (1.2 - 1.0), rel=1e-12)


@given(n=dimensions, p=exponents)
def test_fictitious_dimension_is_n_when_q_equals_p(n, p):
    assert params_core.fictitious_dimension(Params(n=n, p=p, q=p)) == n


@pytest.mark.parametrize("n,p,q,expected", [
    (2, 2.0, 1.5, True),
    (3, 1.2, 1.5, False),
    (2, 2.0, 2.0, False),
    (3, 1.2, 1.9, True),
])
def test_range_condition(n, p, q, expected):
    assert params_core.range_condition_holds(Params(n=n, p=p, q=q)) is expected


@given(n=st.integers(min_value=2, max_value=6), p=exponents, q1=singular_q, q2=singular_q)
def test_range_condition_monotone_in_q(n, p, q1, q2):
    low, high = sorted((q1, q2))
    if params_core.range_condition_holds(Params(n=n, p=p, q=low)):
        assert params_core.range_condition_holds(Params(n=n, p=p, q=high))


def test_supercritical_threshold_and_cases():
    assert params_core.supercritical_threshold(2) == pytest.approx(4.0 / 3.0)
    assert params_core.critical_lower_q(Params(n=2, p=1.5, q=1.5)) == 1.0
    assert params_core.critical_lower_q(Params(n=3, p=1.2, q=1.5)) == pytest.approx(1.8)
    assert params_core.is_normalized_case(Params(n=2, p=3.0, q=2.0))
    assert params_core.is_variational_case(Params(n=2, p=1.5, q=1.5))
    assert not params_core.is_variational_case(Params(n=2, p=2.0, q=1.5))


def test_operator_F_examples():
    for p in (1.3, 2.0, 3.5):
        params = Params(n=2, p=p, q=1.6)
        assert params_core.operator_F([1.0, 0.0], np.eye(2), params) == pytest.approx(p)
    heat = Params(n=2, p=2.0, q=2.0)
    assert params_core.operator_F([3.0, 4.0], np.diag([1.0, 2.0]), heat) == pytest.approx(3.0)


def test_operator_F_on_half_square_norm(singular_params):
    # g = |x|^2 / 2 has gradient x and Hessian I
    x = np.array([0.3, -0.4])
    expected = np.linalg.norm(x) ** (singular_params.q - 2.0) * (2 + singular_params.p - 2.0)
    assert params_core.operator_F(x, np.eye(2), singular_params) == pytest.approx(expected, rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(p=exponents, q=exponents, s=st.floats(min_value=0.1, max_value=10.0),
       seed=st.integers(min_value=0, max_value=2 ** 31))
def test_operator_F_gradient_homogeneity(p, q, s, seed):
    rng = np.random.default_rng(seed)
    eta = rng.normal(size=3)
    X = rng.normal(size=(3, 3))
    params = Params(n=3, p=p, q=q)
    scaled = params_core.operator_F(s * eta, X, params)
    reference = s ** (q - 2.0) * params_core.operator_F(eta, X, params)
    assert scaled == pytest.approx(reference, rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(n=st.integers(min_value=2, max_value=5), p=exponents, q=exponents,
       r=st.floats(min_value=0.1, max_value=2.0), w1=st.floats(min_value=0.1, max_value=5.0),
       w2=st.floats(min_value=-5.0, max_value=5.0))
def test_operator_F_matches_radial_operator_on_radial_jets(n, p, q, r, w1, w2):
    params = Params(n=n, p=p, q=q)
    direction = np.zeros(n)
    direction[0] = 1.0
    projector = np.outer(direction, direction)
    X = w2 * projector + w1 / r * (np.eye(n) - projector)
    planar = params_core.operator_F(w1 * direction, X, params)
    radial = params.kappa * params_core.radial_operator(w1, w2, r, params)
    assert planar == pytest.approx(radial, rel=1e-10, abs=1e-12)


def test_operator_F_matches_finite_differences(singular_params):
    def g(z):
        return np.exp(z[0]) + z[0] * z[1] ** 2

    x = np.array([0.2, 0.7])
    eta = np.array([np.exp(x[0]) + x[1] ** 2, 2 * x[0] * x[1]])
    X = np.array([[np.exp(x[0]), 2 * x[1]], [2 * x[1], 2 * x[0]]])
    exact = params_core.operator_F(eta, X, singular_params)

    def fd(h):
        e = np.eye(2) * h
        grad = np.array([(g(x + e[k]) - g(x - e[k])) / (2 * h) for k in range(2)])
        hess = np.array([[(g(x + e[a] + e[b]) - g(x + e[a] - e[b]) - g(x - e[a] + e[b]) + g(x - e[a] - e[b]))
                          / (4 * h * h) for b in range(2)] for a in range(2)])
        return params_core.operator_F(grad, hess, singular_params)

    coarse, fine = abs(fd(1e-2) - exact), abs(fd(5e-3) - exact)
    assert fine < coarse
    assert coarse == pytest.approx(4 * fine, rel=0.1)


def test_vanishing_gradient_is_singular(singular_params):
    with pytest.raises(SingularPointError):
        params_core.operator_F([0.0, 0.0], np.eye(2), singular_params)
    with pytest.raises(SingularPointError):
        params_core.normalized_infinity_laplacian([0.0, 0.0], np.eye(2))
    with pytest.raises(SingularPointError):
        params_core.radial_operator(0.0, 1.0, 0.5, singular_params)


def test_shape_mismatch_is_rejected(singular_params):
    with pytest.raises(DomainError):
        params_core.operator_F([1.0, 0.0], np.eye(3), singular_params)


def test_normalized_infinity_laplacian():
    assert params_core.normalized_infinity_laplacian([2.0, 0.0], np.diag([3.0, 5.0])) == pytest.approx(3.0)
    assert params_core.normalized_infinity_laplacian([1.0, 1.0], np.diag([3.0, 5.0])) == pytest.approx(4.0)


def test_radial_operator_examples(singular_params):
    d = singular_params.d
    assert params_core.radial_operator(1.0, 0.0, 0.25, singular_params) == pytest.approx((d - 1) / 0.25)
    assert params_core.radial_operator(1.0, 1.0, 1.0, singular_params) == pytest.approx(singular_params.q + d - 2)
    with pytest.raises(DomainError):
        params_core.radial_operator(1.0, 1.0, 0.0, singular_params)
    regularized = params_core.radial_operator(0.0, 1.0, 0.5, singular_params, epsilon=0.1)
    assert regularized == pytest.approx(0.1 ** (singular_params.q - 2.0) * (singular_params.q - 1.0))


@pytest.mark.parametrize("q,expected", [(1.5, 3.0), (2.0, 2.0), (1.9, 1.9 / 0.9)])
def test_admissible_power_threshold(q, expected):
    assert params_core.admissible_power_threshold(Params(n=2, p=2.0, q=q)) == pytest.approx(expected)


def test_admissible_powers(singular_params):
    assert params_core.power_limit_exponent(4.0, 1.5) == pytest.approx(0.5)
    assert params_core.is_admissible_power(3.5, singular_params)
    assert not params_core.is_admissible_power(3.0, singular_params)


def test_params_validation():
    with pytest.raises(InvalidParameterError):
        Params(n=2, p=1.0, q=1.5)
    with pytest.raises(InvalidParameterError):
        Params(n=0, p=2.0, q=1.5)
    with pytest.raises(InvalidParameterError):
        Params(n=2, p=2.0, q=0.9)
