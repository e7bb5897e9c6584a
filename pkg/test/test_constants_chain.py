# -*- coding: utf-8 -*-
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.errors import DomainError, OutOfRangeError, InvalidParameterError
from app.model import Params
from app.service import constants_chain, closed_forms


def test_mu_hat_and_alpha_examples():
    assert constants_chain.mu_hat(3.0, 0.2, 0.05, 1.5) == pytest.approx(48.0, rel=1e-12)
    assert constants_chain.alpha(8.0, 1.5) == pytest.approx(16.0 ** (-1.0 / 3.0), rel=1e-12)
    assert constants_chain.alpha(8.0, 1.5) == pytest.approx(0.39685, abs=1e-5)
    assert math.exp(constants_chain.log_mu_tilde(0.2, 0.05, 1.5)) == pytest.approx(16.0)


def test_pipeline_input_errors():
    with pytest.raises(DomainError):
        constants_chain.log_mu_tilde(0.1, 0.2, 1.5)
    with pytest.raises(InvalidParameterError):
        constants_chain.mu_hat(1.0, 0.2, 0.05, 1.5)
    with pytest.raises(DomainError):
        constants_chain.alpha(2.0, 1.5)
    with pytest.raises(OutOfRangeError):
        constants_chain.alpha(8.0, 2.0)


def test_c_hat_admissibility(singular_params):
    lam = closed_forms.lambda_min(singular_params)
    bound = constants_chain.max_c_hat(lam, 1.5)
    assert bound == pytest.approx((4.0 * lam) ** -0.5)
    assert constants_chain.c_hat_admissible(0.5 * bound, lam, 1.5)
    assert not constants_chain.c_hat_admissible(2.0 * bound, lam, 1.5)
    assert not constants_chain.c_hat_admissible(0.0, lam, 1.5)
    # lambda itself overflows here
    assert constants_chain.c_hat_admissible(1e-300, math.inf, 1.999, log_lam=9000.0)


def test_rooms_and_c_tilde():
    assert constants_chain.backward_room(0.5) == 12.0
    assert constants_chain.elliptic_room(0.5) == 26.0
    assert constants_chain.c_tilde(0.01, 0.5, 1.5) == pytest.approx(0.01 * 2.0 ** 1.5)


def test_gamma_bar_example():
    assert constants_chain.gamma_bar(1.0, 1.0, 1.0, 1.5) == pytest.approx(2.49271, abs=1e-5)
    assert constants_chain.gamma_bar(1.0, 1.0, 1.0, 1.5) > 1.0


@pytest.mark.parametrize("sigma,alpha_value,expected", [(3.0, 0.5, 13), (2.0, 0.65, 20), (28.0, 0.5, 0)])
def test_chain_steps(sigma, alpha_value, expected):
    assert constants_chain.chain_steps(sigma, alpha_value) == expected


def test_chain_plan_geometry():
    plan = constants_chain.chain_plan([0.0, 0.0], [1.0, 0.0], 1.0, 2.0, 0.65)
    assert plan.rho == pytest.approx(0.05)
    assert plan.K == 20
    assert len(plan.points) == 21
    assert np.linalg.norm(plan.y_hat - plan.points[-1]) < plan.rho
    steps = np.diff(np.array(plan.points), axis=0)
    assert np.allclose(np.linalg.norm(steps, axis=1), plan.rho)


def test_chain_plan_errors():
    with pytest.raises(DomainError):
        constants_chain.chain_plan([0.0, 0.0], [0.0, 0.0], 1.0, 2.0, 0.5)
    with pytest.raises(DomainError):
        constants_chain.chain_plan([0.0, 0.0], [0.5, 0.0], 1.0, 2.0, 0.5)
    with pytest.raises(InvalidParameterError):
        constants_chain.chain_plan([0.0, 0.0], [1.0, 0.0], 1.0, 1.0, 0.5)
    with pytest.raises(InvalidParameterError):
        constants_chain.chain_plan([0.0, 0.0], [1.0, 0.0], 1.0, 2.0, 1.0)


@pytest.mark.parametrize("r", [0.01, 1.0, 37.0])
def test_chain_length_does_not_depend_on_scale(r):
    plan = constants_chain.chain_plan([0.0, 0.0, 0.0], [r, 0.0, 0.0], r, 3.0, 0.5)
    assert plan.K == 13
    assert plan.rho == pytest.approx(r / 13.0)


def test_chain_constants_example():
    c, gamma = constants_chain.chain_constants(1.0, 2.0, 1.5, 2.0, 2)
    assert c == pytest.approx(0.70711, abs=1e-5)
    assert gamma == pytest.approx(8.0)
    with pytest.raises(InvalidParameterError):
        constants_chain.chain_constants(1.0, 2.0, 1.5, 0.5, 2)


@settings(max_examples=1000, deadline=None)
@given(mu_hat_value=st.floats(min_value=2.001, max_value=1e300), q=st.floats(min_value=1.001, max_value=1.999))
def test_alpha_lies_in_the_unit_interval(mu_hat_value, q):
    assert 0.0 < constants_chain.alpha(mu_hat_value, q) < 1.0


def test_ledger_for_the_heat_like_case(singular_params):
    ledger = constants_chain.build_ledger(singular_params)
    assert ledger.lam == pytest.approx(4556.25)
    assert constants_chain.c_hat_admissible(ledger.c_hat, ledger.lam, 1.5)
    assert 0.0 < ledger.alpha < 1.0
    assert ledger.mu_hat > 2.0
    assert ledger.gamma_bar >= ledger.mu_hat
    with pytest.raises(DomainError):
        constants_chain.build_ledger(singular_params, c_hat=1.0)


def test_gamma_bar_blows_up_towards_two():
    logs = [constants_chain.build_ledger(Params(n=2, p=2.0, q=q)).log_gamma_bar for q in (1.9, 1.99, 1.999)]
    assert logs[0] < logs[1] < logs[2]
    assert logs[2] > 5000.0


ledger_inputs = st.fixed_dictionaries({
    "n": st.integers(min_value=1, max_value=4),
    "p": st.floats(min_value=1.5, max_value=3.0),
    "q": st.floats(min_value=1.3, max_value=1.9),
    "mu": st.floats(min_value=1.5, max_value=10.0),
    "c": st.floats(min_value=0.01, max_value=1.0),
    "sigma": st.floats(min_value=1.5, max_value=5.0),
    "r": st.floats(min_value=0.1, max_value=2.0),
})


@settings(max_examples=100, deadline=None)
@given(inputs=ledger_inputs)
def test_induction_margin_holds_for_pipeline_plans(inputs):
    params = Params(n=inputs["n"], p=inputs["p"], q=inputs["q"])
    ledger = constants_chain.build_ledger(params, mu=inputs["mu"], c=inputs["c"])
    r = inputs["r"]
    x0 = np.zeros(params.n)
    y_hat = x0.copy()
    y_hat[0] = r
    plan = constants_chain.build_chain(ledger, x0, y_hat, r, sigma=inputs["sigma"])
    assert constants_chain.induction_margin_check(plan, plan.c_prime, params.q)
    halved = replace(plan, log_c=plan.log_c - math.log(2.0))
    assert not constants_chain.induction_margin_check(halved, plan.c_prime, params.q)


def test_induction_margin_needs_constants():
    plan = constants_chain.chain_plan([0.0], [1.0], 1.0, 3.0, 0.5)
    with pytest.raises(InvalidParameterError):
        constants_chain.induction_margin_check(plan, 1.0, 1.5)
