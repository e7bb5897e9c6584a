# -*- coding: utf-8 -*-
"""
Constants of the Harnack pipeline and the chain of balls that carries the
elliptic estimate from the centre to the boundary of B_r(x0).

Dependency order: lambda_min -> (mu_tilde, mu_hat) -> alpha -> c_tilde
-> gamma_bar -> (rho, K) -> (c, gamma). Everything that overflows for q
close to 2 is also available in log space.
"""

import math

import numpy as np

from app import log, config
from app.errors import DomainError, OutOfRangeError, InvalidParameterError
from app.model import ChainPlan, ConstantLedger
from app.service import closed_forms

LOG = log.get_logger()

LOG_2 = math.log(2.0)


def _require_singular_range(q):
    if not 1.0 < q < 2.0:
        raise OutOfRangeError(f"the constants need 1 < q < 2, got q={q}")


def log_mu_tilde(c, c_hat, q):
    _require_singular_range(q)
    if not 0 < c_hat < c:
        raise DomainError(f"need 0 < c_hat < c, got c_hat={c_hat}, c={c}")
    return (math.log(c) - math.log(c_hat)) / (2.0 - q)


def mu_hat(mu, c, c_hat, q):
    """mu (c/c_hat)^{1/(2-q)}."""
    if not mu > 1:
        raise InvalidParameterError(f"mu must exceed 1, got {mu}")
    log_value = math.log(mu) + log_mu_tilde(c, c_hat, q)
    return math.exp(log_value) if log_value < 709.0 else math.inf


def _log_alpha(log_mu_hat, q):
    return (q - 2.0) / q * (LOG_2 + log_mu_hat)


def alpha(mu_hat_value, q):
    _require_singular_range(q)
    if not mu_hat_value > 2:
        raise DomainError(f"alpha needs mu_hat > 2, got {mu_hat_value}")
    return math.exp(_log_alpha(math.log(mu_hat_value), q))


def _log_max_c_hat(log_lam, q):
    return -(2.0 - q) * (math.log(4.0) + log_lam)


def max_c_hat(lam, q):
    """Supremum of the c_hat with 2(-2 lam c_hat^{1/(2-q)} + 1) > 1."""
    _require_singular_range(q)
    return math.exp(_log_max_c_hat(math.log(lam), q))


def c_hat_admissible(c_hat, lam, q, log_lam=None):
    """2(-2 lam c_hat^{1/(2-q)} + 1) > 1, compared in log space; pass log_lam when lam overflows."""
    _require_singular_range(q)
    if not c_hat > 0:
        return False
    log_lam = math.log(lam) if log_lam is None else log_lam
    return math.log(c_hat) < _log_max_c_hat(log_lam, q)


def c_tilde(c_hat, alpha_value, q):
    return alpha_value ** (-q) * c_hat


def backward_room(alpha_value):
    return 6.0 / alpha_value


def elliptic_room(alpha_value):
    return 13.0 / alpha_value


def _log_geometric_factor(q):
    return (q / (2.0 - q) * LOG_2
            + q / (q - 2.0) * math.log(2.0 ** (1.0 / (1.0 - q)) * (2.0 ** (q / (q - 1.0)) - 1.0)))


def log_gamma_bar(log_lam, c, log_mu, q):
    """log of lam c^{1/(2-q)} 2^{q/(2-q)} (2^{1/(1-q)}(2^{q/(q-1)} - 1))^{q/(q-2)} + mu."""
    _require_singular_range(q)
    if not c > 0:
        raise InvalidParameterError(f"c must be positive, got {c}")
    first = log_lam + math.log(c) / (2.0 - q) + _log_geometric_factor(q)
    return float(np.logaddexp(first, log_mu))


def gamma_bar(lam, c, mu, q):
    if not (lam > 0 and mu > 0):
        raise InvalidParameterError(f"lambda and mu must be positive, got {lam}, {mu}")
    log_value = log_gamma_bar(math.log(lam), c, math.log(mu), q)
    return math.exp(log_value) if log_value < 709.0 else math.inf


def chain_steps(sigma, alpha_value):
    """
    Smallest K with y_hat in the open ball B_rho(y_K), simulated in units of
    rho along the ray, where |y_hat - x0| / rho = 13 / (alpha (sigma - 1)).
    Exact boundary hits take the next K.
    """
    distance = 13.0 / (alpha_value * (sigma - 1.0))
    k = 0
    while not distance - k < 1.0 - config.CHAIN_MEMBERSHIP_TOLERANCE:
        k += 1
    return k


def chain_plan(x0, y_hat, r, sigma, alpha_value):
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    y_hat = np.atleast_1d(np.asarray(y_hat, dtype=float))
    if not sigma > 1:
        raise InvalidParameterError(f"sigma must exceed 1, got {sigma}")
    if not 0 < alpha_value < 1:
        raise InvalidParameterError(f"alpha must lie in (0, 1), got {alpha_value}")
    if not r > 0:
        raise InvalidParameterError(f"r must be positive, got {r}")
    offset = y_hat - x0
    length = float(np.linalg.norm(offset))
    if length == 0.0:
        raise DomainError("y_hat coincides with x0; the chain direction is undefined")
    if abs(length - r) > 1e-9 * r:
        raise DomainError(f"|y_hat - x0| = {length} differs from r = {r}")
    direction = offset / length
    rho = r * alpha_value * (sigma - 1.0) / 13.0
    K = chain_steps(sigma, alpha_value)
    points = [x0 + k * rho * direction for k in range(K + 1)]
    return ChainPlan(x0=x0, y_hat=y_hat, r=float(r), sigma=float(sigma), alpha=float(alpha_value),
                     rho=rho, points=points, K=K)


def log_chain_constants(c_prime, sigma, q, log_gamma_bar_value, K):
    _require_singular_range(q)
    log_c = (math.log(c_prime) + q * math.log((sigma - 1.0) / sigma)
             + K * (2.0 - q) * log_gamma_bar_value)
    return log_c, (K + 1) * log_gamma_bar_value


def chain_constants(c_prime, sigma, q, gamma_bar_value, K):
    """c = c' ((sigma-1)/sigma)^q gamma_bar^{K(2-q)}, gamma = gamma_bar^{K+1}."""
    if not (c_prime > 0 and sigma > 1 and gamma_bar_value >= 1 and K >= 0):
        raise InvalidParameterError(f"invalid chain inputs: c'={c_prime}, sigma={sigma}, "
                                    f"gamma_bar={gamma_bar_value}, K={K}")
    log_c, log_gamma = log_chain_constants(c_prime, sigma, q, math.log(gamma_bar_value), K)
    return math.exp(log_c), math.exp(log_gamma)


def induction_margin_check(plan, c_prime, q):
    """
    Whether (13 rho/alpha)^q c' gamma_bar^{k(2-q)} <= (sigma r)^q c for every
    k = 0..K, compared in log space.
    """
    if not plan.complete:
        raise InvalidParameterError("the plan has no constants yet")
    right = q * math.log(plan.sigma * plan.r) + plan.log_c
    slack = 1e-12 * max(1.0, abs(right))
    base = q * math.log(13.0 * plan.rho / plan.alpha) + math.log(c_prime)
    return all(base + k * (2.0 - q) * plan.log_gamma_bar <= right + slack for k in range(plan.K + 1))


def build_ledger(params, mu=config.DEFAULT_MU, c=config.DEFAULT_C, c_hat=None, lam=None):
    q = params.q
    _require_singular_range(q)
    log_lam = closed_forms.log_lambda_min(params) if lam is None else math.log(lam)
    log_max_c_hat = _log_max_c_hat(log_lam, q)
    if c_hat is None:
        c_hat = min(c / 2.0, math.exp(log_max_c_hat) / 2.0)
    if not math.log(c_hat) < log_max_c_hat:
        raise DomainError(f"c_hat={c_hat!r} violates 2(-2 lambda c_hat^(1/(2-q)) + 1) > 1")
    log_tilde = log_mu_tilde(c, c_hat, q)
    log_hat = math.log(mu) + log_tilde
    if not log_hat > LOG_2:
        raise DomainError(f"alpha needs mu_hat > 2, got {math.exp(log_hat)!r}")
    alpha_value = math.exp(_log_alpha(log_hat, q))
    c_tilde_value = c_tilde(c_hat, alpha_value, q)
    ledger = ConstantLedger(q=q, mu=mu, c=c, c_hat=c_hat, log_mu_tilde=log_tilde, alpha=alpha_value,
                            c_tilde=c_tilde_value, log_lambda=log_lam,
                            log_gamma_bar=log_gamma_bar(log_lam, c_tilde_value, log_hat, q))
    LOG.info(f"Ledger for {params}: alpha={alpha_value!r}, log gamma_bar={ledger.log_gamma_bar!r}")
    return ledger


def build_chain(ledger, x0, y_hat, r, sigma=config.DEFAULT_SIGMA, c_prime=None):
    """Chain geometry with (c, gamma) from the ledger; c' defaults to c_tilde."""
    c_prime = ledger.c_tilde if c_prime is None else c_prime
    plan = chain_plan(x0, y_hat, r, sigma, ledger.alpha)
    log_c, log_gamma = log_chain_constants(c_prime, sigma, ledger.q, ledger.log_gamma_bar, plan.K)
    return ChainPlan(x0=plan.x0, y_hat=plan.y_hat, r=plan.r, sigma=plan.sigma, alpha=plan.alpha,
                     rho=plan.rho, points=plan.points, K=plan.K, log_gamma_bar=ledger.log_gamma_bar,
                     c_prime=c_prime, log_c=log_c, log_gamma=log_gamma)
