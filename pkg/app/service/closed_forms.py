# -*- coding: utf-8 -*-
"""
Explicit solutions: the barrier with infinite lateral values (and its
mirrored subsolution), the critical-exponent counterexample and the
stationary ansatz that lifts to separable solutions.
"""

import math

import numpy as np

from app import log, config
from app.errors import DomainError, OutOfRangeError, InvalidParameterError
from app.model import Jet2, CounterexampleParams, Params
from app.service import params_core

LOG = log.get_logger()


def _require_singular_range(q):
    if not 1.0 < q < 2.0:
        raise OutOfRangeError(f"the explicit barrier needs 1 < q < 2, got q={q}")


def _barrier_coefficients(params):
    q, p, n = params.q, params.p, params.n
    beta = q / (q - 1.0)
    gamma = q / (q - 2.0)
    k1 = q * q / ((q - 1.0) * (2.0 - q))
    a = (p - 1.0) * (beta - 1.0) + (n - 1.0)
    b = (p - 1.0) * (1.0 - gamma) * beta
    return beta, gamma, k1, a, b


def barrier_constant(params):
    """C(n,p,q): sum of the coefficient magnitudes of the radial expansion."""
    _require_singular_range(params.q)
    q, p, n = params.q, params.p, params.n
    return (q * q * (p - 1.0) / ((q - 1.0) ** 2 * (2.0 - q))
            + 2.0 * q ** 3 * (p - 1.0) / ((q - 1.0) ** 2 * (2.0 - q) ** 2)
            + q * q * (n - 1.0) / ((q - 1.0) * (2.0 - q)))


def log_lambda_min(params):
    _require_singular_range(params.q)
    q = params.q
    return math.log((2.0 - q) * barrier_constant(params)) / (2.0 - q)


def lambda_min(params):
    log_value = log_lambda_min(params)
    return math.exp(log_value) if log_value < 709.0 else math.inf


def _unit_scaled(sp, r, t):
    """Maps (r, t) to the R = 1, t_origin = 0 coordinates, validating the domain."""
    r = np.asarray(r, dtype=float)
    tau = np.asarray(t, dtype=float) - sp.t_origin
    if np.any(r < 0) or np.any(r >= sp.R):
        raise DomainError(f"radius must lie in [0, {sp.R}), got {r}")
    if np.any(tau < 0):
        raise DomainError(f"time must not precede the barrier origin {sp.t_origin}")
    return r / sp.R, tau / sp.R ** sp.params.q


def _unit_radial_jet(params, lam, rho, tau):
    """Value, d/dt, d/dr, d2/dr2 of lam * tau^{1/(2-q)} (1 - rho^beta)^gamma."""
    q = params.q
    beta, gamma, k1, _, _ = _barrier_coefficients(params)
    e = 1.0 / (2.0 - q)
    s = rho ** beta
    base = 1.0 - s
    growth = lam * tau ** e
    value = growth * base ** gamma
    dt = lam * e * tau ** (e - 1.0) * base ** gamma
    dr = k1 * growth * rho ** (beta - 1.0) * base ** (gamma - 1.0)
    drr = k1 * growth * ((beta - 1.0) * rho ** (beta - 2.0) * base ** (gamma - 1.0)
                         + (1.0 - gamma) * beta * rho ** (2.0 * beta - 2.0) * base ** (gamma - 2.0))
    return value, dt, dr, drr


def _unit_residual(params, lam, rho, tau):
    """
    dt w - |w'|^{q-2}((p-1) w'' + (n-1)/r w') for the unit barrier, in the
    factored form lam^{q-1} tau^{e-1} (1-s)^gamma (lam^{2-q} e - k1^{q-1}(a(1-s) + b s)).
    """
    q = params.q
    beta, gamma, k1, a, b = _barrier_coefficients(params)
    e = 1.0 / (2.0 - q)
    s = rho ** beta
    base = 1.0 - s
    if lam == 0:
        return np.zeros(np.broadcast(rho, tau).shape)
    bracket = lam ** (2.0 - q) * e - k1 ** (q - 1.0) * (a * base + b * s)
    return lam ** (q - 1.0) * tau ** (e - 1.0) * base ** gamma * bracket


def supersolution_radial_jet(sp, r, t):
    """Arrays (value, u_t, u_r, u_rr) of sign * barrier + shift at radii r."""
    rho, tau = _unit_scaled(sp, r, t)
    q = sp.params.q
    value, dt, dr, drr = _unit_radial_jet(sp.params, sp.lam, rho, tau)
    return (sp.sign * value + sp.shift,
            sp.sign * dt / sp.R ** q,
            sp.sign * dr / sp.R,
            sp.sign * drr / sp.R ** 2)


def supersolution_profile(sp, r, t):
    return supersolution_radial_jet(sp, r, t)[0]


def supersolution_eval(sp, x, t):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != sp.params.n:
        raise DomainError(f"point has {x.size} coordinates, expected {sp.params.n}")
    offset = x - sp.center
    r = float(np.linalg.norm(offset))
    if r >= sp.R:
        raise DomainError(f"|x - center| = {r} is outside the barrier ball of radius {sp.R}")
    if t < sp.t_origin:
        raise DomainError(f"t = {t} precedes the barrier origin {sp.t_origin}")
    value, dt, dr, drr = (float(v) for v in supersolution_radial_jet(sp, r, t))
    n = sp.params.n
    if r == 0.0:
        # limit jet on the axis: w'(0) = 0 and the Hessian is w''(0) I
        gradient = np.zeros(n)
        hessian = drr * np.eye(n)
    else:
        direction = offset / r
        gradient = dr * direction
        projector = np.outer(direction, direction)
        hessian = drr * projector + dr / r * (np.eye(n) - projector)
    return Jet2(value=value, gradient=gradient, hessian=hessian, time_derivative=dt, point=x)


def supersolution_residual(sp, r, t):
    """
    Left-hand side dt v - |v'|^{q-2}((p-1) v'' + (n-1)/r v') evaluated in
    closed form. Non-negative for supersolutions with lam >= lambda_min; the
    mirrored subsolution (sign = -1) gives the negated value.
    """
    r_array = np.asarray(r, dtype=float)
    if np.any(r_array <= 0) or np.any(r_array >= sp.R):
        raise DomainError(f"radius must lie in (0, {sp.R}), got {r}")
    return supersolution_source(sp, r, t)


def supersolution_source(sp, r, t):
    """Closed-form residual on [0, R), the forcing that makes the barrier exact."""
    rho, tau = _unit_scaled(sp, r, t)
    residual = sp.sign * _unit_residual(sp.params, sp.lam, rho, tau) / sp.R ** sp.params.q
    if np.ndim(residual) == 0:
        return float(residual)
    return residual


def stationary_residual(v, v_r, v_rr, r, params):
    """-kappa Delta_{q,d} v + v/(2-q); zero for profiles that lift to separable solutions."""
    _require_singular_range(params.q)
    return -params_core.kappa(params) * params_core.radial_operator(v_r, v_rr, r, params) + v / (2.0 - params.q)


def separable_lift(v, t, q):
    _require_singular_range(q)
    return t ** (1.0 / (2.0 - q)) * v


def critical_q(n, p):
    if n < 2:
        raise InvalidParameterError("the critical exponent needs n >= 2")
    if not p < (1.0 + n) / 2.0:
        raise InvalidParameterError(f"the critical exponent needs p < (1+n)/2, got p={p}")
    return 2.0 * (n - p) / (n - 1.0)


def _require_critical(params):
    if params.n < 2 or not params.p < (1.0 + params.n) / 2.0:
        raise InvalidParameterError(f"counterexample needs n >= 2 and p < (1+n)/2, got {params}")
    expected = critical_q(params.n, params.p)
    if abs(params.q - expected) > config.CRITICAL_Q_TOLERANCE:
        raise InvalidParameterError(f"counterexample needs q = 2(n-p)/(n-1) = {expected!r}, got {params.q!r}")


def _profile_in_phase(d, r, phase):
    """(u, u_r, u_rr, E, S) with E = e^{phase} standing for e^{kappa b t}."""
    exponent = 2.0 * d / (d - 1.0)
    m = (d - 1.0) / 2.0
    r = np.asarray(r, dtype=float)
    a = np.abs(r)
    e = np.exp(phase)
    s = a ** exponent + e
    u = s ** (-m)
    u_r = -d * np.sign(r) * a ** (exponent - 1.0) * s ** (-m - 1.0)
    u_rr = (-d * (exponent - 1.0) * a ** (exponent - 2.0) * s ** (-m - 1.0)
            + d * (m + 1.0) * exponent * a ** (2.0 * exponent - 2.0) * s ** (-m - 2.0))
    return u, u_r, u_rr, e, s


# sample points (r, kappa b t) for the rate solve
B_SAMPLES = ((0.3, -1.0), (0.7, 0.0), (1.1, 0.5), (1.6, 1.0), (2.5, 2.0), (0.05, -0.5))


def counterexample_rate_estimates(params):
    """
    dt u = -m kappa b E S^{-m-1} is linear in b, so every sample point
    yields b directly from dt u = kappa Delta_{q,d} u.
    """
    _require_critical(params)
    d = params_core.fictitious_dimension(params)
    m = (d - 1.0) / 2.0
    estimates = []
    for r, phase in B_SAMPLES:
        _, u_r, u_rr, e, s = _profile_in_phase(d, r, phase)
        operator = params_core.radial_operator(float(u_r), float(u_rr), r, params)
        estimates.append(-operator / (m * e * s ** (-m - 1.0)))
    return estimates


def counterexample_b(params):
    """Rate b for the critical profile; the sampled estimates must agree."""
    estimates = counterexample_rate_estimates(params)
    spread = max(estimates) - min(estimates)
    b = float(np.mean(estimates))
    if spread > config.COUNTEREXAMPLE_B_TOLERANCE * max(1.0, abs(b)):
        raise InvalidParameterError(f"rate estimates disagree by {spread!r}: {estimates}")
    LOG.info(f"Counterexample rate for {params}: b={b!r} (spread {spread:.3e})")
    return b


def make_counterexample(n, p):
    params = Params(n=n, p=p, q=critical_q(n, p))
    return CounterexampleParams(params=params, b=counterexample_b(params))


def counterexample_derivatives(ce, r, t):
    """Arrays (u, u_t, u_r, u_rr)."""
    phase = ce.rate * np.asarray(t, dtype=float)
    u, u_r, u_rr, e, s = _profile_in_phase(ce.d, r, phase)
    m = (ce.d - 1.0) / 2.0
    u_t = -m * ce.rate * e * s ** (-m - 1.0)
    return u, u_t, u_r, u_rr


def counterexample_eval(ce, r, t):
    value = counterexample_derivatives(ce, r, t)[0]
    if np.ndim(value) == 0:
        return float(value)
    return value


def counterexample_ratio(ce, t):
    """u(0,t)/u(1,t) = (1 + e^{-kappa b t})^{(d-1)/2}."""
    return (1.0 + math.exp(-ce.rate * t)) ** ((ce.d - 1.0) / 2.0)


def two_sided_ratio(ce, t):
    ratio = counterexample_ratio(ce, t)
    return max(ratio, 1.0 / ratio)


def counterexample_residual_sweep(ce, r_values, t_values):
    """max |u_t - kappa Delta_{q,d} u| / |u_t| over the product grid (r != 0)."""
    r_grid, t_grid = np.meshgrid(np.asarray(r_values, dtype=float), np.asarray(t_values, dtype=float),
                                 indexing="ij")
    if np.any(r_grid == 0):
        raise DomainError("the residual sweep excludes r = 0")
    _, u_t, u_r, u_rr = counterexample_derivatives(ce, r_grid, t_grid)
    params = ce.params
    d = params_core.fictitious_dimension(params)
    weight = np.abs(u_r) ** (params.q - 2.0)
    operator = weight * ((params.q - 1.0) * u_rr + (d - 1.0) / r_grid * u_r)
    residual = np.abs(u_t - ce.kappa * operator) / np.abs(u_t)
    return float(np.max(residual))
