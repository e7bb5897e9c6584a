# -*- coding: utf-8 -*-
"""
Exponent bookkeeping and the pointwise operators

    Delta_p^q u = |grad u|^{q-2} (Delta u + (p-2) Delta_infinity^N u)

together with the radial form kappa * Delta_{q,d} in the fictitious
dimension d. All functions are pure.
"""

import numpy as np

from app.errors import SingularPointError, DomainError


def kappa(params):
    return (params.p - 1.0) / (params.q - 1.0)


def fictitious_dimension(params):
    return (params.n - 1) * (params.q - 1.0) / (params.p - 1.0) + 1.0


def critical_lower_q(params):
    """Lower endpoint of the admissible q interval."""
    if params.p >= (1.0 + params.n) / 2.0:
        return 1.0
    return 2.0 * (params.n - params.p) / (params.n - 1.0)


def range_condition_holds(params):
    return critical_lower_q(params) < params.q < 2.0


def supercritical_threshold(n):
    return 2.0 * n / (n + 1.0)


def is_normalized_case(params):
    return params.q == 2.0


def is_variational_case(params):
    return params.q == params.p


def _jet(eta, X):
    eta = np.asarray(eta, dtype=float).reshape(-1)
    X = np.asarray(X, dtype=float)
    if X.shape != (eta.size, eta.size):
        raise DomainError(f"matrix shape {X.shape} does not match gradient length {eta.size}")
    norm2 = float(eta @ eta)
    if norm2 == 0.0:
        raise SingularPointError("vanishing gradient; use the regularized solver path or the r=0 radial rule")
    return eta, 0.5 * (X + X.T), norm2


def normalized_infinity_laplacian(eta, X):
    eta, X, norm2 = _jet(eta, X)
    return float(eta @ X @ eta) / norm2


def operator_F(eta, X, params):
    eta, X, norm2 = _jet(eta, X)
    infinity = float(eta @ X @ eta) / norm2
    return norm2 ** ((params.q - 2.0) / 2.0) * (float(np.trace(X)) + (params.p - 2.0) * infinity)


def radial_operator(u_r, u_rr, r, params, epsilon=0.0):
    """
    Delta_{q,d} u = |u_r|^{q-2} ((q-1) u_rr + (d-1)/r u_r), with |u_r| replaced
    by (u_r^2 + epsilon^2)^{1/2} when epsilon > 0.
    """
    if r == 0:
        raise DomainError("r = 0 is the symmetry axis; use the reflected ghost rule of the solver")
    if r < 0:
        raise DomainError(f"radius must be positive, got {r}")
    d = fictitious_dimension(params)
    modulus2 = u_r * u_r + epsilon * epsilon
    if modulus2 == 0.0:
        if params.q < 2.0:
            raise SingularPointError("vanishing radial derivative in the singular range")
        return 0.0
    weight = modulus2 ** ((params.q - 2.0) / 2.0)
    return weight * ((params.q - 1.0) * u_rr + (d - 1.0) / r * u_r)


def admissible_power_threshold(params):
    return max(params.q / (params.q - 1.0), 2.0)


def power_limit_exponent(beta, q):
    """F(grad g, D^2 g) behaves like r^{beta(q-1)-q} near 0 for g(x) = |x|^beta."""
    return beta * (q - 1.0) - q


def is_admissible_power(beta, params):
    return beta > admissible_power_threshold(params) and power_limit_exponent(beta, params.q) > 0
