import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np


def _exp(log_value):
    return math.exp(log_value) if log_value < 709.0 else math.inf


def _finite_or_text(value):
    if value is None:
        return None
    return value if math.isfinite(value) else "inf"


@dataclass(frozen=True)
class ConstantLedger:
    """
    Constants of the proof pipeline. Quantities that overflow near q = 2
    (lambda, mu_tilde, mu_hat, gamma_bar) are carried as logs.
    """
    q: float
    mu: float
    c: float
    c_hat: float
    log_mu_tilde: float
    alpha: float
    c_tilde: float
    log_lambda: float
    log_gamma_bar: float

    @property
    def mu_tilde(self):
        return _exp(self.log_mu_tilde)

    @property
    def log_mu_hat(self):
        return math.log(self.mu) + self.log_mu_tilde

    @property
    def mu_hat(self):
        return _exp(self.log_mu_hat)

    @property
    def lam(self):
        return _exp(self.log_lambda)

    @property
    def gamma_bar(self):
        return _exp(self.log_gamma_bar)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "q": self.q,
            "mu": self.mu,
            "c": self.c,
            "c_hat": self.c_hat,
            "mu_tilde": _finite_or_text(self.mu_tilde),
            "mu_hat": _finite_or_text(self.mu_hat),
            "log_mu_hat": self.log_mu_hat,
            "alpha": self.alpha,
            "c_tilde": self.c_tilde,
            "lambda": _finite_or_text(self.lam),
            "log_lambda": self.log_lambda,
            "gamma_bar": _finite_or_text(self.gamma_bar),
            "log_gamma_bar": self.log_gamma_bar,
        }


@dataclass(frozen=True)
class ChainPlan:
    x0: np.ndarray
    y_hat: np.ndarray
    r: float
    sigma: float
    alpha: float
    rho: float
    points: List[np.ndarray]
    K: int
    log_gamma_bar: Optional[float] = None
    c_prime: Optional[float] = None
    log_c: Optional[float] = None
    log_gamma: Optional[float] = None

    @property
    def gamma_bar(self):
        return None if self.log_gamma_bar is None else _exp(self.log_gamma_bar)

    @property
    def c(self):
        return None if self.log_c is None else _exp(self.log_c)

    @property
    def gamma(self):
        return None if self.log_gamma is None else _exp(self.log_gamma)

    @property
    def complete(self):
        return None not in (self.log_gamma_bar, self.c_prime, self.log_c, self.log_gamma)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "x0": np.asarray(self.x0).tolist(),
            "y_hat": np.asarray(self.y_hat).tolist(),
            "r": self.r,
            "sigma": self.sigma,
            "alpha": self.alpha,
            "rho": self.rho,
            "K": self.K,
            "points": [np.asarray(y).tolist() for y in self.points],
            "gamma_bar": _finite_or_text(self.gamma_bar),
            "log_gamma_bar": self.log_gamma_bar,
            "c_prime": self.c_prime,
            "c": _finite_or_text(self.c),
            "log_c": self.log_c,
            "gamma": _finite_or_text(self.gamma),
            "log_gamma": self.log_gamma,
        }
