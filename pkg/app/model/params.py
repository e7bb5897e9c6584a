from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from app.errors import InvalidParameterError


@dataclass(frozen=True)
class Params:
    n: int
    p: float
    q: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameterError(f"n must be an integer >= 1, got {self.n}")
        if not self.p > 1:
            raise InvalidParameterError(f"p must exceed 1, got {self.p}")
        if not self.q > 1:
            raise InvalidParameterError(f"q must exceed 1, got {self.q}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @property
    def kappa(self):
        return (self.p - 1.0) / (self.q - 1.0)

    @property
    def d(self):
        return (self.n - 1) * (self.q - 1.0) / (self.p - 1.0) + 1.0

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "kappa": self.kappa,
            "d": self.d,
        }


@dataclass(frozen=True)
class Jet2:
    """
    Second order jet of a function at a point: value, gradient, Hessian and
    optionally the time derivative.
    """
    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    time_derivative: Optional[float] = None
    point: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        gradient = np.asarray(self.gradient, dtype=float).reshape(-1)
        hessian = np.asarray(self.hessian, dtype=float)
        if hessian.shape != (gradient.size, gradient.size):
            raise InvalidParameterError(
                f"Hessian shape {hessian.shape} does not match gradient length {gradient.size}")
        # stored symmetrically
        hessian = 0.5 * (hessian + hessian.T)
        object.__setattr__(self, "gradient", gradient)
        object.__setattr__(self, "hessian", hessian)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "value": self.value,
            "gradient": self.gradient.tolist(),
            "hessian": self.hessian.tolist(),
            "time_derivative": self.time_derivative,
        }
