from dataclasses import dataclass

import numpy as np

from app.errors import InvalidParameterError, OutOfRangeError
from app.model.params import Params


@dataclass(frozen=True)
class SupersolutionParams:
    """
    Explicit barrier with infinite lateral values on B_R(center), vanishing
    at t_origin. sign=+1 gives the supersolution, sign=-1 the mirrored
    subsolution; shift is added afterwards.
    """
    params: Params
    lam: float
    R: float
    center: np.ndarray
    t_origin: float = 0.0
    sign: int = 1
    shift: float = 0.0

    def __post_init__(self):
        if not 1.0 < self.params.q < 2.0:
            raise OutOfRangeError(f"the explicit barrier needs 1 < q < 2, got q={self.params.q}")
        if self.lam < 0:
            raise InvalidParameterError(f"lambda must be non-negative, got {self.lam}")
        if not self.R > 0:
            raise InvalidParameterError(f"R must be positive, got {self.R}")
        if self.sign not in (1, -1):
            raise InvalidParameterError(f"sign must be +1 or -1, got {self.sign}")
        center = np.asarray(self.center, dtype=float).reshape(-1)
        if center.size == 1 and self.params.n > 1:
            center = np.full(self.params.n, float(center[0]))
        if center.size != self.params.n:
            raise InvalidParameterError(f"center has {center.size} coordinates, expected {self.params.n}")
        object.__setattr__(self, "center", center)

    def mirrored(self, shift):
        return SupersolutionParams(params=self.params, lam=self.lam, R=self.R, center=self.center,
                                   t_origin=self.t_origin, sign=-self.sign, shift=shift)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "params": self.params.as_dict(),
            "lambda": self.lam,
            "R": self.R,
            "center": self.center.tolist(),
            "t_origin": self.t_origin,
            "sign": self.sign,
            "shift": self.shift,
        }


@dataclass(frozen=True)
class CounterexampleParams:
    """Critical-exponent profile (|r|^{2d/(d-1)} + e^{kappa b t})^{-(d-1)/2}."""
    params: Params
    b: float

    def __post_init__(self):
        if self.params.d <= 1:
            raise InvalidParameterError(f"the counterexample needs d > 1, got d={self.params.d}")

    @property
    def d(self):
        return self.params.d

    @property
    def kappa(self):
        return self.params.kappa

    @property
    def rate(self):
        return self.kappa * self.b

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "params": self.params.as_dict(),
            "d": self.d,
            "kappa": self.kappa,
            "b": self.b,
        }
