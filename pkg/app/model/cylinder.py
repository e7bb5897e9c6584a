import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from app import config
from app.errors import InvalidParameterError


@dataclass(frozen=True)
class Cylinder:
    """
    Intrinsic space-time box around (x0, t0):
      backward  B_r(x0) x (t0 - theta r^q, t0]
      forward   B_r(x0) x (t0, t0 + theta r^q)
      both      B_r(x0) x (t0 - theta r^q, t0 + theta r^q)
    """
    center: np.ndarray
    t0: float
    r: float
    theta: float
    kind: str = config.CYLINDER_BOTH

    def __post_init__(self):
        if not self.r > 0:
            raise InvalidParameterError(f"cylinder radius must be positive, got {self.r}")
        if not self.theta > 0:
            raise InvalidParameterError(f"theta must be positive, got {self.theta}")
        if self.kind not in (config.CYLINDER_BACKWARD, config.CYLINDER_FORWARD, config.CYLINDER_BOTH):
            raise InvalidParameterError(f"unknown cylinder kind: {self.kind}")
        object.__setattr__(self, "center", np.atleast_1d(np.asarray(self.center, dtype=float)))

    def height(self, q):
        return self.theta * self.r ** q

    def time_span(self, q):
        height = self.height(q)
        lower = self.t0 - height if self.kind != config.CYLINDER_FORWARD else self.t0
        upper = self.t0 + height if self.kind != config.CYLINDER_BACKWARD else self.t0
        return lower, upper

    def enlarged(self, factor):
        return replace(self, r=self.r * factor)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "center": self.center.tolist(),
            "t0": self.t0,
            "r": self.r,
            "theta": self.theta,
            "kind": self.kind,
        }


def _number(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else str(value)


@dataclass(frozen=True)
class HarnackReport:
    kind: str
    center: Tuple[float, ...]
    t0: float
    r: float
    theta: float
    u0: float
    ratio: float
    bound_used: float
    passed: bool
    sup_before: Optional[float] = None
    inf_after: Optional[float] = None
    sup_same: Optional[float] = None
    inf_same: Optional[float] = None

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "kind": self.kind,
            "center": list(self.center),
            "t0": self.t0,
            "r": self.r,
            "theta": self.theta,
            "u0": self.u0,
            "sup_before": _number(self.sup_before),
            "inf_after": _number(self.inf_after),
            "sup_same": _number(self.sup_same),
            "inf_same": _number(self.inf_same),
            "ratio": _number(self.ratio),
            "bound_used": _number(self.bound_used),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ComparisonReport:
    worst_violation: float
    worst_time: float
    worst_node: Tuple[int, ...]
    tolerance: float
    snapshots_checked: int
    passed: bool

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "worst_violation": self.worst_violation,
            "worst_time": self.worst_time,
            "worst_node": list(self.worst_node),
            "tolerance": self.tolerance,
            "snapshots_checked": self.snapshots_checked,
            "pass": self.passed,
        }
