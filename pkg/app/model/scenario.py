import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from app import config
from app.model.params import Params


@dataclass(frozen=True)
class SolverSettings:
    h: float = config.DEFAULT_H
    epsilon: Optional[float] = None
    safety: float = config.DEFAULT_SAFETY
    t_start: float = 0.0
    t_end: Optional[float] = None
    snapshots: Tuple[float, ...] = ()
    radius: float = config.DEFAULT_RADIUS
    profile: str = "bump"
    amplitude: float = 1.0
    width: float = 0.25
    floor: float = 0.0
    seed: int = 0
    boundary: str = "initial"
    grid: str = config.GRID_RADIAL

    def as_dict(self):
        return {
            "h": self.h,
            "epsilon": self.epsilon,
            "safety": self.safety,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "snapshots": list(self.snapshots),
            "radius": self.radius,
            "profile": self.profile,
            "amplitude": self.amplitude,
            "width": self.width,
            "floor": self.floor,
            "seed": self.seed,
            "boundary": self.boundary,
            "grid": self.grid,
        }


@dataclass(frozen=True)
class ProbeSettings:
    center: Tuple[float, ...] = (0.0,)
    radius: float = 0.25
    times: Tuple[float, ...] = ()
    kinds: Tuple[str, ...] = (config.RATIO_ELLIPTIC,)
    ratio_cap: float = config.DEFAULT_RATIO_CAP
    shift_epsilon: Optional[float] = None

    def as_dict(self):
        return {
            "center": list(self.center),
            "radius": self.radius,
            "times": list(self.times),
            "kinds": list(self.kinds),
            "ratio_cap": self.ratio_cap,
            "shift_epsilon": self.shift_epsilon,
        }


@dataclass(frozen=True)
class ConstantSettings:
    mu: float = config.DEFAULT_MU
    c: float = config.DEFAULT_C
    c_hat: Optional[float] = None
    c_prime: Optional[float] = None
    sigma: float = config.DEFAULT_SIGMA
    lam: Optional[float] = None
    r: float = 1.0

    def as_dict(self):
        return {
            "mu": self.mu,
            "c": self.c,
            "c_hat": self.c_hat,
            "c_prime": self.c_prime,
            "sigma": self.sigma,
            "lambda": self.lam,
            "r": self.r,
        }


@dataclass(frozen=True)
class BarrierSettings:
    radius: float = 0.5
    shift: Optional[float] = None
    t_origin: Optional[float] = None
    lam: Optional[float] = None

    def as_dict(self):
        return {
            "radius": self.radius,
            "shift": self.shift,
            "t_origin": self.t_origin,
            "lambda": self.lam,
        }


@dataclass(frozen=True)
class Scenario:
    command: str
    params: Params
    scenario_id: str = "scenario"
    solver: SolverSettings = field(default_factory=SolverSettings)
    probes: ProbeSettings = field(default_factory=ProbeSettings)
    constants: ConstantSettings = field(default_factory=ConstantSettings)
    barrier: BarrierSettings = field(default_factory=BarrierSettings)
    outputs: Dict[str, bool] = field(default_factory=dict)
    source: Optional[str] = None

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "id": self.scenario_id,
            "command": self.command,
            "params": self.params.as_dict(),
            "solver": self.solver.as_dict(),
            "probes": self.probes.as_dict(),
            "constants": self.constants.as_dict(),
            "barrier": self.barrier.as_dict(),
            "outputs": dict(self.outputs),
        }


@dataclass(frozen=True)
class ReportRow:
    scenario_id: str
    quantity: str
    value: float
    tolerance: float = 0.0
    target: Optional[float] = None
    passed: Optional[bool] = None

    def __post_init__(self):
        if self.passed is None:
            if self.target is None:
                passed = not math.isnan(self.value)
            else:
                passed = abs(self.value - self.target) <= self.tolerance
            object.__setattr__(self, "passed", bool(passed))

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "scenario": self.scenario_id,
            "quantity": self.quantity,
            "value": self.value,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
