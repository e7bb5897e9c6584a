import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional

import numpy as np

from app import config
from app.errors import InvalidParameterError, SchedulingError
from app.model.params import Params


@dataclass(frozen=True)
class GridState:
    """
    Discrete field on a uniform grid.

    radial: values[i] sits at r = i*h, i = 0..M, so index 0 is the symmetry
    axis and index M the lateral boundary.
    planar: values[i, j] sits at (h*(i - M/2), h*(j - M/2)); the square's edges
    are the boundary.
    """
    kind: str
    values: np.ndarray
    h: float
    time: float
    epsilon: float
    params: Params
    d_eff: Optional[float] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if self.kind == config.GRID_RADIAL:
            if values.ndim != 1 or values.size < 3:
                raise InvalidParameterError("radial grids need a 1-D array with at least 3 nodes")
            if self.d_eff is None:
                object.__setattr__(self, "d_eff", self.params.d)
        elif self.kind == config.GRID_PLANAR:
            if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] < 3:
                raise InvalidParameterError("planar grids need a square 2-D array with at least 3x3 nodes")
            if (values.shape[0] - 1) % 2:
                raise InvalidParameterError("planar grids need an even number of cells per side")
        else:
            raise InvalidParameterError(f"unknown grid kind: {self.kind}")
        if not self.h > 0:
            raise InvalidParameterError(f"spacing must be positive, got {self.h}")
        if not self.epsilon > 0:
            raise InvalidParameterError(f"regularization must be positive, got {self.epsilon}")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("grid values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def cells(self):
        return self.values.shape[0] - 1

    @property
    def dimension(self):
        return 1 if self.kind == config.GRID_RADIAL else 2

    @property
    def domain_radius(self):
        if self.kind == config.GRID_RADIAL:
            return self.h * self.cells
        return 0.5 * self.h * self.cells

    @property
    def data_range(self):
        return float(np.max(self.values) - np.min(self.values))

    def radii(self):
        if self.kind == config.GRID_RADIAL:
            return self.h * np.arange(self.cells + 1, dtype=float)
        x, y = self.coordinates()
        return np.hypot(x, y)

    def axis(self):
        return self.h * (np.arange(self.cells + 1, dtype=float) - self.cells // 2)

    def coordinates(self):
        if self.kind == config.GRID_RADIAL:
            return self.radii()
        axis = self.axis()
        return np.meshgrid(axis, axis, indexing="ij")

    def boundary_mask(self):
        mask = np.zeros(self.values.shape, dtype=bool)
        if self.kind == config.GRID_RADIAL:
            mask[-1] = True
        else:
            mask[0, :] = mask[-1, :] = True
            mask[:, 0] = mask[:, -1] = True
        return mask

    def is_boundary(self, index):
        if self.kind == config.GRID_RADIAL:
            i = int(index[0]) if isinstance(index, tuple) else int(index)
            return i < 0 or i >= self.cells
        i, j = index
        return i <= 0 or j <= 0 or i >= self.cells or j >= self.cells

    def with_values(self, values, time):
        return replace(self, values=np.asarray(values, dtype=float), time=float(time))

    def shifted(self, c):
        return replace(self, values=self.values + c)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "kind": self.kind,
            "nodes": int(self.values.size),
            "h": self.h,
            "domain_radius": self.domain_radius,
            "time": self.time,
            "epsilon": self.epsilon,
            "d_eff": self.d_eff,
            "params": self.params.as_dict(),
        }


@dataclass(frozen=True)
class BoundaryCondition:
    """
    Lateral Dirichlet data. dirichlet-function evaluates
    source(coordinates, t) where coordinates are radii (radial) or an (x, y)
    pair of arrays (planar).
    """
    kind: str
    value: float = 0.0
    source: Optional[Callable] = None

    def __post_init__(self):
        if self.kind == config.BC_DIRICHLET_FUNCTION and self.source is None:
            raise InvalidParameterError("dirichlet-function boundary needs a source")
        if self.kind not in (config.BC_DIRICHLET_FUNCTION, config.BC_DIRICHLET_CONSTANT):
            raise InvalidParameterError(f"unknown boundary kind: {self.kind}")

    @classmethod
    def constant(cls, value):
        return cls(kind=config.BC_DIRICHLET_CONSTANT, value=float(value))

    @classmethod
    def function(cls, source):
        return cls(kind=config.BC_DIRICHLET_FUNCTION, source=source)

    def shifted(self, c):
        if self.kind == config.BC_DIRICHLET_CONSTANT:
            return BoundaryCondition.constant(self.value + c)
        source = self.source
        return BoundaryCondition.function(lambda coords, t: source(coords, t) + c)

    def apply(self, values, state, t):
        """Writes the boundary data at time t into values (in place) and returns it."""
        mask = state.boundary_mask()
        if self.kind == config.BC_DIRICHLET_CONSTANT:
            values[mask] = self.value
            return values
        if state.kind == config.GRID_RADIAL:
            coords = state.radii()[mask]
        else:
            x, y = state.coordinates()
            coords = (x[mask], y[mask])
        values[mask] = np.asarray(self.source(coords, t), dtype=float)
        return values

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "kind": self.kind,
            "value": self.value if self.kind == config.BC_DIRICHLET_CONSTANT else None,
        }


class Trajectory(object):
    """Time-ordered snapshots of a solve."""

    def __init__(self, snapshots: Optional[List[GridState]] = None):
        self.snapshots = list(snapshots or [])

    def append(self, state):
        if self.snapshots and state.time < self.snapshots[-1].time:
            raise InvalidParameterError("snapshots must be appended in time order")
        self.snapshots.append(state)

    @property
    def times(self):
        return [s.time for s in self.snapshots]

    @property
    def initial(self):
        return self.snapshots[0]

    @property
    def final(self):
        return self.snapshots[-1]

    @staticmethod
    def same_time(a, b):
        if not (math.isfinite(a) and math.isfinite(b)):
            return False
        return abs(a - b) <= config.SNAPSHOT_TIME_TOLERANCE * max(1.0, abs(a), abs(b))

    def has(self, t):
        return any(self.same_time(s.time, t) for s in self.snapshots)

    def at(self, t):
        for state in self.snapshots:
            if self.same_time(state.time, t):
                return state
        raise SchedulingError(f"no snapshot at t={t!r}; available: {self.times}")

    def __len__(self):
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    def __repr__(self):
        return str(self.as_dict())

    def as_dict(self):
        return {
            "snapshots": len(self.snapshots),
            "times": self.times,
        }
