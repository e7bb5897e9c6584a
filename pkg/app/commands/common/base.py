# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from app import log, config
from app.errors import AppError, ScenarioError
from app.model import ReportRow, BoundaryCondition, Trajectory, HarnackReport
from app.service import fd_solver, profiles

LOG = log.get_logger()


@dataclass
class CommandResult:
    rows: List[ReportRow]
    trajectory: Optional[Trajectory] = None
    reports: List[HarnackReport] = field(default_factory=list)
    payload: Dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(row.passed for row in self.rows)


class BaseCommand(object):
    name = None

    def row(self, scenario, quantity, value, tolerance=0.0, target=None, passed=None):
        return ReportRow(scenario_id=scenario.scenario_id, quantity=quantity, value=value,
                         tolerance=tolerance, target=target, passed=passed)

    def on_error(self, scenario, error):
        LOG.error(f"Error {self.name} ({scenario.scenario_id}): {error}")

    def on_success(self, scenario, result):
        failed = [row.quantity for row in result.rows if not row.passed]
        if failed:
            LOG.warning(f"{self.name} ({scenario.scenario_id}): {len(failed)} rows failed: {', '.join(failed)}")
        else:
            LOG.info(f"{self.name} ({scenario.scenario_id}): all {len(result.rows)} rows passed")
        return result

    def on_run(self, scenario):
        raise NotImplementedError

    def execute(self, scenario):
        LOG.info(f"Enter {self.name} ({scenario.scenario_id})")
        try:
            result = self.on_run(scenario)
        except AppError as e:
            self.on_error(scenario, e)
            raise
        return self.on_success(scenario, result)


class GridCommand(BaseCommand):
    """Shared set-up for commands that march a grid in time."""

    def cells(self, scenario):
        solver = scenario.solver
        if solver.grid == config.GRID_RADIAL:
            return max(2, int(round(solver.radius / solver.h)))
        cells = int(round(2.0 * solver.radius / solver.h))
        if cells % 2:
            raise ScenarioError(f"2*radius/h = {cells} must be even for planar grids")
        return cells

    def initial_state(self, scenario, closed_form=None):
        solver = scenario.solver
        profile = profiles.build(solver, closed_form, symmetric=solver.grid == config.GRID_RADIAL)
        if solver.grid == config.GRID_RADIAL:
            return fd_solver.make_radial_state(profile, scenario.params, self.cells(scenario), solver.radius,
                                               time=solver.t_start, epsilon=solver.epsilon)
        return fd_solver.make_planar_state(profile, scenario.params, self.cells(scenario), solver.radius,
                                           time=solver.t_start, epsilon=solver.epsilon)

    def boundary(self, scenario, initial, exact=None):
        """initial (frozen boundary values), exact (closed form) or a constant."""
        kind = scenario.solver.boundary
        if kind == "initial":
            frozen = initial.values[initial.boundary_mask()].copy()
            return BoundaryCondition.function(lambda coords, t: frozen)
        if kind == "exact":
            if exact is None:
                raise ScenarioError("boundary = exact needs a closed-form profile")
            return BoundaryCondition.function(exact)
        try:
            return BoundaryCondition.constant(float(kind))
        except ValueError:
            raise ScenarioError(f"unknown boundary {kind!r}; use initial, exact or a number")

    def t_end(self, scenario, extra=()):
        solver = scenario.solver
        candidates = [t for t in (solver.t_end,) if t is not None]
        candidates += list(solver.snapshots) + list(extra)
        if not candidates:
            raise ScenarioError("set [solver] t_end or snapshots")
        return max(candidates)

    def extremum_rows(self, scenario, trajectory):
        """Discrete minimum and maximum principle over all snapshots."""
        initial = trajectory.initial
        boundary = np.concatenate([s.values[s.boundary_mask()] for s in trajectory])
        low = min(float(np.min(initial.values)), float(np.min(boundary)))
        high = max(float(np.max(initial.values)), float(np.max(boundary)))
        scale = max(1.0, abs(low), abs(high))
        lowest = min(float(np.min(s.values)) for s in trajectory)
        highest = max(float(np.max(s.values)) for s in trajectory)
        return [
            self.row(scenario, "final_time", trajectory.final.time),
            self.row(scenario, "snapshots", len(trajectory)),
            self.row(scenario, "min_value", lowest, 1e-12 * scale, passed=lowest >= low - 1e-12 * scale),
            self.row(scenario, "max_value", highest, 1e-12 * scale, passed=highest <= high + 1e-12 * scale),
        ]
