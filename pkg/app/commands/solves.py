# -*- coding: utf-8 -*-

from dataclasses import replace

import numpy as np

from app import log, config
from app.commands.common import GridCommand, CommandResult
from app.errors import AppError, ScenarioError, EmptyBallError
from app.model import SupersolutionParams, CounterexampleParams
from app.service import closed_forms, constants_chain, fd_solver, harnack_verifier, profiles

LOG = log.get_logger()

SYMMETRY_TOLERANCE = 1e-10
TRACKING_TOLERANCE = 0.05
SYMMETRIC_PROFILES = (profiles.PROFILE_BUMP, profiles.PROFILE_GAUSSIAN, profiles.PROFILE_CONSTANT,
                      profiles.PROFILE_SUPERSOLUTION, profiles.PROFILE_COUNTEREXAMPLE)


def _radius_of(coords):
    if isinstance(coords, (tuple, list)):
        return np.hypot(*coords)
    return np.asarray(coords, dtype=float)


def _barrier(scenario):
    settings = scenario.barrier
    params = scenario.params
    lam = settings.lam or scenario.constants.lam or closed_forms.lambda_min(params)
    t_origin = settings.t_origin if settings.t_origin is not None else 0.0
    return SupersolutionParams(params=params, lam=lam, R=settings.radius, center=0.0, t_origin=t_origin,
                               shift=settings.shift or 0.0)


def closed_form(scenario):
    """
    (parameters, exact(coords, t), source(coords, t)) for the closed-form
    profiles, or (None, None, None). The barrier is a strict supersolution,
    so it comes with its residual as forcing to make it an exact solution.
    """
    name = scenario.solver.profile
    if name == profiles.PROFILE_SUPERSOLUTION:
        sp = _barrier(scenario)

        def exact(coords, t):
            return closed_forms.supersolution_profile(sp, _radius_of(coords), t)

        def source(coords, t):
            return closed_forms.supersolution_source(sp, _radius_of(coords), t)
        return sp, exact, source
    if name == profiles.PROFILE_COUNTEREXAMPLE:
        params = scenario.params
        ce = CounterexampleParams(params=params, b=closed_forms.counterexample_b(params))

        def exact(coords, t):
            return closed_forms.counterexample_eval(ce, _radius_of(coords), t)
        return ce, exact, None
    return None, None, None


class _Solve(GridCommand):
    grid = None

    def on_run(self, scenario):
        scenario = replace(scenario, solver=replace(scenario.solver, grid=self.grid))
        solver = scenario.solver
        cf, exact, source = closed_form(scenario)
        initial = self.initial_state(scenario, cf)
        bc = self.boundary(scenario, initial, exact)
        trajectory = fd_solver.solve(initial, bc, self.t_end(scenario), snapshots=solver.snapshots,
                                     source=source, safety=solver.safety)
        rows = [self.row(scenario, "stable_dt", fd_solver.stable_dt(initial, solver.safety))]
        # forced runs have no extremum principle
        if source is None:
            rows += self.extremum_rows(scenario, trajectory)
        else:
            rows.append(self.row(scenario, "final_time", trajectory.final.time))
        rows += self.extra_rows(scenario, trajectory)
        if exact is not None:
            final = trajectory.final
            error = fd_solver.relative_linf(final.values, exact(self._coords(final), final.time))
            rows.append(self.row(scenario, "closed_form_error", error, TRACKING_TOLERANCE,
                                 passed=error <= TRACKING_TOLERANCE))
        return CommandResult(rows=rows, trajectory=trajectory,
                             payload={"solver": solver.as_dict(), "final": trajectory.final.as_dict()})

    def _coords(self, state):
        if state.kind == config.GRID_RADIAL:
            return state.radii()
        return tuple(state.coordinates())

    def extra_rows(self, scenario, trajectory):
        return []


class SolveRadial(_Solve):
    """
    Handle for command: solve-radial
    """
    name = config.COMMAND_SOLVE_RADIAL
    grid = config.GRID_RADIAL


class Solve2D(_Solve):
    """
    Handle for command: solve-2d
    """
    name = config.COMMAND_SOLVE_2D
    grid = config.GRID_PLANAR

    def extra_rows(self, scenario, trajectory):
        if scenario.solver.profile not in SYMMETRIC_PROFILES:
            return []
        u = trajectory.final.values
        scale = max(1.0, float(np.max(np.abs(u))))
        asymmetry = max(float(np.max(np.abs(u - u.T))),
                        float(np.max(np.abs(u - u[::-1, :]))),
                        float(np.max(np.abs(u - u[:, ::-1]))))
        return [self.row(scenario, "symmetry_defect", asymmetry, SYMMETRY_TOLERANCE * scale,
                         passed=asymmetry <= SYMMETRY_TOLERANCE * scale)]


class Harnack(GridCommand):
    """
    Handle for command: harnack
    """
    name = config.COMMAND_HARNACK

    def probes(self, scenario):
        settings = scenario.probes
        if not settings.times:
            raise ScenarioError("set [probes] times for the harnack command")
        center = settings.center
        if scenario.solver.grid == config.GRID_PLANAR and len(center) == 1:
            center = (center[0], 0.0)
        return [(center, t, settings.radius) for t in settings.times]

    def bound(self, scenario, kind):
        if kind == config.RATIO_ELLIPTIC:
            return scenario.probes.ratio_cap
        return scenario.constants.mu

    def alpha(self, scenario):
        """alpha of the constant ledger, or None outside 1 < q < 2 or when the ledger cannot be built."""
        if not scenario.params.q < 2.0:
            return None
        settings = scenario.constants
        try:
            return constants_chain.build_ledger(scenario.params, mu=settings.mu, c=settings.c,
                                                c_hat=settings.c_hat, lam=settings.lam).alpha
        except AppError as e:
            LOG.warning(f"No constant ledger for {scenario.scenario_id}, skipping alpha rooms: {e}")
            return None

    def room_rows(self, scenario, report, label, alpha_value, t_span):
        """Whether the enlarged cylinder each estimate assumes fits in the computed region; informational."""
        factor = harnack_verifier.room_factor(report.kind, alpha_value)
        if factor is None:
            return []
        q = scenario.params.q
        theta = report.theta
        if report.kind == config.RATIO_ELLIPTIC:
            theta = harnack_verifier.intrinsic_theta(max(report.u0, 0.0), scenario.constants.c, q)
        contained = harnack_verifier.room_available(report, q, factor, scenario.solver.radius, t_span, theta=theta)
        return [self.row(scenario, f"{label}_room_factor", factor),
                self.row(scenario, f"{label}_room", contained)]

    def shifted(self, scenario, trajectory, initial, bc, source, probe, kind):
        """Ratio extrapolated to zero shift; forward kinds need a fresh schedule since theta moves."""
        c = scenario.constants.c
        bound = self.bound(scenario, kind)

        def measure_at(epsilon):
            if kind == config.RATIO_ELLIPTIC:
                moved = harnack_verifier.shift_trajectory(trajectory, epsilon)
            else:
                moved = harnack_verifier.schedule_probes(initial.shifted(epsilon), bc.shifted(epsilon), [probe],
                                                         c, [kind], source=source,
                                                         safety=scenario.solver.safety)
            return harnack_verifier.measure(moved, probe, kind, c, bound).ratio
        return harnack_verifier.shifted_ratio(measure_at, scenario.probes.shift_epsilon)

    def on_run(self, scenario):
        solver = scenario.solver
        settings = scenario.probes
        c = scenario.constants.c
        cf, exact, source = closed_form(scenario)
        initial = self.initial_state(scenario, cf)
        bc = self.boundary(scenario, initial, exact)
        probes = self.probes(scenario)
        trajectory = harnack_verifier.schedule_probes(initial, bc, probes, c, settings.kinds, t_end=solver.t_end,
                                                      snapshots=solver.snapshots, source=source,
                                                      safety=solver.safety)
        alpha_value = self.alpha(scenario)
        t_span = (initial.time, trajectory.final.time)
        rows, reports = [], []
        for index, probe in enumerate(probes):
            for kind in settings.kinds:
                report = harnack_verifier.measure(trajectory, probe, kind, c, self.bound(scenario, kind))
                reports.append(report)
                label = f"{kind}_ratio_{index}"
                rows.append(self.row(scenario, label, report.ratio, report.bound_used, passed=report.passed))
                rows += self.room_rows(scenario, report, label, alpha_value, t_span)
                if settings.shift_epsilon is not None:
                    value = self.shifted(scenario, trajectory, initial, bc, source, probe, kind)
                    rows.append(self.row(scenario, f"{label}_shifted", value, report.bound_used,
                                         passed=value <= report.bound_used))
        return CommandResult(rows=rows, trajectory=trajectory, reports=reports,
                             payload={"probes": settings.as_dict(), "reports": [r.as_dict() for r in reports]})


class Compare(GridCommand):
    """
    Handle for command: compare
    """
    name = config.COMMAND_COMPARE

    def on_run(self, scenario):
        solver = scenario.solver
        settings = scenario.barrier
        params = scenario.params
        initial = self.initial_state(scenario)
        bc = self.boundary(scenario, initial)
        trajectory = fd_solver.solve(initial, bc, self.t_end(scenario), snapshots=solver.snapshots,
                                     safety=solver.safety)

        center = np.zeros(params.n)
        if initial.kind == config.GRID_PLANAR:
            given = np.asarray(scenario.probes.center, dtype=float)[:2]
            center[:given.size] = given
        t_origin = settings.t_origin if settings.t_origin is not None else initial.time
        lam = settings.lam or scenario.constants.lam or closed_forms.lambda_min(params)
        barrier = SupersolutionParams(params=params, lam=lam, R=settings.radius, center=center, t_origin=t_origin)
        shift = settings.shift
        if shift is None:
            if initial.kind == config.GRID_RADIAL:
                distance = initial.radii()
            else:
                x, y = initial.coordinates()
                distance = np.hypot(x - center[0], y - center[1])
            inside = distance < settings.radius
            if not np.any(inside):
                raise EmptyBallError(f"no node inside the barrier ball of radius {settings.radius}")
            shift = float(np.min(initial.values[inside]))
        mirrored = barrier.mirrored(shift)
        report = harnack_verifier.comparison_audit(trajectory, mirrored)

        rows = [
            self.row(scenario, "lambda", lam),
            self.row(scenario, "barrier_level", shift),
            self.row(scenario, "snapshots_checked", report.snapshots_checked),
            self.row(scenario, "worst_violation", report.worst_violation, report.tolerance, passed=report.passed),
            self.row(scenario, "final_time", trajectory.final.time),
        ]
        return CommandResult(rows=rows, trajectory=trajectory,
                             payload={"barrier": mirrored.as_dict(), "comparison": report.as_dict()})
