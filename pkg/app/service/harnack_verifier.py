# -*- coding: utf-8 -*-
"""
Intrinsic cylinders and empirical Harnack ratios measured on trajectories,
plus the comparison audit against the mirrored barrier.

A probe is a tuple (x0, t0, r). Ball membership is by node centre strictly
inside the ball; for radial grids a node of radius rho belongs to B_r(x0)
when its sphere meets the open ball, i.e. |rho - |x0|| < r.
"""

import math
from dataclasses import replace

import numpy as np

from app import log, config
from app.errors import (
    EmptyBallError, DomainError, InvalidParameterError, SchedulingError, SetupError, AuditRefusedError
)
from app.model import Cylinder, HarnackReport, ComparisonReport, Trajectory
from app.service import closed_forms, constants_chain, fd_solver

LOG = log.get_logger()

# room needed inside the unit backward cylinder, as a multiple of the probe
# radius; the alpha-dependent ones live in constants_chain
ROOM_FORWARD = 4.0
ROOM_WAITING_TIME = 5.0


def intrinsic_theta(u0, c, q):
    if u0 < 0:
        raise InvalidParameterError(f"u0 must be non-negative, got {u0}")
    if not c > 0:
        raise InvalidParameterError(f"c must be positive, got {c}")
    if q == 2.0:
        return float(c)
    if u0 == 0:
        return 0.0 if q < 2.0 else math.inf
    return c * u0 ** (2.0 - q)


def cylinder_contained(cyl, q, sigma=1.0, radius=1.0, t_span=(-1.0, 0.0)):
    """Whether cyl enlarged by sigma lies in B_radius x (t_span]; B_1 x (-1, 0] by default."""
    enlarged = cyl.enlarged(sigma)
    if float(np.linalg.norm(enlarged.center)) + enlarged.r > radius:
        return False
    lower, upper = enlarged.time_span(q)
    return lower >= t_span[0] and upper <= t_span[1]


ROOM_CYLINDERS = {
    config.RATIO_FORWARD: config.CYLINDER_FORWARD,
    config.RATIO_BACKWARD: config.CYLINDER_BACKWARD,
    config.RATIO_BOTH: config.CYLINDER_BOTH,
    config.RATIO_ELLIPTIC: config.CYLINDER_BOTH,
}


def room_factor(kind, alpha_value=None):
    """
    Enlargement of the probe cylinder the estimate of this kind assumes:
    4 (forward), 5 (backward, through the waiting-time reduction), 6/alpha
    (two-sided), 13/alpha (elliptic). None when alpha is needed but unknown.
    """
    if kind == config.RATIO_FORWARD:
        return ROOM_FORWARD
    if kind == config.RATIO_BACKWARD:
        return ROOM_WAITING_TIME
    if kind not in ROOM_CYLINDERS:
        raise InvalidParameterError(f"unknown ratio kind: {kind}")
    if alpha_value is None:
        return None
    if kind == config.RATIO_BOTH:
        return constants_chain.backward_room(alpha_value)
    return constants_chain.elliptic_room(alpha_value)


def room_available(report, q, factor, radius, t_span, theta=None):
    """
    Whether the report's intrinsic cylinder, enlarged by factor, fits in
    B_radius x (t_span]. Elliptic reports carry no theta; pass it explicitly.
    """
    theta = report.theta if theta is None else theta
    if math.isinf(theta):
        return False
    if theta > 0:
        cyl = Cylinder(center=report.center, t0=report.t0, r=report.r, theta=theta,
                       kind=ROOM_CYLINDERS[report.kind])
        return cylinder_contained(cyl, q, factor, radius, t_span)
    # theta = 0: the cylinder collapses onto its time level
    reach = float(np.linalg.norm(report.center)) + factor * report.r
    return reach <= radius and t_span[0] <= report.t0 <= t_span[1]


def probe_cylinder(probe, theta, kind=config.CYLINDER_BOTH):
    x0, t0, r = _unpack(probe)
    return Cylinder(center=x0, t0=t0, r=r, theta=theta, kind=kind)


def _point(state, x0):
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if state.kind == config.GRID_PLANAR and x0.size != 2:
        raise DomainError(f"planar probes need two coordinates, got {x0.tolist()}")
    return x0


def _check_ball_fits(state, x0, r):
    if state.kind == config.GRID_RADIAL:
        reach = float(np.linalg.norm(x0)) + r
    else:
        reach = float(np.max(np.abs(x0))) + r
    if reach > state.domain_radius * (1.0 + 1e-12):
        raise DomainError(f"ball of radius {r} around {x0.tolist()} leaves the grid "
                          f"(domain radius {state.domain_radius})")


def interpolate(state, x0):
    """Probe read-out: linear in r (radial), bilinear (planar)."""
    x0 = _point(state, x0)
    if state.kind == config.GRID_RADIAL:
        rho = float(np.linalg.norm(x0))
        if rho > state.domain_radius * (1.0 + 1e-12):
            raise DomainError(f"probe radius {rho} outside the grid")
        return float(np.interp(rho, state.radii(), state.values))
    half = state.domain_radius
    if np.any(np.abs(x0) > half * (1.0 + 1e-12)):
        raise DomainError(f"probe {x0.tolist()} outside the grid")
    position = (x0 + half) / state.h
    base = np.minimum(np.floor(position).astype(int), state.cells - 1)
    fx, fy = position - base
    i, j = base
    u = state.values
    return float((1.0 - fx) * (1.0 - fy) * u[i, j] + fx * (1.0 - fy) * u[i + 1, j]
                 + (1.0 - fx) * fy * u[i, j + 1] + fx * fy * u[i + 1, j + 1])


def ball_nodes(state, x0, r):
    x0 = _point(state, x0)
    if state.kind == config.GRID_RADIAL:
        mask = np.abs(state.radii() - float(np.linalg.norm(x0))) < r
    else:
        x, y = state.coordinates()
        mask = np.hypot(x - x0[0], y - x0[1]) < r
    if not np.any(mask):
        raise EmptyBallError(f"no node strictly inside B_{r}({x0.tolist()})")
    return mask


def _ball_extrema(state, x0, r):
    _check_ball_fits(state, _point(state, x0), r)
    inside = state.values[ball_nodes(state, x0, r)]
    return float(np.max(inside)), float(np.min(inside))


def _quotient(numerator, denominator):
    if denominator > 0:
        return numerator / denominator
    return math.inf if numerator > 0 else 1.0


def _unpack(probe):
    x0, t0, r = probe
    return np.atleast_1d(np.asarray(x0, dtype=float)), float(t0), float(r)


def forward_ratio(traj, probe, c, bound=config.DEFAULT_MU):
    x0, t0, r = _unpack(probe)
    state = traj.at(t0)
    q = state.params.q
    u0 = interpolate(state, x0)
    theta = intrinsic_theta(max(u0, 0.0), c, q)
    if u0 <= 0:
        return HarnackReport(kind=config.RATIO_FORWARD, center=tuple(x0), t0=t0, r=r, theta=theta, u0=u0,
                             ratio=1.0, bound_used=bound, passed=True)
    _, inf_after = _ball_extrema(traj.at(t0 + theta * r ** q), x0, r)
    ratio = _quotient(u0, inf_after)
    return HarnackReport(kind=config.RATIO_FORWARD, center=tuple(x0), t0=t0, r=r, theta=theta, u0=u0,
                         ratio=ratio, bound_used=bound, passed=ratio <= bound, inf_after=inf_after)


def backward_sup_ratio(traj, probe, c, bound=config.DEFAULT_MU):
    x0, t0, r = _unpack(probe)
    state = traj.at(t0)
    q = state.params.q
    u0 = interpolate(state, x0)
    theta = intrinsic_theta(max(u0, 0.0), c, q)
    sup_before, _ = _ball_extrema(traj.at(t0 - theta * r ** q), x0, r)
    ratio = _quotient(sup_before, u0) if u0 > 0 else (1.0 if sup_before <= 0 else math.inf)
    return HarnackReport(kind=config.RATIO_BACKWARD, center=tuple(x0), t0=t0, r=r, theta=theta, u0=u0,
                         ratio=ratio, bound_used=bound, passed=ratio <= bound, sup_before=sup_before)


def both_sided_ratio(traj, probe, c, bound=config.DEFAULT_MU):
    forward = forward_ratio(traj, probe, c, bound)
    backward = backward_sup_ratio(traj, probe, c, bound)
    ratio = max(forward.ratio, backward.ratio)
    return HarnackReport(kind=config.RATIO_BOTH, center=forward.center, t0=forward.t0, r=forward.r,
                         theta=forward.theta, u0=forward.u0, ratio=ratio, bound_used=bound,
                         passed=ratio <= bound, sup_before=backward.sup_before, inf_after=forward.inf_after)


def elliptic_ratio_state(state, x0, r, bound=config.DEFAULT_RATIO_CAP):
    x0 = _point(state, x0)
    u0 = interpolate(state, x0)
    sup_same, inf_same = _ball_extrema(state, x0, r)
    if u0 > 0:
        ratio = max(sup_same / u0, _quotient(u0, inf_same))
    else:
        ratio = 1.0 if sup_same <= 0 else math.inf
    return HarnackReport(kind=config.RATIO_ELLIPTIC, center=tuple(x0), t0=state.time, r=float(r), theta=0.0,
                         u0=u0, ratio=ratio, bound_used=bound, passed=ratio <= bound,
                         sup_same=sup_same, inf_same=inf_same)


def elliptic_ratio(traj, probe, bound=config.DEFAULT_RATIO_CAP):
    x0, t0, r = _unpack(probe)
    report = elliptic_ratio_state(traj.at(t0), x0, r, bound)
    # requested label, not the snapshot time
    return replace(report, t0=t0)


MEASURES = {
    config.RATIO_FORWARD: forward_ratio,
    config.RATIO_BACKWARD: backward_sup_ratio,
    config.RATIO_BOTH: both_sided_ratio,
}


def measure(traj, probe, kind, c=config.DEFAULT_C, bound=None):
    if kind == config.RATIO_ELLIPTIC:
        return elliptic_ratio(traj, probe, config.DEFAULT_RATIO_CAP if bound is None else bound)
    if kind not in MEASURES:
        raise InvalidParameterError(f"unknown ratio kind: {kind}")
    return MEASURES[kind](traj, probe, c, config.DEFAULT_MU if bound is None else bound)


def shift_trajectory(traj, shift):
    return Trajectory([state.shifted(shift) for state in traj])


def shifted_ratio(measure_at, epsilon_hat):
    """
    Linear extrapolation to zero shift of a ratio measured on u + eps:
    2 R(eps) - R(2 eps).
    """
    if not epsilon_hat > 0:
        raise InvalidParameterError(f"shift must be positive, got {epsilon_hat}")
    return 2.0 * measure_at(epsilon_hat) - measure_at(2.0 * epsilon_hat)


def _required_times(traj, probes, c, kinds):
    times = []
    for probe in probes:
        x0, t0, r = _unpack(probe)
        times.append(t0)
        if not set(kinds) - {config.RATIO_ELLIPTIC}:
            continue
        state = traj.at(t0)
        q = state.params.q
        u0 = interpolate(state, x0)
        height = intrinsic_theta(max(u0, 0.0), c, q) * r ** q
        # the forward estimate is vacuous when u0 <= 0
        if {config.RATIO_FORWARD, config.RATIO_BOTH} & set(kinds) and u0 > 0:
            times.append(t0 + height)
        if {config.RATIO_BACKWARD, config.RATIO_BOTH} & set(kinds):
            if not math.isfinite(height):
                raise SchedulingError(f"the backward cylinder at t0={t0!r} is unbounded (u0={u0!r}, q={q})")
            times.append(t0 - height)
    return sorted(times)


def schedule_probes(initial, bc, probes, c, kinds, t_end=None, snapshots=(), source=None,
                    safety=config.DEFAULT_SAFETY, threads=None):
    """
    Solves until every time the probes need exists as a snapshot. The
    intrinsic times t0 +- theta r^q depend on u(x0, t0), which in turn moves
    slightly when snapshots are inserted before t0, so the schedule is
    iterated to a fixed point.
    """
    if not probes:
        raise InvalidParameterError("no probes to schedule")
    needed = sorted({_unpack(p)[1] for p in probes} | {float(s) for s in snapshots})
    for attempt in range(config.SCHEDULING_MAX_PASSES):
        if needed[0] < initial.time and not Trajectory.same_time(needed[0], initial.time):
            raise SchedulingError(f"probe time {needed[0]!r} precedes the initial time {initial.time!r}")
        horizon = max(needed[-1], t_end if t_end is not None else needed[-1])
        traj = fd_solver.solve(initial, bc, horizon, snapshots=needed, source=source,
                               safety=safety, threads=threads)
        required = _required_times(traj, probes, c, kinds)
        missing = [t for t in required if not traj.has(t)]
        if not missing:
            LOG.info(f"Probe schedule settled after {attempt + 1} passes")
            return traj
        LOG.debug(f"Pass {attempt + 1}: {len(missing)} probe times missing")
        needed = sorted(set(required) | {float(s) for s in snapshots})
    raise SchedulingError(f"probe schedule did not settle in {config.SCHEDULING_MAX_PASSES} passes")


def comparison_audit(traj, barrier, allowance=0.0):
    """
    Checks traj >= barrier on the barrier's ball at every snapshot, where
    barrier is the mirrored subsolution m - w started at the trajectory's
    initial time.
    """
    initial = traj.initial
    params = initial.params
    if barrier.sign != -1:
        raise SetupError("the comparison audit needs the mirrored barrier (sign = -1)")
    if not Trajectory.same_time(barrier.t_origin, initial.time):
        raise SetupError(f"barrier origin {barrier.t_origin!r} differs from the initial time {initial.time!r}")
    if barrier.lam < closed_forms.lambda_min(params) * (1.0 - 1e-12):
        raise AuditRefusedError(f"lambda={barrier.lam!r} is below lambda_min; the barrier is not a subsolution")

    if initial.kind == config.GRID_RADIAL:
        if np.any(barrier.center != 0):
            raise SetupError("radial trajectories need a barrier centred at the origin")
        distance = initial.radii()
    else:
        x, y = initial.coordinates()
        distance = np.hypot(x - barrier.center[0], y - barrier.center[1])
    inside = distance < barrier.R
    if not np.any(inside):
        raise EmptyBallError(f"no node inside the barrier ball of radius {barrier.R}")
    lowest = float(np.min(initial.values[inside]))
    if lowest < barrier.shift:
        raise SetupError(f"initial data dips to {lowest!r} below the barrier level {barrier.shift!r}")

    tolerance = config.COMPARISON_TOLERANCE_FACTOR * initial.data_range + allowance
    worst, worst_time, worst_node = -math.inf, initial.time, ()
    for state in traj:
        below = closed_forms.supersolution_profile(barrier, distance[inside], state.time)
        gap = below - state.values[inside]
        k = int(np.argmax(gap))
        if gap[k] > worst:
            worst = float(gap[k])
            worst_time = state.time
            worst_node = tuple(int(i) for i in np.argwhere(inside)[k])
    passed = worst <= tolerance
    LOG.info(f"Comparison audit over {len(traj)} snapshots: worst violation {worst!r} (tolerance {tolerance!r})")
    return ComparisonReport(worst_violation=worst, worst_time=worst_time, worst_node=worst_node,
                            tolerance=tolerance, snapshots_checked=len(traj), passed=passed)
