# -*- coding: utf-8 -*-
"""
Explicit finite differences for

    planar:  dt u = (|grad u|^2 + eps^2)^{(q-2)/2} (Delta u + (p-2) <D^2u grad u, grad u>/(|grad u|^2 + eps^2))
    radial:  dt u = kappa (u_r^2 + eps^2)^{(q-2)/2} ((q-1) u_rr + (d-1)/r u_r)

Node updates only read the previous state. Planar grids are split into
blocks of config.BLOCK_ROWS rows; the partition does not depend on the
number of worker threads, so results are bit-identical for any thread count.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from app import log, config
from app.errors import StabilityError, DivergenceError, InvalidParameterError, DomainError
from app.model import GridState, Trajectory

LOG = log.get_logger()


def default_epsilon(values):
    spread = float(np.max(values) - np.min(values))
    if spread == 0.0:
        return config.DEFAULT_EPSILON_FACTOR
    return max(config.DEFAULT_EPSILON_FACTOR * spread, config.EPSILON_FLOOR)


def make_radial_state(profile, params, M, radius, time=0.0, epsilon=None, d_eff=None):
    """Samples profile(r) on r_i = i*radius/M, i = 0..M."""
    if M < 2:
        raise InvalidParameterError(f"radial grids need at least 2 cells, got {M}")
    h = radius / M
    values = np.asarray(profile(h * np.arange(M + 1, dtype=float)), dtype=float)
    if epsilon is None:
        epsilon = default_epsilon(values)
    return GridState(kind=config.GRID_RADIAL, values=values, h=h, time=float(time),
                     epsilon=epsilon, params=params, d_eff=d_eff)


def make_planar_state(profile, params, M, radius, time=0.0, epsilon=None):
    """Samples profile(x, y) on the square [-radius, radius]^2 with M cells per side."""
    if M % 2:
        raise InvalidParameterError(f"planar grids need an even number of cells, got {M}")
    if params.n != 2:
        raise InvalidParameterError(f"the planar solver is two-dimensional, got n={params.n}")
    h = 2.0 * radius / M
    axis = h * (np.arange(M + 1, dtype=float) - M // 2)
    x, y = np.meshgrid(axis, axis, indexing="ij")
    values = np.asarray(profile(x, y), dtype=float)
    if epsilon is None:
        epsilon = default_epsilon(values)
    return GridState(kind=config.GRID_PLANAR, values=values, h=h, time=float(time),
                     epsilon=epsilon, params=params)


def relative_linf(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = float(np.max(np.abs(b)))
    error = float(np.max(np.abs(a - b)))
    return error / scale if scale > 0 else error


def _kappa(state):
    p, q = state.params.p, state.params.q
    return (p - 1.0) / (q - 1.0)


def regularized_operator(state, index):
    """Reference single-node form of the discrete operator."""
    if state.is_boundary(index):
        raise DomainError(f"node {index} is on the boundary")
    u = state.values
    h, eps = state.h, state.epsilon
    p, q = state.params.p, state.params.q
    if state.kind == config.GRID_RADIAL:
        i = int(index[0]) if isinstance(index, tuple) else int(index)
        d = state.d_eff
        if i == 0:
            # reflected ghost u_{-1} = u_1
            u_rr = 2.0 * (u[1] - u[0]) / (h * h)
            return _kappa(state) * eps ** (q - 2.0) * (q - 1.0 + d - 1.0) * u_rr
        u_r = (u[i + 1] - u[i - 1]) / (2.0 * h)
        u_rr = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h)
        weight = (u_r * u_r + eps * eps) ** ((q - 2.0) / 2.0)
        return _kappa(state) * weight * ((q - 1.0) * u_rr + (d - 1.0) / (i * h) * u_r)
    i, j = index
    u_x = (u[i + 1, j] - u[i - 1, j]) / (2.0 * h)
    u_y = (u[i, j + 1] - u[i, j - 1]) / (2.0 * h)
    u_xx = (u[i + 1, j] - 2.0 * u[i, j] + u[i - 1, j]) / (h * h)
    u_yy = (u[i, j + 1] - 2.0 * u[i, j] + u[i, j - 1]) / (h * h)
    u_xy = (u[i + 1, j + 1] - u[i + 1, j - 1] - u[i - 1, j + 1] + u[i - 1, j - 1]) / (4.0 * h * h)
    modulus2 = u_x * u_x + u_y * u_y + eps * eps
    infinity = (u_x * u_x * u_xx + 2.0 * u_x * u_y * u_xy + u_y * u_y * u_yy) / modulus2
    return modulus2 ** ((q - 2.0) / 2.0) * (u_xx + u_yy + (p - 2.0) * infinity)


def _radial_field(state):
    u = state.values
    h, eps = state.h, state.epsilon
    q = state.params.q
    d = state.d_eff
    out = np.zeros_like(u)
    out[0] = _kappa(state) * eps ** (q - 2.0) * (q - 1.0 + d - 1.0) * 2.0 * (u[1] - u[0]) / (h * h)
    r = h * np.arange(1, u.size - 1, dtype=float)
    u_r = (u[2:] - u[:-2]) / (2.0 * h)
    u_rr = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    weight = (u_r * u_r + eps * eps) ** ((q - 2.0) / 2.0)
    out[1:-1] = _kappa(state) * weight * ((q - 1.0) * u_rr + (d - 1.0) / r * u_r)
    return out


def _planar_rows(state, lo, hi):
    """Operator on interior rows lo..hi-1 (columns 1..M-1)."""
    u = state.values
    h, eps = state.h, state.epsilon
    p, q = state.params.p, state.params.q
    center = u[lo:hi, 1:-1]
    east, west = u[lo + 1:hi + 1, 1:-1], u[lo - 1:hi - 1, 1:-1]
    north, south = u[lo:hi, 2:], u[lo:hi, :-2]
    u_x = (east - west) / (2.0 * h)
    u_y = (north - south) / (2.0 * h)
    u_xx = (east - 2.0 * center + west) / (h * h)
    u_yy = (north - 2.0 * center + south) / (h * h)
    u_xy = (u[lo + 1:hi + 1, 2:] - u[lo + 1:hi + 1, :-2]
            - u[lo - 1:hi - 1, 2:] + u[lo - 1:hi - 1, :-2]) / (4.0 * h * h)
    modulus2 = u_x * u_x + u_y * u_y + eps * eps
    infinity = (u_x * u_x * u_xx + 2.0 * u_x * u_y * u_xy + u_y * u_y * u_yy) / modulus2
    return modulus2 ** ((q - 2.0) / 2.0) * (u_xx + u_yy + (p - 2.0) * infinity)


def _row_blocks(cells):
    return [(lo, min(lo + config.BLOCK_ROWS, cells)) for lo in range(1, cells, config.BLOCK_ROWS)]


def regularized_field(state, executor=None):
    """Discrete operator at every interior node; boundary entries are 0."""
    if state.kind == config.GRID_RADIAL:
        return _radial_field(state)
    out = np.zeros_like(state.values)
    blocks = _row_blocks(state.cells)
    if executor is None:
        results = [_planar_rows(state, lo, hi) for lo, hi in blocks]
    else:
        results = list(executor.map(lambda block: _planar_rows(state, *block), blocks))
    for (lo, hi), rows in zip(blocks, results):
        out[lo:hi, 1:-1] = rows
    return out


def _max_weight(state):
    u = state.values
    h, eps = state.h, state.epsilon
    q = state.params.q
    if state.kind == config.GRID_RADIAL:
        u_r = (u[2:] - u[:-2]) / (2.0 * h)
        gradient2 = np.concatenate(([0.0], u_r * u_r))
    else:
        u_x = (u[2:, 1:-1] - u[:-2, 1:-1]) / (2.0 * h)
        u_y = (u[1:-1, 2:] - u[1:-1, :-2]) / (2.0 * h)
        gradient2 = u_x * u_x + u_y * u_y
    return float(np.max((gradient2 + eps * eps) ** ((q - 2.0) / 2.0)))


def stable_dt(state, safety=config.DEFAULT_SAFETY):
    """
    safety * h^2 / (2 D Lambda); the radial Lambda carries the kappa factor.
    The planar 5-point centre coefficient is at most 2 max(2, p) w / h^2
    (the full Laplacian plus p - 2 along the gradient), so Lambda covers
    max(1, p - 1) w and the step keeps the flat-node update a convex
    combination.
    """
    p, q = state.params.p, state.params.q
    if state.kind == config.GRID_RADIAL:
        spread = q - 1.0 + abs(p - 2.0) + max(state.d_eff - 1.0, 0.0)
        lam = _kappa(state) * spread * _max_weight(state)
    else:
        spread = max(1.0, p - 1.0, q - 1.0 + abs(p - 2.0))
        lam = spread * _max_weight(state)
    return safety * state.h * state.h / (2.0 * state.dimension * lam)


def _interior_source(state, source, t):
    if state.kind == config.GRID_RADIAL:
        forcing = np.asarray(source(state.radii(), t), dtype=float)
    else:
        forcing = np.asarray(source(state.coordinates(), t), dtype=float)
    forcing = np.broadcast_to(forcing, state.values.shape).copy()
    forcing[state.boundary_mask()] = 0.0
    return forcing


def step(state, bc, dt, source=None, executor=None, safety=config.DEFAULT_SAFETY, limit=None):
    """One explicit Euler step; boundary nodes take bc at time + dt."""
    if limit is None:
        limit = stable_dt(state, safety)
    if not dt > 0:
        raise InvalidParameterError(f"dt must be positive, got {dt}")
    if dt > limit * (1.0 + 1e-12):
        raise StabilityError(dt=dt, limit=limit)
    rate = regularized_field(state, executor)
    if source is not None:
        rate = rate + _interior_source(state, source, state.time)
    values = state.values + dt * rate
    new_time = state.time + dt
    bc.apply(values, state, new_time)
    finite = np.isfinite(values)
    if not np.all(finite):
        node = tuple(int(k) for k in np.argwhere(~finite)[0])
        raise DivergenceError(node=node, time=new_time)
    return state.with_values(values, new_time)


def _schedule(start, t_end, snapshots):
    times = []
    for t in sorted(float(s) for s in snapshots if s is not None):
        if t < start - config.SNAPSHOT_TIME_TOLERANCE * max(1.0, abs(start)):
            raise InvalidParameterError(f"snapshot time {t} precedes the initial time {start}")
        if t > t_end:
            raise InvalidParameterError(f"snapshot time {t} lies beyond t_end={t_end}")
        if Trajectory.same_time(t, start) or (times and Trajectory.same_time(t, times[-1])):
            continue
        times.append(t)
    if not times or not Trajectory.same_time(times[-1], t_end):
        times.append(float(t_end))
    return times


def solve(initial, bc, t_end, snapshots=(), source=None, safety=config.DEFAULT_SAFETY, threads=None):
    """
    Marches from initial.time to t_end with dt = min(stable_dt, time to the
    next requested snapshot), so snapshot times are hit exactly.
    """
    if not np.isfinite(t_end):
        raise InvalidParameterError(f"t_end must be finite, got {t_end}")
    if t_end < initial.time:
        raise InvalidParameterError(f"t_end={t_end} precedes the initial time {initial.time}")
    trajectory = Trajectory([initial])
    if Trajectory.same_time(t_end, initial.time):
        return trajectory

    threads = config.THREADS if threads is None else max(1, int(threads))
    targets = _schedule(initial.time, t_end, snapshots)
    LOG.info(f"Solving {initial.kind} grid with {initial.values.size} nodes from t={initial.time!r} "
             f"to t={t_end!r} ({len(targets)} snapshots, {threads} threads)")

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    state = initial
    steps = 0
    try:
        for target in targets:
            while state.time < target:
                limit = stable_dt(state, safety)
                remaining = target - state.time
                if remaining <= limit:
                    state = step(state, bc, remaining, source, executor, safety, limit)
                    state = state.with_values(state.values, target)
                else:
                    state = step(state, bc, limit, source, executor, safety, limit)
                steps += 1
            trajectory.append(state)
            LOG.debug(f"Snapshot at t={state.time!r} after {steps} steps")
    finally:
        if executor is not None:
            executor.shutdown()

    LOG.info(f"Solve finished after {steps} steps")
    return trajectory
