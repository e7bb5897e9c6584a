# -*- coding: utf-8 -*-
import numpy as np
import pytest
from numpy.testing import assert_allclose

from app import config
from app.errors import StabilityError, DivergenceError, InvalidParameterError, DomainError
from app.model import Params, BoundaryCondition, SupersolutionParams
from app.service import fd_solver, profiles, closed_forms, report_writer


def random_radial(params, seed, M=32, radius=1.0, epsilon=None):
    rng = np.random.default_rng(seed)
    values = rng.uniform(0.0, 1.0, size=M + 1)
    return fd_solver.make_radial_state(lambda r: values, params, M, radius, epsilon=epsilon)


def random_planar(params, seed, M=16, radius=1.0, epsilon=1e-2):
    rng = np.random.default_rng(seed)
    values = rng.uniform(0.0, 1.0, size=(M + 1, M + 1))
    return fd_solver.make_planar_state(lambda x, y: values, params, M, radius, epsilon=epsilon)


def test_grid_layout(singular_params):
    radial = fd_solver.make_radial_state(profiles.constant(1.0), singular_params, 10, 0.5)
    assert radial.h == pytest.approx(0.05)
    assert radial.values.shape == (11,)
    assert radial.d_eff == pytest.approx(singular_params.d)
    planar = fd_solver.make_planar_state(profiles.constant(1.0), singular_params, 10, 0.5)
    assert planar.h == pytest.approx(0.1)
    assert_allclose(planar.axis()[[0, 5, 10]], [-0.5, 0.0, 0.5])
    with pytest.raises(InvalidParameterError):
        fd_solver.make_planar_state(profiles.constant(1.0), singular_params, 11, 0.5)
    with pytest.raises(InvalidParameterError):
        fd_solver.make_planar_state(profiles.constant(1.0), Params(n=3, p=2.0, q=1.5), 10, 0.5)


def test_default_epsilon():
    assert fd_solver.default_epsilon(np.array([2.0, 2.0])) == config.DEFAULT_EPSILON_FACTOR
    assert fd_solver.default_epsilon(np.array([0.0, 3.0])) == pytest.approx(3.0 * config.DEFAULT_EPSILON_FACTOR)


@pytest.mark.parametrize("params", [Params(n=2, p=2.0, q=1.5), Params(n=3, p=1.4, q=1.7), Params(n=2, p=3.0, q=2.0)],
                         ids=str)
def test_radial_field_matches_node_operator(params):
    state = random_radial(params, seed=7, epsilon=1e-2)
    field = fd_solver.regularized_field(state)
    nodes = [fd_solver.regularized_operator(state, i) for i in range(state.cells)]
    assert_allclose(field[:-1], nodes, rtol=1e-12, atol=1e-12)
    assert field[-1] == 0.0


def test_planar_field_matches_node_operator():
    params = Params(n=2, p=3.0, q=1.5)
    state = random_planar(params, seed=3)
    field = fd_solver.regularized_field(state)
    for i in range(1, state.cells):
        for j in range(1, state.cells):
            assert field[i, j] == pytest.approx(fd_solver.regularized_operator(state, (i, j)), rel=1e-12, abs=1e-12)
    assert not np.any(field[state.boundary_mask()])


def test_boundary_nodes_have_no_operator(singular_params):
    state = random_radial(singular_params, seed=1)
    with pytest.raises(DomainError):
        fd_solver.regularized_operator(state, state.cells)
    planar = random_planar(singular_params, seed=1)
    with pytest.raises(DomainError):
        fd_solver.regularized_operator(planar, (0, 4))


def test_planar_heat_operator_is_five_point_laplacian(heat_params):
    state = fd_solver.make_planar_state(lambda x, y: x * x + 3.0 * y * y, heat_params, 8, 1.0)
    assert_allclose(fd_solver.regularized_field(state)[1:-1, 1:-1], 8.0, rtol=1e-12)


def test_radial_axis_uses_reflected_ghost(heat_params):
    # u = r^2 has Laplacian 2n = 4 in the plane, on the axis included
    state = fd_solver.make_radial_state(lambda r: r * r, heat_params, 16, 1.0)
    assert_allclose(fd_solver.regularized_field(state)[:-1], 4.0, rtol=1e-12)


def test_q_two_operator_ignores_epsilon():
    params = Params(n=3, p=3.0, q=2.0)
    rough = random_radial(params, seed=11, epsilon=1e-1)
    fine = random_radial(params, seed=11, epsilon=1e-3)
    assert np.array_equal(fd_solver.regularized_field(rough), fd_solver.regularized_field(fine))
    assert fd_solver.stable_dt(rough) == fd_solver.stable_dt(fine)


def test_stable_dt_planar_example():
    params = Params(n=2, p=2.0, q=1.5)
    state = fd_solver.make_planar_state(profiles.constant(1.0), params, 200, 1.0, epsilon=1e-3)
    assert state.h == pytest.approx(0.01)
    # the full Laplacian weight, not (q - 1) w
    expected = 0.9 * 1e-4 / (4.0 * (1e-6) ** -0.25)
    assert fd_solver.stable_dt(state) == pytest.approx(expected, rel=1e-12)
    assert fd_solver.stable_dt(state) == pytest.approx(7.12e-7, rel=1e-2)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_planar_flat_node_update_is_convex(p):
    state = fd_solver.make_planar_state(profiles.constant(1.0), Params(n=2, p=p, q=1.5), 32, 1.0, epsilon=1e-2)
    centre = 2.0 * max(2.0, p) * 1e-2 ** -0.5 / state.h ** 2
    assert fd_solver.stable_dt(state) * centre <= 1.0


def test_stable_dt_heat_examples(heat_params):
    radial = fd_solver.make_radial_state(profiles.constant(0.0), heat_params, 32, 1.0)
    assert 4.0 * fd_solver.stable_dt(radial) / radial.h ** 2 == pytest.approx(0.9)
    planar = fd_solver.make_planar_state(profiles.constant(0.0), heat_params, 32, 1.0)
    assert fd_solver.stable_dt(planar) == pytest.approx(0.225 * planar.h ** 2)


def test_stable_dt_scales_with_h_squared(heat_params):
    coarse = fd_solver.make_radial_state(profiles.gaussian(), heat_params, 32, 1.0)
    fine = fd_solver.make_radial_state(profiles.gaussian(), heat_params, 64, 1.0)
    assert fd_solver.stable_dt(coarse) == pytest.approx(4.0 * fd_solver.stable_dt(fine), rel=1e-12)


def test_step_rejects_unstable_or_empty_steps(singular_params):
    state = random_radial(singular_params, seed=2, epsilon=1e-2)
    bc = BoundaryCondition.constant(0.0)
    limit = fd_solver.stable_dt(state)
    with pytest.raises(StabilityError):
        fd_solver.step(state, bc, 2.0 * limit)
    with pytest.raises(InvalidParameterError):
        fd_solver.step(state, bc, 0.0)
    moved = fd_solver.step(state, bc, limit)
    assert moved.time == pytest.approx(limit)
    assert moved.values[-1] == 0.0


def test_step_reports_non_finite_updates(singular_params):
    state = random_radial(singular_params, seed=2, epsilon=1e-2)
    broken = BoundaryCondition.function(lambda r, t: np.full(np.shape(r), np.nan))
    with pytest.raises(DivergenceError) as info:
        fd_solver.step(state, broken, 0.5 * fd_solver.stable_dt(state))
    assert info.value.node == (state.cells,)


def test_solve_hits_snapshot_times_exactly(heat_params):
    initial = fd_solver.make_radial_state(profiles.bump(), heat_params, 32, 1.0)
    traj = fd_solver.solve(initial, BoundaryCondition.constant(0.0), 0.003, snapshots=(0.001, 0.002))
    assert traj.times == [0.0, 0.001, 0.002, 0.003]
    assert traj.at(0.002).time == 0.002
    with pytest.raises(InvalidParameterError):
        fd_solver.solve(initial, BoundaryCondition.constant(0.0), 0.003, snapshots=(0.004,))
    with pytest.raises(InvalidParameterError):
        fd_solver.solve(initial.with_values(initial.values, 1.0), BoundaryCondition.constant(0.0), 0.5)


def test_constant_data_is_stationary(singular_params):
    initial = fd_solver.make_radial_state(profiles.constant(2.0), singular_params, 16, 1.0)
    traj = fd_solver.solve(initial, BoundaryCondition.constant(2.0), 1e-4)
    assert np.all(traj.final.values == 2.0)


@pytest.mark.parametrize("grid", [config.GRID_RADIAL, config.GRID_PLANAR])
def test_additive_shift_equivariance(grid, singular_params):
    if grid == config.GRID_RADIAL:
        initial = fd_solver.make_radial_state(profiles.bump(floor=0.25), singular_params, 32, 1.0, epsilon=1e-2)
    else:
        initial = fd_solver.make_planar_state(profiles.bump(width=0.5, floor=0.25), singular_params, 16, 1.0,
                                              epsilon=1e-2)
    bc = BoundaryCondition.constant(0.25)
    plain = fd_solver.solve(initial, bc, 2e-3, snapshots=(1e-3,))
    moved = fd_solver.solve(initial.shifted(4.0), bc.shifted(4.0), 2e-3, snapshots=(1e-3,))
    assert plain.times == moved.times
    for a, b in zip(plain, moved):
        assert_allclose(b.values - 4.0, a.values, rtol=0, atol=1e-12)


@pytest.mark.parametrize("params", [Params(n=2, p=2.0, q=2.0), Params(n=2, p=2.0, q=1.5)], ids=str)
@pytest.mark.parametrize("seed", range(10))
def test_radial_scheme_preserves_order(seed, params):
    low = fd_solver.make_radial_state(profiles.random_positive(seed=seed), params, 32, 1.0)
    gap = profiles.random_positive(seed=100 + seed, floor=0.01)
    high = low.with_values(low.values + gap(low.radii()), low.time)
    bc = BoundaryCondition.constant(0.1)
    below = fd_solver.solve(low, bc, 0.02, snapshots=(0.005, 0.01))
    above = fd_solver.solve(high, bc, 0.02, snapshots=(0.005, 0.01))
    for u, v in zip(below, above):
        assert np.all(v.values >= u.values - 1e-12)


def test_planar_heat_scheme_preserves_order(heat_params):
    low = fd_solver.make_planar_state(profiles.random_positive(seed=5, symmetric=False), heat_params, 32, 1.0)
    x, y = low.coordinates()
    high = low.with_values(low.values + profiles.random_positive(seed=6, symmetric=False)(x, y), low.time)
    bc = BoundaryCondition.constant(0.2)
    below = fd_solver.solve(low, bc, 0.01)
    above = fd_solver.solve(high, bc, 0.01)
    assert np.all(above.final.values >= below.final.values - 1e-12)


@pytest.mark.parametrize("seed", range(3))
def test_heat_scheme_minimum_principle(seed, heat_params):
    initial = fd_solver.make_radial_state(profiles.random_positive(seed=seed, floor=0.3), heat_params, 32, 1.0)
    traj = fd_solver.solve(initial, BoundaryCondition.constant(0.5), 0.05, snapshots=(0.01, 0.02))
    low = min(float(np.min(initial.values)), 0.5)
    high = max(float(np.max(initial.values)), 0.5)
    for state in traj:
        assert float(np.min(state.values)) >= low - 1e-12
        assert float(np.max(state.values)) <= high + 1e-12


def test_planar_minimum_principle_in_the_singular_range(singular_params):
    initial = fd_solver.make_planar_state(profiles.bump(floor=0.1), singular_params, 64, 1.0)
    traj = fd_solver.solve(initial, BoundaryCondition.constant(0.1), 2e-3, snapshots=(1e-3,))
    top = float(np.max(initial.values))
    for state in traj:
        assert float(np.min(state.values)) >= 0.1 - 1e-12
        assert float(np.max(state.values)) <= top + 1e-12


def test_solve_needs_a_finite_horizon(singular_params):
    initial = fd_solver.make_radial_state(profiles.bump(), singular_params, 16, 1.0)
    with pytest.raises(InvalidParameterError):
        fd_solver.solve(initial, BoundaryCondition.constant(0.0), float("inf"))


def test_results_do_not_depend_on_thread_count(singular_params, tmp_path):
    initial = fd_solver.make_planar_state(profiles.random_positive(seed=9, symmetric=False), singular_params,
                                          64, 1.0)
    bc = BoundaryCondition.constant(0.1)
    serial = fd_solver.solve(initial, bc, 5e-4, snapshots=(2.5e-4,), threads=1)
    parallel = fd_solver.solve(initial, bc, 5e-4, snapshots=(2.5e-4,), threads=3)
    for a, b in zip(serial, parallel):
        assert np.array_equal(a.values, b.values)
    first = report_writer.write_grid_csv(serial, str(tmp_path / "serial.csv"))
    second = report_writer.write_grid_csv(parallel, str(tmp_path / "parallel.csv"))
    with open(first, "rb") as f, open(second, "rb") as g:
        assert f.read() == g.read()


def _tracking_error(params, M):
    sp = SupersolutionParams(params=params, lam=closed_forms.lambda_min(params), R=1.0, center=0.0)

    def exact(r, t):
        return closed_forms.supersolution_profile(sp, r, t)

    initial = fd_solver.make_radial_state(profiles.supersolution(sp, 1.0), params, M, 0.5, time=1.0)
    source = lambda r, t: closed_forms.supersolution_source(sp, r, t)  # noqa: E731
    traj = fd_solver.solve(initial, BoundaryCondition.function(exact), 1.01, source=source)
    final = traj.final
    return fd_solver.relative_linf(final.values, exact(final.radii(), final.time))


def test_radial_solve_tracks_the_barrier(singular_params):
    coarse = _tracking_error(singular_params, 32)
    fine = _tracking_error(singular_params, 64)
    assert coarse <= 0.05
    assert fine < coarse


def _equivalence_discrepancy(params, M_radial):
    bump = profiles.bump(width=0.5)
    bc = BoundaryCondition.constant(0.0)
    radial = fd_solver.make_radial_state(bump, params, M_radial, 1.0)
    planar = fd_solver.make_planar_state(bump, params, 2 * M_radial, 1.0)
    along = fd_solver.solve(radial, bc, 0.01).final.values
    across = fd_solver.solve(planar, bc, 0.01).final.values[M_radial:, M_radial]
    return fd_solver.relative_linf(across, along)


@pytest.mark.slow
def test_radial_and_planar_solvers_agree_for_p_equal_q(heat_params):
    coarse = _equivalence_discrepancy(heat_params, 64)
    fine = _equivalence_discrepancy(heat_params, 128)
    assert coarse <= 0.05
    assert fine < coarse


@pytest.mark.slow
def test_fictitious_dimension_matches_the_plane_in_the_singular_range(supercritical_params):
    # p = q = 1.5, n = 2: d = 2 and kappa = 1, but the operator is nonlinear
    assert _equivalence_discrepancy(supercritical_params, 64) <= 0.01
