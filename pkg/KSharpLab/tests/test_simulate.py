import numpy as np
import pytest
from .utils import *
from .. import travwave
from ..diagnostics import drift_summary
from ..exceptions import DomainError, SimulationBlowUp
from ..models import Grid, HierarchyParams, RunManifest, SolverConfig, State
from ..simulate import (DiagnosticsRecorder, initial_state, max_stable_dt, rhs, run, run_manifest,
                        step_rk4, track_peak)
from ..spatial import derivative, periodic_offsets


def test_rest_and_constant_states_are_stationary(sine_grid):
    config = SolverConfig(dt=0.01)
    for n, m in [(1, 1), (2, 3), (3, 4)]:
        p = HierarchyParams(n=n, m=m)
        assert np.all(rhs(State(0.0, np.zeros(16)), p, sine_grid, config) == 0.0)
        constant = rhs(State(0.0, np.full(16, 2.0)), p, sine_grid, config)
        assert np.max(np.abs(constant)) < 1e-12


def test_kdv_right_hand_side_of_a_sine(sine_grid, kdv_params):
    x = sine_grid.points()
    u = np.sin(x)
    expected = -np.sin(x) * np.cos(x) + np.cos(x)
    for dealias in (True, False):
        result = rhs(State(0.0, u), kdv_params, sine_grid, SolverConfig(dt=0.01, dealias=dealias))
        assert np.max(np.abs(result - expected)) < 1e-12


def test_split_form_equals_printed_operator_for_band_limited_data():
    grid = Grid(length=2 * np.pi, npoints=64)
    x = grid.points()
    u = 0.3 * np.sin(x) + 0.1 * np.cos(2 * x)
    p = HierarchyParams(n=1, m=3)
    u_x = derivative(u, 1, grid)
    printed = -u * u_x - derivative(u_x ** 3, 2, grid)
    result = rhs(State(0.0, u), p, grid, SolverConfig(dt=1e-3, dealias=False))
    assert np.max(np.abs(result - printed)) < 1e-12


def test_split_form_conserves_mass_and_momentum_semi_discretely():
    grid = Grid(length=20.0, npoints=64)
    u = 1.2 * np.exp(-(grid.points() - 10.0) ** 2)
    for m in (1, 2, 3):
        for scheme in ('fourier_collocation', 'centered_fd4'):
            result = rhs(State(0.0, u), HierarchyParams(n=1, m=m), grid,
                         SolverConfig(dt=1e-4, scheme=scheme, dealias=False))
            assert abs(np.sum(result)) < 1e-10
            assert abs(np.sum(u * result)) < 1e-10


def test_smoothing_damps_the_state():
    grid = Grid(length=2 * np.pi, npoints=32)
    u = np.sin(4 * grid.points())
    p = HierarchyParams(n=1, m=1)
    plain = rhs(State(0.0, u), p, grid, SolverConfig(dt=1e-3))
    smoothed = rhs(State(0.0, u), p, grid, SolverConfig(dt=1e-3, smoothing=0.01))
    assert np.max(np.abs(smoothed - plain + 0.01 * 256 * u)) < 1e-10


def test_signed_power_only_changes_even_members():
    grid = Grid(length=2 * np.pi, npoints=32)
    u = 0.4 * np.sin(grid.points())
    for m, changes in [(2, True), (3, False)]:
        p = HierarchyParams(n=1, m=m)
        literal = rhs(State(0.0, u), p, grid, SolverConfig(dt=1e-3))
        signed = rhs(State(0.0, u), p, grid, SolverConfig(dt=1e-3, signed_power=True))
        assert (np.max(np.abs(literal - signed)) > 1e-6) == changes


def test_non_finite_state_aborts(sine_grid, kdv_params):
    u = np.zeros(16)
    u[3] = np.nan
    with pytest.raises(SimulationBlowUp):
        rhs(State(0.0, u), kdv_params, sine_grid, SolverConfig(dt=0.01))


def test_rk4_keeps_rest_state(sine_grid, kdv_params):
    advanced = step_rk4(State(1.0, np.zeros(16)), kdv_params, sine_grid, SolverConfig(dt=0.25))
    assert advanced.time == 1.25
    assert np.all(advanced.values == 0.0)


def test_rk4_forward_then_backward(sine_grid, kdv_params):
    config = SolverConfig(dt=0.01)
    start = State(0.0, 0.1 * np.sin(sine_grid.points()))
    there = step_rk4(start, kdv_params, sine_grid, config)
    back = step_rk4(there, kdv_params, sine_grid, config, dt=-config.dt)
    assert back.time == pytest.approx(0.0, abs=1e-15)
    assert np.max(np.abs(back.values - start.values)) < 1e-9


def test_rk4_is_fourth_order(sine_grid, kdv_params):
    start = State(0.0, 0.1 * np.sin(sine_grid.points()))

    def final(dt):
        _, state = run(start, kdv_params, sine_grid, SolverConfig(dt=dt), 0.2)
        return state.values

    reference = final(0.00125)
    coarse = np.max(np.abs(final(0.01) - reference))
    fine = np.max(np.abs(final(0.005) - reference))
    assert 12 < coarse / fine < 20


def test_stability_guidance(kdv_grid, kdv_params, kdv_config):
    state = kdv_state(kdv_grid)
    bound = max_stable_dt(state, kdv_params, kdv_grid, kdv_config)
    assert bound == pytest.approx(0.25 * kdv_grid.spacing ** 3 / 2.25, rel=1e-12)
    custom = SolverConfig(dt=4e-3, stability_constant=1.0)
    assert max_stable_dt(state, kdv_params, kdv_grid, custom) == pytest.approx(4 * bound)
    assert kdv_config.dt <= bound


def test_track_peak_on_grid_point(kdv_grid):
    estimate = track_peak(kdv_state(kdv_grid), kdv_grid)
    assert estimate.location == pytest.approx(20.0, abs=1e-9)
    assert estimate.height == pytest.approx(2.25)
    assert not estimate.degenerate


def test_track_peak_between_grid_points():
    grid = Grid(length=40.0, npoints=512)
    center = 20.0 + 0.3 * grid.spacing
    estimate = track_peak(kdv_state(grid, center=center), grid)
    assert abs(estimate.location - center) < 0.05 * grid.spacing


def test_track_peak_wraps_modulo_length():
    grid = Grid(length=40.0, npoints=512)
    center = grid.length - 0.2 * grid.spacing
    state = State(0.0, travwave.kdv_soliton(0.75, periodic_offsets(grid, center)))
    estimate = track_peak(state, grid)
    assert 0.0 <= estimate.location < grid.length
    assert estimate.location == pytest.approx(center, abs=0.05 * grid.spacing)


def test_track_peak_flags_flat_state(sine_grid):
    estimate = track_peak(State(0.0, np.full(16, 0.5)), sine_grid)
    assert estimate.degenerate
    assert estimate.height == 0.5


def test_zero_is_a_fixed_point_of_run(sine_grid):
    for n in (1, 2, 3):
        for m in (1, 2, 3, 4, 5):
            record, final = run(State(0.0, np.zeros(16)), HierarchyParams(n=n, m=m), sine_grid,
                                SolverConfig(dt=0.05), 0.1)
            assert np.all(final.values == 0.0)
            assert final.time == 0.1
            assert set(record.mass) == {0.0} and set(record.energy) == {0.0}


def test_run_lands_on_end_time_and_samples_diagnostics(sine_grid, kdv_params):
    start = State(0.0, 0.1 * np.sin(sine_grid.points()))
    seen = []
    record, final = run(start, kdv_params, sine_grid, SolverConfig(dt=0.03), 0.1,
                        observers=[lambda state, step, last: seen.append((step, last))],
                        diagnostics_every=2, ik_orders=[3])
    assert final.time == 0.1
    assert seen == [(0, False), (1, False), (2, False), (3, False), (4, True)]
    assert record.times == pytest.approx([0.0, 0.06, 0.1])
    assert len(record.ik[3]) == 3


def test_run_rejects_bad_arguments(sine_grid, kdv_params):
    with pytest.raises(DomainError):
        run(State(1.0, np.zeros(16)), kdv_params, sine_grid, SolverConfig(dt=0.1), 1.0)
    with pytest.raises(DomainError):
        run(State(0.0, np.zeros(8)), kdv_params, sine_grid, SolverConfig(dt=0.1), 1.0)


def test_run_translation_invariance():
    grid = Grid(length=2 * np.pi, npoints=64)
    p = HierarchyParams(n=2, m=1)
    config = SolverConfig(dt=2e-4)
    u = 0.5 * np.exp(-((grid.points() - np.pi) / 0.5) ** 2)
    _, plain = run(State(0.0, u), p, grid, config, 20 * config.dt)
    _, shifted = run(State(0.0, np.roll(u, 8)), p, grid, config, 20 * config.dt)
    assert np.max(np.abs(np.roll(plain.values, 8) - shifted.values)) < 1e-12


def test_blow_up_keeps_partial_record():
    grid = Grid(length=2 * np.pi, npoints=64)
    u = np.exp(-((grid.points() - np.pi) / 0.3) ** 2)
    with pytest.raises(SimulationBlowUp) as info:
        run(State(0.0, u), HierarchyParams(n=1, m=1), grid, SolverConfig(dt=0.1), 10.0)
    assert len(info.value.record.times) >= 1
    assert np.all(np.isfinite(info.value.state.values))


def test_kdv_soliton_transits_the_box(kdv_grid, kdv_params, kdv_config):
    start = kdv_state(kdv_grid)
    record, final = run(start, kdv_params, kdv_grid, kdv_config, kdv_grid.length / 0.75,
                        diagnostics_every=500)
    assert np.max(np.abs(final.values - start.values)) <= 1e-3
    assert abs(record.mass[-1] - record.mass[0]) / abs(record.mass[0]) <= 1e-8
    assert abs(record.momentum[-1] - record.momentum[0]) / abs(record.momentum[0]) <= 1e-8
    assert abs(record.energy[-1] - record.energy[0]) / abs(record.energy[0]) <= 1e-6


def test_kdv_soliton_on_fine_grid_matches_translate(kdv_params):
    grid = Grid(length=40.0, npoints=512)
    t_end = 0.25
    _, final = run(kdv_state(grid), kdv_params, grid, SolverConfig(dt=1e-4), t_end,
                   diagnostics_every=1000)
    exact = kdv_state(grid, center=20.0 + 0.75 * t_end).values
    assert np.max(np.abs(final.values - exact)) <= 1e-5


def test_peakompacton_moves_at_its_speed(peakompacton_1_3):
    grid = Grid(length=30.0, npoints=192)
    values, _ = travwave.initial_peakompacton(peakompacton_1_3, grid)
    config = SolverConfig(dt=1e-4, smoothing=1e-4)
    record, _ = run(State(0.0, values), peakompacton_1_3.p, grid, config, 5.0,
                    diagnostics_every=10000)
    assert len(record.times) == 6
    speed, _ = np.polyfit(record.times, record.peak_location, 1)
    assert speed == pytest.approx(0.75, rel=0.02)


def test_initial_state_kinds():
    base = manifest_document('unused', grid={'length': 30.0, 'npoints': 64})
    zero, error = initial_state(RunManifest.model_validate(base))
    assert np.all(zero.values == 0.0) and error == 0.0
    gaussian, _ = initial_state(RunManifest.model_validate(
        {**base, 'initial': {'kind': 'gaussian', 'amplitude': 2.0, 'width': 1.5}}))
    assert gaussian.values.max() == pytest.approx(2.0)
    soliton, _ = initial_state(RunManifest.model_validate(
        {**base, 'initial': {'kind': 'kdv_soliton', 'center': 5.0}}))
    assert soliton.values[int(5.0 / 30.0 * 64 + 0.5)] == pytest.approx(2.25, rel=1e-2)
    peaked, change = initial_state(RunManifest.model_validate(
        {**base, 'params': {'n': 1, 'm': 3, 'c': 0.75},
         'initial': {'kind': 'peakompacton', 'mollify': True}}))
    assert change > 0 and peaked.values.max() < 2.25


def test_run_manifest_returns_record_state_and_error():
    manifest = RunManifest.model_validate(manifest_document('unused'))
    record, final, error = run_manifest(manifest)
    assert final.time == pytest.approx(0.1)
    assert error == 0.0
    assert set(record.ik) == {3}


def test_diagnostics_recorder_cadence(sine_grid, kdv_params):
    recorder = DiagnosticsRecorder(kdv_params, sine_grid, 'fourier_collocation', [1, 2], every=3)
    state = State(0.0, np.ones(16))
    for step in range(7):
        recorder(state, step, step == 6)
    assert len(recorder.record().times) == 3
    recorder(state, 7, True)
    assert len(recorder.record().ik[2]) == 4


def test_coefficients_scale_the_right_hand_side():
    grid = Grid(length=2 * np.pi, npoints=32)
    state = State(0.0, 0.5 + np.sin(grid.points()))
    config = SolverConfig(dt=1e-3)

    def evaluate(**coefficients):
        return rhs(state, HierarchyParams(n=1, m=3, **coefficients), grid, config)

    canonical = evaluate()
    advective = evaluate(epsilon=2.0) - canonical
    dispersive = evaluate(delta=2.0) - canonical
    scaled = evaluate(epsilon=6.0, delta=0.1)
    assert np.max(np.abs(scaled - canonical)) > 0.1
    assert np.max(np.abs(scaled - (6.0 * advective + 0.1 * dispersive))) <= 1e-10


def test_dimensional_kdv_soliton_is_translated(kdv_grid):
    p = HierarchyParams(n=1, m=1, epsilon=6.0, delta=1.0)
    start = State(0.0, kdv_state(kdv_grid).values / 6.0)
    t_end = 0.5
    _, final = run(start, p, kdv_grid, SolverConfig(dt=2e-3), t_end, diagnostics_every=50)
    exact = kdv_state(kdv_grid, center=20.0 + FIGURE_SPEED * t_end).values / 6.0
    assert np.max(np.abs(final.values - exact)) <= 1e-4


def test_smoothing_drift_shrinks_with_nu(peakompacton_1_3):
    grid = Grid(length=30.0, npoints=192)
    values, _ = travwave.initial_peakompacton(peakompacton_1_3, grid, mollify=True)
    records = {}
    for nu in (0.0, 2e-5, 1e-5):
        records[nu], _ = run(State(0.0, values), peakompacton_1_3.p, grid,
                             SolverConfig(dt=1e-4, smoothing=nu), 0.25, diagnostics_every=250)

    def excess(name, nu):
        return abs(getattr(records[nu], name)[-1] - getattr(records[0.0], name)[-1])

    for record in records.values():
        assert drift_summary(record)['mass'] <= 1e-10
    for name in ('momentum', 'energy'):
        assert excess(name, 2e-5) > 0.0
        assert excess(name, 1e-5) / excess(name, 2e-5) == pytest.approx(0.5, abs=0.1)
    assert drift_summary(records[1e-5])['momentum'] < drift_summary(records[2e-5])['momentum']
