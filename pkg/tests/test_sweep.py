import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from duplexchain import (ChainConfig, DomainError, Experiment, Grid, SweepSpec, TimeWindow,
                         fmax_search, make_qubit, run_sweep, sweep_length, sweep_phase, sweep_theta)
from duplexchain.sweep import fidelity_at, golden_section_max, parallel_map

PI = math.pi
CHAIN10 = ChainConfig(10)


def test_window_defaults():
    w = TimeWindow()
    grid = w.grid()
    assert (w.t_min, w.t_max, w.coarse_step, w.refine_tol) == (10.0, 50.0, 0.05, 1e-4)
    assert len(grid) == 801 and grid[0] == 10.0 and abs(grid[-1] - 50.0) < 1e-12


@pytest.mark.parametrize("args", [(5, 5, 0.1, 1e-4), (5, 6, 0.0, 1e-4), (5, 6, 0.1, 0.0), (0, float("inf"), 1, 1)])
def test_window_validation(args):
    with pytest.raises(DomainError):
        TimeWindow(*args)


def test_grid_values():
    assert list(Grid(1.0, 2.0, 1).values()) == [1.0]
    np.testing.assert_allclose(Grid(0, 1, 5).values(), [0, 0.25, 0.5, 0.75, 1])
    with pytest.raises(DomainError):
        Grid(0, 1, 0)


def test_golden_section_finds_parabola_peak():
    x, fx = golden_section_max(lambda t: 1 - (t - 0.3217) ** 2, 0.0, 1.0, 1e-6)
    assert abs(x - 0.3217) < 1e-6 and abs(fx - 1) < 1e-12


def test_trivial_states_tie_break_to_earliest_time():
    res = fmax_search(CHAIN10, make_qubit(0.0), make_qubit(0.0))
    assert res.f_max == 1.0 and res.tau == 10.0


@pytest.mark.parametrize("theta2, expected", [(0.0, 0.67), (0.6 * PI, 0.91)])
def test_fig2a_spot_values(theta2, expected):
    res = fmax_search(CHAIN10, make_qubit(0.6 * PI), make_qubit(theta2))
    assert abs(res.f_max - expected) <= 0.02


@pytest.mark.parametrize("theta2, expected_tau", [(2 * PI / 3, 23.1), (0.0, 29.2)])
def test_peak_times_without_field(theta2, expected_tau):
    res = fmax_search(CHAIN10, make_qubit(2 * PI / 3), make_qubit(theta2))
    assert abs(res.tau - expected_tau) <= 0.2


def test_result_reports_fidelity_at_tau():
    s1, s2 = make_qubit(1.9, 0.2), make_qubit(1.0, 2.0)
    res = fmax_search(ChainConfig(9, 1.0, 0.3), s1, s2, end="alice")
    assert abs(res.f_max - fidelity_at(ChainConfig(9, 1.0, 0.3), s1, s2, res.tau, "alice")) < 1e-15
    assert res.params["n_sites"] == 9 and res.end.value == "alice"


qubits = st.builds(make_qubit, st.floats(0.0, math.pi), st.floats(0.0, 2 * math.pi))
chains = st.builds(ChainConfig, st.integers(3, 14), st.just(1.0), st.floats(0.0, 1.5))


@settings(max_examples=25, deadline=None)
@given(qubits, qubits, chains, st.sampled_from(["alice", "bob"]))
def test_refinement_soundness(s1, s2, cfg, end):
    w = TimeWindow()
    res = fmax_search(cfg, s1, s2, w, end)
    assert res.f_max >= res.coarse_f_max
    assert abs(res.tau - res.coarse_tau) <= w.coarse_step + 1e-12
    assert w.t_min <= res.tau <= w.t_max


@settings(max_examples=15, deadline=None)
@given(qubits, qubits, chains)
def test_halving_step_never_loses_more_than_tolerance(s1, s2, cfg):
    coarse = fmax_search(cfg, s1, s2, TimeWindow())
    fine = fmax_search(cfg, s1, s2, TimeWindow(coarse_step=0.025))
    assert fine.f_max >= coarse.f_max - 1e-4


def test_single_cell_theta_grid_matches_fmax_search():
    spec = SweepSpec(Experiment.THETA_GRID, chain=CHAIN10,
                     theta1_grid=Grid(0.6 * PI, 0.6 * PI, 1), theta2_grid=Grid(0.3, 0.3, 1))
    table = sweep_theta(spec)
    direct = fmax_search(CHAIN10, make_qubit(0.6 * PI), make_qubit(0.3))
    assert table.rows == [(0.6 * PI, 0.3, direct.f_max, direct.tau)]


def test_theta_grid_is_row_major():
    spec = SweepSpec(Experiment.THETA_GRID, chain=ChainConfig(6),
                     theta1_grid=Grid(0, PI, 3), theta2_grid=Grid(0, PI, 2))
    table = run_sweep(spec)
    assert [(r[0], r[1]) for r in table.rows] == [(a, b) for a in (0, PI / 2, PI) for b in (0, PI)]


def test_theta_grid_peaks_near_the_diagonal():
    spec = SweepSpec(Experiment.THETA_GRID, chain=CHAIN10,
                     theta1_grid=Grid(0.1 * PI, PI, 10), theta2_grid=Grid(0, PI, 21))
    table = sweep_theta(spec)
    f = table.column("f_max").reshape(10, 21)
    theta2 = np.linspace(0, PI, 21)
    for i, t1 in enumerate(np.linspace(0.1 * PI, PI, 10)):
        assert abs(theta2[np.argmax(f[i])] - t1) <= 0.05 * PI + 1e-9


def test_strong_field_row():
    spec = SweepSpec(Experiment.THETA_GRID, chain=ChainConfig(10, field=1.0),
                     theta1_grid=Grid(0.8 * PI, 0.8 * PI, 1), theta2_grid=Grid(0, 0.35 * PI, 2))
    f0, f35 = sweep_theta(spec).column("f_max")
    assert abs(f0 - 0.79) <= 0.02 and abs(f35 - 0.75) <= 0.02
    assert f0 > f35


def test_phase_scan_is_flat_without_bob():
    spec = SweepSpec(Experiment.PHASE_SCAN, chain=CHAIN10, theta1=0.6 * PI, theta2=0.0,
                     dphi_grid=Grid(-2 * PI, 2 * PI, 17))
    f = sweep_phase(spec).column("f_max")
    assert np.ptp(f) < 1e-10


def test_length_scan_with_field_bob_helps_at_n10():
    spec = SweepSpec(Experiment.LENGTH_SCAN, chain=ChainConfig(10, field=1.0),
                     theta1=2 * PI / 3, sites=(10,))
    row = sweep_length(spec).rows[0]
    assert row[0] == 10 and row[1] > row[2]


def test_length_scan_small_grid_columns():
    spec = SweepSpec(Experiment.LENGTH_SCAN, chain=CHAIN10, theta1=2 * PI / 3, sites=(4, 5),
                     inner_theta_grid=Grid(0, PI, 5), inner_phi_grid=Grid(0, 2 * PI, 5), refine_count=3)
    table = sweep_length(spec)
    assert table.columns[:5] == ("n", "f_max_with_bob", "f_max_without_bob", "tau_with", "tau_without")
    assert list(table.column("n")) == [4, 5]
    assert np.all(table.column("f_max_with_bob") >= table.column("f_max_without_bob"))


def test_parallel_map_preserves_order():
    assert parallel_map(abs, [-3, 1, -2, 5, -7], workers=2) == [3, 1, 2, 5, 7]


def test_sweep_is_identical_across_worker_counts():
    spec = SweepSpec(Experiment.THETA_GRID, chain=ChainConfig(8, field=0.1),
                     theta1_grid=Grid(0, PI, 4), theta2_grid=Grid(0, PI, 4))
    assert sweep_theta(spec, workers=1).rows == sweep_theta(spec, workers=3).rows
