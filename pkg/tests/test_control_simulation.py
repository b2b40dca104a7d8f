from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pandas as pd
import pytest

from contispine.biomech.biomech_profiles import stoop_trajectory
from contispine.control.control_metrics import (
    hysteresis_loop_area,
    stiffness_fit,
    tracking_metrics,
)
from contispine.control.control_plant import LoopState, PlantParams, plant_step
from contispine.control.control_reference import ImpedanceParams
from contispine.control.control_simulator import (
    CLOSED_LOOP,
    GRAVITY_STIFFNESS,
    IMPEDANCE,
    OPEN_LOOP,
    TRACE_COLUMNS,
    SensorNoise,
    SimTrace,
    SimulationParams,
    simulate_stoop,
)
from contispine.utils.constants import NOMINAL_PEAK_FORCE_N, TRACKING_RMS_TARGET_N


def _trace_from(F_r, F_a, *, F_b=None, cycles: int = 1) -> SimTrace:
    F_r = np.asarray(F_r, dtype=float)
    frame = pd.DataFrame(0.0, index=range(len(F_r)), columns=list(TRACE_COLUMNS))
    frame["t"] = np.arange(len(F_r)) * 1e-3
    frame["F_r"] = F_r
    frame["F_a"] = np.asarray(F_a, dtype=float)
    frame["F_b"] = 0.0 if F_b is None else F_b
    frame["F_k"] = F_r - frame["F_b"]
    return SimTrace(frame, cycles, CLOSED_LOOP, GRAVITY_STIFFNESS, 1000.0, 0)


@pytest.fixture(scope="module")
def nominal_trace() -> SimTrace:
    return simulate_stoop(10, CLOSED_LOOP, GRAVITY_STIFFNESS, SimulationParams())


@pytest.fixture(scope="module")
def long_trace() -> SimTrace:
    return simulate_stoop(30, CLOSED_LOOP, GRAVITY_STIFFNESS, SimulationParams())


@pytest.fixture(scope="module")
def open_loop_trace() -> SimTrace:
    return simulate_stoop(1, OPEN_LOOP, GRAVITY_STIFFNESS, SimulationParams())


def test_nominal_closed_loop_meets_tracking_target(nominal_trace):
    metrics = tracking_metrics(nominal_trace)
    assert metrics.rms_N <= TRACKING_RMS_TARGET_N
    assert metrics.peak_N <= NOMINAL_PEAK_FORCE_N


def test_thirty_cycles_render_linear_stiffness(long_trace):
    metrics = tracking_metrics(long_trace)
    assert metrics.r2 >= 0.99
    assert 0.95 <= metrics.slope <= 1.05


def test_trace_has_one_sample_per_millisecond(nominal_trace):
    assert len(nominal_trace) == 10 * 8000
    steps = np.diff(nominal_trace.column("t"))
    assert np.all(steps > 0)
    np.testing.assert_allclose(steps, 1e-3, atol=1e-9)


def test_cable_only_pulls_and_stays_within_limits(nominal_trace):
    plant = PlantParams()
    assert np.all(nominal_trace.column("F_a") >= 0.0)
    assert np.all(np.abs(nominal_trace.column("F_prox")) <= plant.force_limit)
    cable_speed = np.abs(nominal_trace.column("omega")) * plant.transmission
    assert np.all(cable_speed <= plant.speed_limit + 1e-12)


def test_sheath_never_generates_energy(nominal_trace):
    assert tracking_metrics(nominal_trace).dissipation >= 0.0


def test_open_loop_current_shows_hysteresis(open_loop_trace):
    metrics = tracking_metrics(open_loop_trace)
    assert metrics.loop_area > 0.0
    assert metrics.rms_N > TRACKING_RMS_TARGET_N


def test_simulation_is_deterministic():
    params = SimulationParams(cycle_s=2.0)
    first = simulate_stoop(1, CLOSED_LOOP, IMPEDANCE, params)
    second = simulate_stoop(1, CLOSED_LOOP, IMPEDANCE, params)
    pd.testing.assert_frame_equal(first.samples, second.samples, check_exact=True)


def test_frictionless_open_and_closed_loop_converge():
    params = SimulationParams(
        plant=PlantParams(mu_theta=0.0, damping=0.0),
        impedance=ImpedanceParams(J_d=0.0, B_d=0.0, K_d=60.0, stiffness_law="linear"),
    )
    open_loop = simulate_stoop(1, OPEN_LOOP, IMPEDANCE, params)
    closed_loop = simulate_stoop(1, CLOSED_LOOP, IMPEDANCE, params)
    difference = open_loop.column("F_a") - closed_loop.column("F_a")
    assert math.sqrt(np.mean(difference**2)) <= 3.0


def test_tracking_error_shrinks_with_sheath_friction():
    errors = []
    for mu in (0.3, 0.2, 0.1, 0.0):
        params = SimulationParams(plant=PlantParams(mu_theta=mu))
        errors.append(tracking_metrics(simulate_stoop(1, CLOSED_LOOP, GRAVITY_STIFFNESS, params)).rms_N)
    assert all(later <= earlier + 1e-9 for earlier, later in zip(errors, errors[1:]))


def test_sensor_noise_is_seeded():
    params = SimulationParams(cycle_s=1.0, noise=SensorNoise(force_std=0.5, seed=3))
    first = simulate_stoop(1, CLOSED_LOOP, GRAVITY_STIFFNESS, params)
    second = simulate_stoop(1, CLOSED_LOOP, GRAVITY_STIFFNESS, params)
    quiet = simulate_stoop(1, CLOSED_LOOP, GRAVITY_STIFFNESS, replace(params, noise=SensorNoise()))
    pd.testing.assert_frame_equal(first.samples, second.samples, check_exact=True)
    assert not first.samples.equals(quiet.samples)


@pytest.mark.parametrize(
    "cycles, controller, reference",
    [(0, CLOSED_LOOP, GRAVITY_STIFFNESS), (1, "bang_bang", GRAVITY_STIFFNESS), (1, OPEN_LOOP, "spring")],
)
def test_simulation_rejects_invalid_runs(cycles, controller, reference):
    with pytest.raises(ValueError):
        simulate_stoop(cycles, controller, reference, SimulationParams(cycle_s=1.0))


def test_simulation_params_require_integer_rate_ratio():
    with pytest.raises(ValueError):
        SimulationParams(high_level_hz=1000.0, plant_hz=2500.0)
    assert SimulationParams().substeps == 10


def test_perfect_tracking_metrics():
    F_r = 100.0 * np.sin(np.linspace(0.0, math.pi, 200)) + 1.0
    metrics = tracking_metrics(_trace_from(F_r, F_r))
    assert metrics.rms_N == 0.0
    assert metrics.r2 == pytest.approx(1.0)
    assert metrics.slope == pytest.approx(1.0)


def test_constant_offset_gives_offset_rms():
    F_r = np.linspace(0.0, 200.0, 50)
    metrics = tracking_metrics(_trace_from(F_r, F_r + 5.0))
    assert metrics.rms_N == pytest.approx(5.0)
    assert metrics.percent_of_peak == pytest.approx(2.5)


def test_stiffness_fit_removes_damping_share():
    F_k = np.linspace(0.0, 150.0, 80)
    F_b = 10.0 * np.sin(np.linspace(0.0, 2 * math.pi, 80))
    trace = _trace_from(F_k + F_b, F_k + F_b, F_b=F_b)
    slope, r2 = stiffness_fit(trace)
    assert slope == pytest.approx(1.0)
    assert r2 == pytest.approx(1.0)


def test_loop_area_of_a_closed_rectangle():
    F_r = [0.0, 100.0, 100.0, 0.0, 0.0]
    F_a = [0.0, 0.0, 50.0, 50.0, 0.0]
    assert hysteresis_loop_area(F_r, F_a) == pytest.approx(5000.0)
    assert hysteresis_loop_area(F_r, F_a, cycles=2) == pytest.approx(2500.0)


def test_metrics_reject_empty_trace():
    with pytest.raises(ValueError):
        tracking_metrics(_trace_from([], []))


def test_closed_loop_removes_most_of_the_hysteresis(nominal_trace, open_loop_trace):
    closed = tracking_metrics(nominal_trace)
    opened = tracking_metrics(open_loop_trace)
    assert opened.loop_area > 0.0
    assert closed.loop_area <= 0.1 * opened.loop_area


def test_inner_loop_matches_stepping_the_plant():
    params = SimulationParams(cycle_s=1.0)
    trace = simulate_stoop(1, OPEN_LOOP, GRAVITY_STIFFNESS, params)
    plant = params.plant
    h = 1.0 / params.plant_hz
    times = np.arange(len(trace) * params.substeps + 1) * h
    theta, theta_dot, theta_ddot = stoop_trajectory(times, params.cycle_s, params.theta_max)
    commands = trace.column("I_r")

    state = LoopState()
    replayed = []
    for k in range(len(trace) - 1):
        for j in range(1, params.substeps + 1):
            index = k * params.substeps + j
            kinematics = (theta[index], theta_dot[index], theta_ddot[index])
            state = plant_step(state, commands[k], kinematics, h, plant)
        replayed.append((state.F_a, state.F_prox, state.I, state.omega))

    logged = trace.samples[["F_a", "F_prox", "I", "omega"]].to_numpy()[1:]
    np.testing.assert_allclose(np.array(replayed), logged, rtol=0.0, atol=1e-9)
