from __future__ import annotations

import math

import numpy as np
import pytest

from contispine.biomech.biomech_lumbar_model import (
    Anthropometrics,
    MomentArms,
    default_moment_arms,
    lumbar_force_series,
    lumbar_forces,
)
from contispine.biomech.biomech_profiles import (
    assist_profile,
    sample_times,
    stoop_assist_series,
    stoop_trajectory,
)
from contispine.biomech.biomech_reduction import reduction_report

THETA_70 = math.radians(70.0)


def _defaults():
    anthro = Anthropometrics()
    return anthro, default_moment_arms(anthro)


def _stoop_report(F_max: float):
    anthro, arms = _defaults()
    times = sample_times(8.0, 800)
    theta, _, _ = stoop_trajectory(times)
    return reduction_report(anthro, arms, theta, stoop_assist_series(times, 8.0, F_max))


def test_unloaded_trunk_has_no_spine_forces():
    anthro = Anthropometrics(m_body=0.0, m_load=0.0)
    forces = lumbar_forces(anthro, default_moment_arms(anthro), THETA_70, 0.0)
    assert (forces.F_e, forces.F_p, forces.F_s) == (0.0, 0.0, 0.0)


def test_force_sensitivities_are_exact():
    anthro, arms = _defaults()
    low = lumbar_forces(anthro, arms, 0.6, 100.0)
    high = lumbar_forces(anthro, arms, 0.6, 101.0)
    ratio = -arms.D_exo / arms.D_e
    assert high.F_s - low.F_s == pytest.approx(-1.0, rel=1e-9)
    assert high.F_e - low.F_e == pytest.approx(ratio, rel=1e-9)
    assert high.F_p - low.F_p == pytest.approx(ratio, rel=1e-9)


def test_moment_balance_is_reconstructed():
    anthro, arms = _defaults()
    for theta in np.linspace(0.0, math.pi / 2, 7):
        forces = lumbar_forces(anthro, arms, theta, 120.0)
        residual = (
            forces.F_e * arms.D_e
            + forces.F_exo * arms.D_exo
            - anthro.m_load * anthro.g * arms.D_load(theta)
            - anthro.m_body * anthro.g * arms.D_body(theta)
        )
        assert residual == pytest.approx(0.0, abs=1e-9)


def test_assistance_at_full_flexion_lowers_every_force():
    anthro, arms = _defaults()
    without = lumbar_forces(anthro, arms, THETA_70, 0.0)
    assisted = lumbar_forces(anthro, arms, THETA_70, 250.0)
    assert assisted.F_e < without.F_e
    assert assisted.F_p < without.F_p
    assert assisted.F_s < without.F_s
    assert without.F_s - assisted.F_s == pytest.approx(250.0, abs=1e-9)


def test_more_assistance_never_raises_a_force():
    anthro, arms = _defaults()
    theta = np.linspace(0.0, math.pi / 2, 31)
    previous = lumbar_force_series(anthro, arms, theta, 0.0)
    for F_exo in (50.0, 100.0, 200.0, 400.0):
        current = lumbar_force_series(anthro, arms, theta, F_exo)
        for name in ("F_e", "F_p", "F_s"):
            assert np.all(getattr(current, name) <= getattr(previous, name))
        previous = current


def test_upright_assistance_is_flagged_infeasible():
    anthro, arms = _defaults()
    forces = lumbar_forces(anthro, arms, 0.0, 50.0)
    assert forces.F_s == pytest.approx(-50.0)
    assert forces.negative_shear
    assert forces.infeasible
    series = lumbar_force_series(anthro, arms, np.array([0.0, 1.0]), np.array([50.0, 50.0]))
    assert series.infeasible_mask().tolist() == [True, False]


@pytest.mark.parametrize("theta, F_exo", [(-0.1, 0.0), (math.pi / 2 + 0.1, 0.0), (0.5, -1.0)])
def test_lumbar_forces_reject_invalid_inputs(theta, F_exo):
    anthro, arms = _defaults()
    with pytest.raises(ValueError):
        lumbar_forces(anthro, arms, theta, F_exo)


def test_moment_arms_must_stay_non_negative():
    with pytest.raises(ValueError, match="load_arm"):
        MomentArms(0.05, 0.3, lambda theta: np.sin(theta) - 0.5, lambda theta: np.sin(theta), 0.3)
    with pytest.raises(ValueError):
        MomentArms(0.0, 0.3, np.sin, np.sin, 0.3)


def test_r_l_defaults_to_exoskeleton_arm():
    anthro, arms = _defaults()
    assert arms.r_l == arms.D_exo
    assert default_moment_arms(anthro, r_l=0.25).r_l == 0.25


def test_stoop_trajectory_endpoints():
    assert stoop_trajectory(0.0)[:2] == (0.0, 0.0)
    theta, theta_dot, _ = stoop_trajectory(4.0)
    assert theta == pytest.approx(THETA_70)
    assert theta_dot == pytest.approx(0.0, abs=1e-12)
    assert stoop_trajectory(8.0)[0] == pytest.approx(0.0, abs=1e-12)


def test_stoop_trajectory_derivatives_match_finite_differences():
    h = 1e-4
    for t in (0.3, 1.7, 3.2, 5.5, 7.1):
        ahead = stoop_trajectory(t + h)
        behind = stoop_trajectory(t - h)
        _, theta_dot, theta_ddot = stoop_trajectory(t)
        assert (ahead[0] - behind[0]) / (2 * h) == pytest.approx(theta_dot, abs=1e-6)
        assert (ahead[1] - behind[1]) / (2 * h) == pytest.approx(theta_ddot, abs=1e-6)


def test_stoop_trajectory_is_symmetric_about_full_flexion():
    tau = np.linspace(0.0, 4.0, 9)
    np.testing.assert_allclose(stoop_trajectory(4.0 - tau)[0], stoop_trajectory(4.0 + tau)[0], atol=1e-12)


def test_stoop_trajectory_rejects_negative_time():
    with pytest.raises(ValueError):
        stoop_trajectory(-0.1)


def test_assist_profile_shape():
    assert assist_profile(0.0) == pytest.approx(250.0)
    assert assist_profile(2.0) == pytest.approx(125.0)
    assert assist_profile(4.0) == pytest.approx(0.0, abs=1e-12)
    assert assist_profile(4.5) == 0.0
    assert assist_profile(-0.5) == 0.0
    samples = assist_profile(np.linspace(0.0, 4.0, 101))
    assert np.all(np.diff(samples) <= 0)


def test_stoop_assistance_peaks_at_full_flexion():
    assert stoop_assist_series(4.0, 8.0, 250.0) == pytest.approx(250.0)
    assert stoop_assist_series(0.0, 8.0, 250.0) == pytest.approx(0.0, abs=1e-12)
    assert stoop_assist_series(2.0, 8.0, 250.0) == pytest.approx(125.0)
    assert stoop_assist_series(12.0, 8.0, 250.0) == pytest.approx(250.0)


def test_sample_times_include_both_ends():
    times = sample_times(8.0, 800, 2)
    assert times[0] == 0.0
    assert times[-1] == pytest.approx(16.0)
    assert len(times) == 1601


def test_no_assistance_means_no_reduction():
    report = _stoop_report(0.0)
    assert report.percentages == {"F_e": 0.0, "F_p": 0.0, "F_s": 0.0}


def test_shear_reduction_equals_assistance_when_peaks_coincide():
    report = _stoop_report(100.0)
    assert report["F_s"].reduction_abs == pytest.approx(100.0, abs=1e-9)


def test_reductions_grow_with_peak_assistance():
    reports = [_stoop_report(F_max) for F_max in (50.0, 100.0, 150.0, 200.0, 250.0)]
    for name in ("F_e", "F_p", "F_s"):
        values = [report[name].reduction_percent for report in reports]
        assert values[0] > 0
        assert np.all(np.diff(values) > 0)


def test_default_assistance_meets_compression_target():
    report = _stoop_report(250.0)
    assert report.meets_compression_target()
    frame = report.to_frame()
    assert frame["force"].tolist() == ["F_e", "F_p", "F_s"]
    assert (frame["reduction_percent"] > 0).all()
