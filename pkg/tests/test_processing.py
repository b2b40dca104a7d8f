from __future__ import annotations

import numpy as np
import pytest

from contispine.exceptions import ConfigError, SimulationInstabilityError
from contispine.processing.command_processor import (
    CommandProcessor,
    cmd_biomech,
    cmd_design,
    cmd_simulate,
    cmd_statics,
    cmd_steer,
)
from contispine.processing.sweep_processor import SweepProcessor, cmd_sweep
from contispine.utils.constants import MANIFEST_FILENAME, STATUS_NO, STATUS_YES


def _by_name(tables):
    return {table.name: table for table in tables}


def test_design_tables(make_scenario):
    tables = _by_name(cmd_design(make_scenario()))
    assert set(tables) == {"design_sweep", "requirements", "design_point"}
    assert len(tables["design_sweep"].frame) == 2500
    assert tables["design_sweep"].units["beta_deg"] == "deg"
    point = tables["design_point"].frame.iloc[0]
    assert point["beta_deg"] == pytest.approx(20.0, abs=0.05)
    assert point["d_for_target"] == pytest.approx(0.00216, abs=1e-5)


def test_design_works_without_hole_calibration(make_scenario):
    requirements = _by_name(cmd_design(make_scenario("geometry.n=3")))["requirements"].frame
    assert requirements.set_index("requirement").loc["sagittal_flexion", "pass"] == STATUS_NO
    requirements = _by_name(cmd_design(make_scenario("geometry.n=6")))["requirements"].frame
    assert requirements.set_index("requirement").loc["sagittal_flexion", "pass"] == STATUS_YES


@pytest.mark.parametrize("n, has_moment", [(20, True), (19, False)])
def test_statics_summary_follows_parity(make_scenario, n, has_moment):
    tables = _by_name(cmd_statics(make_scenario(f"geometry.n={n}", "statics.r1=0.03", "statics.r2=0.03")))
    summary = tables["statics_summary"].frame.iloc[0]
    assert summary["F_a0"] == pytest.approx(282.84, abs=0.01)
    assert ("M" in summary.index) is has_moment
    assert summary["max_residual"] < 1e-9 * 200.0
    assert len(tables["statics_discs"].frame) == n + 1


def test_statics_tension_override(make_scenario):
    summary = _by_name(cmd_statics(make_scenario("statics.r1=0.03", "statics.r2=0.03"), F_c=100.0))
    assert summary["statics_summary"].frame.iloc[0]["F_an_distal"] == pytest.approx(100.0)


def test_biomech_tables(make_scenario):
    tables = _by_name(cmd_biomech(make_scenario("biomech.samples_per_cycle=400")))
    series = tables["biomech_series"].frame
    assert len(series) == 401
    assert set(series["infeasible"]) == {STATUS_NO}
    shear_drop = series["F_s_without"] - series["F_s_with"]
    np.testing.assert_allclose(shear_drop, series["F_exo"], rtol=0.0, atol=1e-9)
    reduction = tables["biomech_reduction"].frame.set_index("force")
    assert reduction.loc["F_p", "reduction_percent"] >= 30.0


def test_biomech_without_assistance_changes_nothing(make_scenario):
    series = _by_name(cmd_biomech(make_scenario("biomech.F_max=0.0")))["biomech_series"].frame
    assert (series["F_exo"] == 0.0).all()
    for force in ("F_e", "F_p", "F_s"):
        assert series[f"{force}_with"].tolist() == series[f"{force}_without"].tolist()


def test_steer_table_ends_at_reference_pair(make_scenario):
    tables = _by_name(cmd_steer(make_scenario()))
    steer = tables["steer"].frame
    assert steer["retraction_cm"].iloc[0] == 0.0
    assert steer["bend_deg"].iloc[0] == 0.0
    assert steer["retraction_cm"].iloc[-1] == pytest.approx(5.23)
    assert steer["bend_deg"].iloc[-1] == pytest.approx(100.0, abs=1.0)
    assert steer["bend_deg"].is_monotonic_increasing
    calibration = tables["steer_calibration"].frame.iloc[0]
    assert calibration["predicted_retraction_cm"] == pytest.approx(5.23, abs=1e-4)


def test_simulate_tables_and_export(make_scenario, tmp_path):
    config = make_scenario("run.cycles=1", "trajectory.cycle_s=2")
    tables = cmd_simulate(config)
    trace = _by_name(tables)["trace"]
    assert trace.columns[:7] == ["t", "theta_a", "F_r", "F_a", "I", "omega", "payout"]
    assert len(trace.frame) == 2000
    files = CommandProcessor(config).run("simulate", tables)
    names = sorted(path.name for path in files)
    assert names == ["metrics.csv", "trace.csv"]
    assert (tmp_path / "out" / MANIFEST_FILENAME).exists()


def test_excel_export_is_optional(make_scenario, tmp_path):
    config = make_scenario("run.excel=true", "run.manifest=false")
    files = CommandProcessor(config).run("design", cmd_design(config))
    assert any(path.suffix == ".xlsx" for path in files)
    assert not (tmp_path / "out" / MANIFEST_FILENAME).exists()


def test_sweep_rows_follow_value_order(make_scenario):
    config = make_scenario("statics.r1=0.03", "statics.r2=0.03")
    [table] = SweepProcessor(config, max_workers=3).run("statics.F_c", [300.0, 100.0, 200.0], "statics")
    frame = table.frame
    assert frame.columns[0] == "statics.F_c"
    assert frame["statics.F_c"].tolist() == [300.0, 100.0, 200.0]
    assert frame["F_an_distal"].tolist() == pytest.approx([300.0, 100.0, 200.0])


def test_simulation_sweep(make_scenario):
    config = make_scenario("run.cycles=1", "trajectory.cycle_s=2")
    [table] = SweepProcessor(config).run("plant.mu_theta", [0.0, 0.3], "simulate")
    assert table.frame["plant.mu_theta"].tolist() == [0.0, 0.3]
    assert set(table.frame.columns) >= {"rms_N", "loop_area", "slope", "r2"}


@pytest.mark.parametrize(
    "path, values, target",
    [
        ("plant.unknown", [1.0], "simulate"),
        ("plant.mu_theta", [], "simulate"),
        ("geometry.e", [1.0], "statics"),
        ("plant.mu_theta", [0.1], "design"),
        ("plant.mu_theta", ["high"], "simulate"),
    ],
)
def test_sweep_rejects_invalid_requests(make_scenario, path, values, target):
    with pytest.raises(ConfigError):
        SweepProcessor(make_scenario()).run(path, values, target)


def test_biomech_sweep_reductions_grow_with_assistance(make_scenario):
    values = [0.0, 50.0, 100.0, 150.0, 200.0, 250.0]
    [table] = cmd_sweep(make_scenario(), "biomech.F_max", values, "biomech", max_workers=2)
    frame = table.frame
    assert frame["biomech.F_max"].tolist() == values
    for column in ("F_e_reduction_N", "F_p_reduction_N", "F_s_reduction_N"):
        assert frame[column].is_monotonic_increasing
    assert frame["F_p_reduction_N"].iloc[0] == 0.0


def test_sweep_failure_reaches_the_caller_with_its_tick(make_scenario):
    config = make_scenario("run.cycles=1", "trajectory.cycle_s=2")
    with pytest.raises(SimulationInstabilityError) as excinfo:
        cmd_sweep(config, "plant.force_limit", [10.0], "simulate", max_workers=1)
    assert excinfo.value.tick is not None
