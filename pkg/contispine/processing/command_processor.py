"""
Processeur des commandes ContiSpine
Chaque commande produit ses tables de résultats ; le processeur les exporte
(CSV, manifeste, Excel en option)
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ..biomech.biomech_profiles import sample_times, stoop_assist_series, stoop_trajectory
from ..biomech.biomech_reduction import reduction_report
from ..config.scenario_config import ScenarioConfig
from ..control.control_metrics import tracking_metrics
from ..control.control_simulator import simulate_stoop
from ..exporters.export_csv import CsvExporter, ResultTable
from ..exporters.export_excel import ExcelExporter
from ..mechanism.mechanism_cable import bend_from_retraction, cable_retraction, max_retraction
from ..mechanism.mechanism_design import check_requirements, rom_sweep, solve_d_for_beta
from ..mechanism.mechanism_kinematics import JointAngles
from ..mechanism.mechanism_statics import disc_force_table, free_body_residuals, propagate_chain
from ..utils.constants import STATUS_NO, STATUS_YES

FORCE_UNITS = {"F_e": "N", "F_p": "N", "F_s": "N", "F_exo": "N"}


def cmd_design(config: ScenarioConfig) -> List[ResultTable]:
    """Balayage de β sur (r, d), vérification des exigences et inversion de d"""
    geom = config.geometry(calibrate=False)
    design = config.get("design")

    sweep = rom_sweep(design["r_range"], design["d_range"], design["grid"])
    sweep["beta_deg"] = np.degrees(sweep.pop("beta"))

    report = check_requirements(geom, config.requirements())

    beta_target = math.radians(design["beta_target_deg"])
    d_solved = solve_d_for_beta(geom.r, beta_target)
    design_point = pd.DataFrame(
        {
            "r": [geom.r],
            "d": [geom.d],
            "n": [geom.n],
            "beta_deg": [math.degrees(geom.beta)],
            "beta_target_deg": [design["beta_target_deg"]],
            "d_for_target": [d_solved],
        }
    )
    return [
        ResultTable("design_sweep", sweep, {"r": "m", "d": "m", "beta_deg": "deg"}),
        ResultTable(
            "requirements",
            report.to_frame(),
            {"required": "deg", "capability": "deg", "margin": "deg"},
        ),
        ResultTable(
            "design_point",
            design_point,
            {"r": "m", "d": "m", "beta_deg": "deg", "beta_target_deg": "deg", "d_for_target": "m"},
        ),
    ]


def cmd_statics(config: ScenarioConfig, F_c: Optional[float] = None) -> List[ResultTable]:
    """Efforts par disque, réaction de base et résidu de l'équilibre par corps libre"""
    geom = config.geometry()
    load = config.tendon_load(geom, F_c)
    solution = propagate_chain(load, geom.n)
    angles = JointAngles.uniform(geom.n, phi=math.radians(config.get("statics.bend_deg")))

    discs = disc_force_table(solution, load, geom.n, angles)
    summary = {
        "n": [geom.n],
        "parity": [solution.parity],
        "F_c": [load.F_c],
        "r1": [load.r1],
        "r2": [load.r2],
        "alpha_deg": [math.degrees(solution.alpha)],
        "F_an_distal": [solution.F_an_distal],
        "F_a_intermediate": [solution.F_a_intermediate],
        "F_r": [solution.F_r],
        "F_a0": [solution.F_a0],
    }
    if solution.M is not None:
        summary["M"] = [solution.M]
    summary["max_residual"] = [free_body_residuals(solution, load, geom.n, angles)]

    units = {
        "cable_force": "N",
        "backbone_force": "N",
        "contact_force": "N",
        "moment": "N.m",
        "residual": "N|N.m",
    }
    summary_units = {
        "F_c": "N",
        "r1": "m",
        "r2": "m",
        "alpha_deg": "deg",
        "F_an_distal": "N",
        "F_a_intermediate": "N",
        "F_r": "N",
        "F_a0": "N",
        "M": "N.m",
        "max_residual": "N|N.m",
    }
    summary_frame = pd.DataFrame(summary)
    return [
        ResultTable("statics_discs", discs, {k: v for k, v in units.items() if k in discs.columns}),
        ResultTable(
            "statics_summary",
            summary_frame,
            {k: v for k, v in summary_units.items() if k in summary_frame.columns},
        ),
    ]


def biomech_report(config: ScenarioConfig):
    """Rapport de réduction le long d'un cycle de stoop échantillonné"""
    anthro = config.anthropometrics()
    arms = config.moment_arms(anthro)
    times = sample_times(config.cycle_s, int(config.get("biomech.samples_per_cycle")))
    theta, _, _ = stoop_trajectory(times, config.cycle_s, config.theta_max)
    F_exo = stoop_assist_series(times, config.cycle_s, float(config.get("biomech.F_max")))
    return times, reduction_report(anthro, arms, theta, F_exo)


def cmd_biomech(config: ScenarioConfig) -> List[ResultTable]:
    """Séries temporelles avec et sans assistance, puis table des réductions"""
    times, report = biomech_report(config)
    without, assisted = report.without, report.assisted
    series = pd.DataFrame(
        {
            "t": times,
            "theta_deg": np.degrees(assisted.theta),
            "F_exo": assisted.F_exo,
            "F_e_without": without.F_e,
            "F_p_without": without.F_p,
            "F_s_without": without.F_s,
            "F_e_with": assisted.F_e,
            "F_p_with": assisted.F_p,
            "F_s_with": assisted.F_s,
            "infeasible": np.where(assisted.infeasible_mask(), STATUS_YES, STATUS_NO),
        }
    )
    series_units = {column: "N" for column in series.columns if column.startswith("F_")}
    series_units.update({"t": "s", "theta_deg": "deg"})
    if report.meets_compression_target():
        print(f"✅ Compression réduite de {report['F_p'].reduction_percent:.1f} %")
    else:
        print(f"⚠️ Compression réduite de {report['F_p'].reduction_percent:.1f} % seulement")
    return [
        ResultTable("biomech_series", series, series_units),
        ResultTable(
            "biomech_reduction",
            report.to_frame(),
            {"peak_without": "N", "peak_with": "N", "reduction_N": "N", "reduction_percent": "%"},
        ),
    ]


METRIC_UNITS = {
    "rms_N": "N",
    "peak_N": "N",
    "percent_of_peak": "%",
    "loop_area": "N^2",
    "dissipation": "J",
}


def simulation_metrics(config: ScenarioConfig, progress: bool = False):
    trace = simulate_stoop(
        config.cycles,
        config.controller,
        config.reference,
        config.simulation_params(),
        progress=progress,
    )
    return trace, tracking_metrics(trace)


def cmd_simulate(config: ScenarioConfig) -> List[ResultTable]:
    """Trace de la boucle de commande et indicateurs de suivi"""
    trace, metrics = simulation_metrics(config, progress=config.progress)
    samples = trace.samples
    exported = pd.DataFrame(
        {
            "t": samples["t"],
            "theta_a": np.degrees(samples["theta_a"]),
            "F_r": samples["F_r"],
            "F_a": samples["F_a"],
            "I": samples["I"],
            "omega": samples["omega"],
            "payout": samples["payout"],
            "F_prox": samples["F_prox"],
            "F_k": samples["F_k"],
            "F_b": samples["F_b"],
            "I_r": samples["I_r"],
            "omega_r": samples["omega_r"],
            "v_slide": samples["v_slide"],
        }
    )
    trace_units = {
        "t": "s",
        "theta_a": "deg",
        "F_r": "N",
        "F_a": "N",
        "I": "A",
        "omega": "rad/s",
        "payout": "m",
        "F_prox": "N",
        "F_k": "N",
        "F_b": "N",
        "I_r": "A",
        "omega_r": "rad/s",
        "v_slide": "m/s",
    }
    metrics_frame = metrics.to_frame()
    return [
        ResultTable("trace", exported, trace_units),
        ResultTable("metrics", metrics_frame, METRIC_UNITS),
    ]


def cmd_steer(config: ScenarioConfig) -> List[ResultTable]:
    """Correspondance rétraction → flexion après calibration du rayon des trous"""
    geom = config.geometry()
    pairs = config.calibration_pairs()
    upper = min(max(retraction for retraction, _ in pairs), max_retraction(geom))
    steps = int(config.get("steer.retraction_steps"))
    retractions = np.linspace(0.0, upper, steps + 1)
    bends = np.array([bend_from_retraction(float(value), geom) for value in retractions])
    steer = pd.DataFrame(
        {
            "retraction_cm": retractions * 100.0,
            "bend_deg": np.degrees(bends),
            "bend_per_joint_deg": np.degrees(bends / geom.n),
        }
    )
    calibration = pd.DataFrame(
        {
            "rho": [geom.rho] * len(pairs),
            "retraction_cm": [retraction * 100.0 for retraction, _ in pairs],
            "measured_bend_deg": [math.degrees(bend) for _, bend in pairs],
            "predicted_retraction_cm": [
                100.0 * cable_retraction(JointAngles.uniform(geom.n, phi=bend / geom.n), geom)
                for _, bend in pairs
            ],
        }
    )
    return [
        ResultTable(
            "steer",
            steer,
            {"retraction_cm": "cm", "bend_deg": "deg", "bend_per_joint_deg": "deg"},
        ),
        ResultTable(
            "steer_calibration",
            calibration,
            {
                "rho": "m",
                "retraction_cm": "cm",
                "measured_bend_deg": "deg",
                "predicted_retraction_cm": "cm",
            },
        ),
    ]


COMMANDS: Dict[str, Callable[..., List[ResultTable]]] = {
    "design": cmd_design,
    "statics": cmd_statics,
    "biomech": cmd_biomech,
    "simulate": cmd_simulate,
    "steer": cmd_steer,
}


class CommandProcessor:
    """Exécute une commande et exporte ses tables"""

    def __init__(self, config: ScenarioConfig):
        self.config = config
        self.written: List[Path] = []

    def run(self, command: str, tables: List[ResultTable]) -> List[Path]:
        """
        Exporte les tables d'une commande

        Args:
            command: Nom de la commande
            tables: Tables produites

        Returns:
            Chemins des fichiers écrits
        """
        exporter = CsvExporter(Path(self.config.output_dir))
        print(f"📊 Export des résultats de '{command}'...")
        self.written = exporter.write_tables(tables)
        if self.config.excel:
            workbook = ExcelExporter.export_tables(tables, exporter.export_dir / f"{command}.xlsx")
            if workbook:
                self.written.append(Path(workbook))
        if self.config.manifest:
            exporter.write_manifest(command, self.config.digest(), self.written)
        return self.written
