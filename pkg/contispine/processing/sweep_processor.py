"""
Balayage d'un paramètre scalaire de la configuration
Exécutions indépendantes dans des processus séparés, lignes rendues dans l'ordre des valeurs
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List, Sequence

import pandas as pd
from tqdm import tqdm

from ..config.scenario_config import ScenarioConfig
from ..exceptions import ConfigError
from ..exporters.export_csv import ResultTable
from ..mechanism.mechanism_kinematics import JointAngles
from ..mechanism.mechanism_statics import free_body_residuals, propagate_chain
from .command_processor import METRIC_UNITS, biomech_report, simulation_metrics

SWEEP_TARGETS = ("simulate", "biomech", "statics")
DEFAULT_MAX_WORKERS = 4


def _simulate_row(config: ScenarioConfig) -> Dict[str, Any]:
    _, metrics = simulation_metrics(config)
    return metrics.to_frame().iloc[0].to_dict()


def _biomech_row(config: ScenarioConfig) -> Dict[str, Any]:
    _, report = biomech_report(config)
    row: Dict[str, Any] = {}
    for reduction in report.reductions:
        row[f"{reduction.force}_reduction_N"] = reduction.reduction_abs
        row[f"{reduction.force}_reduction_percent"] = reduction.reduction_percent
    row["meets_compression_target"] = report.meets_compression_target()
    return row


def _statics_row(config: ScenarioConfig) -> Dict[str, Any]:
    geom = config.geometry()
    load = config.tendon_load(geom)
    solution = propagate_chain(load, geom.n)
    angles = JointAngles.uniform(geom.n, phi=math.radians(config.get("statics.bend_deg")))
    return {
        "F_an_distal": solution.F_an_distal,
        "F_a_intermediate": solution.F_a_intermediate,
        "F_r": solution.F_r,
        "F_a0": solution.F_a0,
        "M": solution.M if solution.M is not None else 0.0,
        "max_residual": free_body_residuals(solution, load, geom.n, angles),
    }


TARGET_RUNNERS: Dict[str, Callable[[ScenarioConfig], Dict[str, Any]]] = {
    "simulate": _simulate_row,
    "biomech": _biomech_row,
    "statics": _statics_row,
}

TARGET_UNITS = {
    "simulate": METRIC_UNITS,
    "biomech": {
        "F_e_reduction_N": "N",
        "F_p_reduction_N": "N",
        "F_s_reduction_N": "N",
        "F_e_reduction_percent": "%",
        "F_p_reduction_percent": "%",
        "F_s_reduction_percent": "%",
    },
    "statics": {
        "F_an_distal": "N",
        "F_a_intermediate": "N",
        "F_r": "N",
        "F_a0": "N",
        "M": "N.m",
        "max_residual": "N|N.m",
    },
}


class SweepProcessor:
    """Exécute un balayage sur un chemin pointé de la configuration"""

    def __init__(self, config: ScenarioConfig, max_workers: int = DEFAULT_MAX_WORKERS):
        self.config = config
        self.max_workers = max_workers

    def prepare(self, path: str, values: Sequence[Any]) -> List[ScenarioConfig]:
        """
        Scénarios du balayage, validés avant toute exécution

        Raises:
            ConfigError: Chemin inconnu, valeur non scalaire ou liste vide
        """
        if not values:
            raise ConfigError("sweep needs at least one value")
        current = self.config.get(path)
        if isinstance(current, (dict, list)):
            raise ConfigError(f"{path} is not a scalar parameter")
        return [self.config.with_value(path, value) for value in values]

    def run(self, path: str, values: Sequence[Any], target: str = "simulate") -> List[ResultTable]:
        """
        Une ligne de résultats par valeur, dans l'ordre des valeurs

        Args:
            path: Chemin pointé du paramètre (ex. plant.mu_theta)
            values: Valeurs à évaluer
            target: "simulate", "biomech" ou "statics"

        Returns:
            Table "sweep"
        """
        if target not in TARGET_RUNNERS:
            raise ConfigError(f"sweep target must be one of {list(SWEEP_TARGETS)}")
        scenarios = self.prepare(path, values)
        runner = TARGET_RUNNERS[target]
        print(f"🚀 Balayage de {path} sur {len(values)} valeurs ({target})")
        with ProcessPoolExecutor(max_workers=self.max_workers) as pool:
            rows = list(
                tqdm(
                    pool.map(runner, scenarios),
                    total=len(scenarios),
                    desc="📊 Balayage",
                    disable=not self.config.progress,
                )
            )
        frame = pd.DataFrame([{path: value, **row} for value, row in zip(values, rows)])
        return [ResultTable("sweep", frame, dict(TARGET_UNITS[target]))]


def cmd_sweep(
    config: ScenarioConfig,
    path: str,
    values: Sequence[Any],
    target: str = "simulate",
    max_workers: int = DEFAULT_MAX_WORKERS,
) -> List[ResultTable]:
    """Commande sweep : même forme que les autres commandes"""
    return SweepProcessor(config, max_workers).run(path, values, target)
