"""
Comparaison avec et sans exosquelette
Réduction des pics de force musculaire, de compression et de cisaillement
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from ..utils.constants import COMPRESSION_REDUCTION_TARGET_PERCENT
from .biomech_lumbar_model import Anthropometrics, MomentArms, SpineForces, lumbar_force_series

FORCE_NAMES = ("F_e", "F_p", "F_s")


@dataclass(frozen=True)
class ForceReduction:
    """Pic d'un effort sur la trajectoire, sans puis avec assistance"""

    force: str
    peak_without: float
    peak_with: float
    infeasible_samples: int

    @property
    def reduction_abs(self) -> float:
        return self.peak_without - self.peak_with

    @property
    def reduction_percent(self) -> float:
        if self.peak_without <= 0:
            return 0.0
        return 100.0 * self.reduction_abs / self.peak_without


@dataclass(frozen=True)
class ReductionReport:
    """Réductions par effort et séries complètes pour l'export"""

    reductions: Tuple[ForceReduction, ...]
    without: SpineForces
    assisted: SpineForces

    def __getitem__(self, force: str) -> ForceReduction:
        for reduction in self.reductions:
            if reduction.force == force:
                return reduction
        raise KeyError(force)

    @property
    def percentages(self) -> Dict[str, float]:
        return {reduction.force: reduction.reduction_percent for reduction in self.reductions}

    def meets_compression_target(self, target_percent: float = COMPRESSION_REDUCTION_TARGET_PERCENT) -> bool:
        """Vrai si le pic de compression baisse d'au moins target_percent"""
        return self["F_p"].reduction_percent >= target_percent

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "force": [r.force for r in self.reductions],
                "peak_without": [r.peak_without for r in self.reductions],
                "peak_with": [r.peak_with for r in self.reductions],
                "reduction_N": [r.reduction_abs for r in self.reductions],
                "reduction_percent": [r.reduction_percent for r in self.reductions],
                "infeasible_samples": [r.infeasible_samples for r in self.reductions],
            }
        )


def reduction_report(
    anthro: Anthropometrics,
    arms: MomentArms,
    theta: np.ndarray,
    F_exo: np.ndarray,
) -> ReductionReport:
    """
    Compare les pics sur la trajectoire avec et sans assistance

    Args:
        anthro: Masses et longueur du tronc
        arms: Bras de levier
        theta: Trajectoire de flexion échantillonnée (rad)
        F_exo: Assistance aux mêmes instants (N)

    Returns:
        ReductionReport ; les échantillons à effort négatif sont comptés
        comme infaisables, leurs valeurs ne sont pas modifiées
    """
    theta = np.asarray(theta, dtype=float)
    if theta.size == 0:
        raise ValueError("reduction_report needs a non-empty trajectory")
    without = lumbar_force_series(anthro, arms, theta, np.zeros_like(theta))
    assisted = lumbar_force_series(anthro, arms, theta, F_exo)

    reductions = []
    for name in FORCE_NAMES:
        with_values = np.asarray(getattr(assisted, name))
        reductions.append(
            ForceReduction(
                force=name,
                peak_without=float(np.max(getattr(without, name))),
                peak_with=float(np.max(with_values)),
                infeasible_samples=int(np.count_nonzero(with_values < 0)),
            )
        )
    return ReductionReport(tuple(reductions), without, assisted)
