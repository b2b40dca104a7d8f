"""
Conception géométrique de la chaîne de disques
Inversion de β(r, d), balayage de l'amplitude de mouvement et vérification
des exigences de mobilité
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..utils.constants import (
    REQUIRED_LATERAL_FLEXION_DEG,
    REQUIRED_SAGITTAL_FLEXION_DEG,
    REQUIRED_TRANSVERSE_ROTATION_DEG,
    STATUS_NO,
    STATUS_REPORTED,
    STATUS_YES,
)
from .mechanism_kinematics import DiscGeometry

# Exigences par défaut : (plan, angle requis en degrés, vérifiée ou seulement rapportée)
DEFAULT_REQUIREMENTS: Dict[str, Tuple[str, float, bool]] = {
    "sagittal_flexion": ("sagittal", REQUIRED_SAGITTAL_FLEXION_DEG, True),
    "lateral_flexion": ("frontal", REQUIRED_LATERAL_FLEXION_DEG, True),
    "transverse_rotation": ("transverse", REQUIRED_TRANSVERSE_ROTATION_DEG, False),
}


def solve_d_for_beta(r: float, beta_target: float) -> float:
    """
    Écart entre disques donnant l'angle maximal visé

    Inversion fermée de β = π − 2·arcsin(r/(r+d/2)) :
    d = 2r·(1/sin((π−β)/2) − 1)

    Args:
        r: Rayon du disque (m)
        beta_target: Angle visé dans (0, π) (rad)

    Returns:
        Écart d (m)

    Raises:
        ValueError: Si r ≤ 0 ou β hors de (0, π)
    """
    if r <= 0:
        raise ValueError("r must be > 0")
    if not 0.0 < beta_target < math.pi:
        raise ValueError("beta_target must lie in (0, pi)")
    return 2.0 * r * (1.0 / math.sin((math.pi - beta_target) / 2.0) - 1.0)


def rom_sweep(
    r_range: Sequence[float],
    d_range: Sequence[float],
    grid: Sequence[int] = (50, 50),
) -> pd.DataFrame:
    """
    Évaluation de β sur une grille (r, d)

    Args:
        r_range: Bornes [r_min, r_max] (m), r_min > 0
        d_range: Bornes [d_min, d_max] (m), d_min > 0
        grid: Nombre de points (n_r, n_d)

    Returns:
        DataFrame (r, d, beta) avec beta en radians, r variant le plus lentement
    """
    n_r, n_d = (int(v) for v in grid)
    if n_r < 1 or n_d < 1:
        raise ValueError("rom_sweep grid is empty")
    for name, bounds in (("r_range", r_range), ("d_range", d_range)):
        low, high = float(bounds[0]), float(bounds[1])
        if not (0.0 < low <= high):
            raise ValueError(f"{name} must satisfy 0 < low <= high")

    r_values = np.linspace(r_range[0], r_range[1], n_r)
    d_values = np.linspace(d_range[0], d_range[1], n_d)
    r_grid, d_grid = np.meshgrid(r_values, d_values, indexing="ij")
    beta = np.pi - 2.0 * np.arcsin(r_grid / (r_grid + d_grid / 2.0))
    return pd.DataFrame({"r": r_grid.ravel(), "d": d_grid.ravel(), "beta": beta.ravel()})


@dataclass(frozen=True)
class RequirementRow:
    """Une exigence de mobilité et la capacité de la chaîne (radians)"""

    requirement: str
    plane: str
    required: float
    capability: float
    asserted: bool
    min_discs: Optional[int]

    @property
    def margin(self) -> float:
        return self.capability - self.required

    @property
    def passed(self) -> Optional[bool]:
        if not self.asserted:
            return None
        return self.margin >= 0.0

    @property
    def status(self) -> str:
        if self.passed is None:
            return STATUS_REPORTED
        return STATUS_YES if self.passed else STATUS_NO


@dataclass(frozen=True)
class RequirementsReport:
    """Rapport de vérification des exigences de mobilité"""

    n: int
    beta: float
    rows: Tuple[RequirementRow, ...]

    @property
    def bending_satisfied(self) -> bool:
        return all(row.passed for row in self.rows if row.asserted)

    def row(self, requirement: str) -> RequirementRow:
        for row in self.rows:
            if row.requirement == requirement:
                return row
        raise KeyError(requirement)

    def to_frame(self) -> pd.DataFrame:
        """Table en degrés pour l'export"""
        return pd.DataFrame(
            {
                "requirement": [row.requirement for row in self.rows],
                "required": [math.degrees(row.required) for row in self.rows],
                "capability": [math.degrees(row.capability) for row in self.rows],
                "margin": [math.degrees(row.margin) for row in self.rows],
                "pass": [row.status for row in self.rows],
                "min_discs": [row.min_discs if row.min_discs is not None else "" for row in self.rows],
            }
        )


def check_requirements(
    geom: DiscGeometry,
    requirements: Optional[Dict[str, Tuple[str, float, bool]]] = None,
) -> RequirementsReport:
    """
    Compare la capacité de la chaîne aux exigences de mobilité

    Les flexions (sagittale, latérale) sont vérifiées contre n·β. La rotation
    transverse est rapportée avec la capacité n·ψ_max sans être vérifiée.
    """
    requirements = requirements or DEFAULT_REQUIREMENTS
    beta = geom.beta
    rows = []
    for name, (plane, required_deg, asserted) in requirements.items():
        required = math.radians(required_deg)
        if plane == "transverse":
            capability = geom.n * geom.axial_limit
            min_discs = None
        else:
            capability = geom.n * beta
            min_discs = math.ceil(required / beta)
        rows.append(RequirementRow(name, plane, required, capability, asserted, min_discs))
    return RequirementsReport(geom.n, beta, tuple(rows))
