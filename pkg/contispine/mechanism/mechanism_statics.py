"""
Statique du mécanisme sous-actionné (un câble, un squelette élastique)
Propagation de la tension du câble dans la chaîne de disques, réaction de la
base selon la parité et oracle d'équilibre par corps libre
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from ..exceptions import NonPlanarConfigurationError
from .mechanism_kinematics import DiscGeometry, JointAngles


@dataclass(frozen=True)
class TendonLoad:
    """Tension du câble et bras de levier autour du centre de l'articulation"""

    F_c: float
    r1: float
    r2: float

    def __post_init__(self):
        if not self.F_c >= 0:
            raise ValueError("F_c must be >= 0")
        if not self.r1 > 0:
            raise ValueError("r1 must be > 0")
        if not self.r2 > 0:
            raise ValueError("r2 must be > 0")


@dataclass(frozen=True)
class TendonSolution:
    """Efforts propagés dans la chaîne (valeurs communes aux disques intermédiaires)"""

    alpha: float
    F_an_distal: float
    F_a_intermediate: float
    F_r: float
    F_a0: float
    M: Optional[float]
    parity: str
    n: int


def distal_disc_balance(load: TendonLoad) -> Tuple[float, float, float]:
    """
    Équilibre du disque distal : F_c, F_an et F_rn concourants en P_n

    Returns:
        (alpha, F_an, F_rn) avec alpha = arctan(r1/r2), F_an = F_c·tan α,
        F_rn = F_c·sec α
    """
    if load.r2 == 0:
        raise ValueError("r2 must be non-zero")
    alpha = math.atan2(load.r1, load.r2)
    F_an = load.F_c * load.r1 / load.r2
    F_rn = load.F_c * math.hypot(load.r1, load.r2) / load.r2
    return alpha, F_an, F_rn


def base_reaction(sol: TendonSolution, load: TendonLoad, n: int) -> Tuple[float, Optional[float]]:
    """
    Réaction du squelette sur la base

    Nombre impair de disques : force F_a0 seule. Nombre pair : force F_a0 et
    moment M = 2·F_a0·r2.
    """
    F_a0 = load.F_c * math.hypot(load.r1, load.r2) / load.r2
    if n % 2 == 0:
        return F_a0, 2.0 * F_a0 * load.r2
    return F_a0, None


def propagate_chain(load: TendonLoad, n: int) -> TendonSolution:
    """
    Propage la tension du câble du disque distal jusqu'à la base

    F_a(intermédiaire) = 2·F_an et F_r commun à tous les contacts.

    Args:
        load: Tension et bras de levier
        n: Nombre de disques (≥ 2)

    Returns:
        Solution complète, réaction de base comprise
    """
    if n < 2:
        raise ValueError("propagate_chain needs n >= 2")
    alpha, F_an, F_rn = distal_disc_balance(load)
    partial = TendonSolution(
        alpha=alpha,
        F_an_distal=F_an,
        F_a_intermediate=2.0 * F_an,
        F_r=F_rn,
        F_a0=0.0,
        M=None,
        parity="even" if n % 2 == 0 else "odd",
        n=n,
    )
    F_a0, moment = base_reaction(partial, load, n)
    return TendonSolution(
        alpha=alpha,
        F_an_distal=F_an,
        F_a_intermediate=2.0 * F_an,
        F_r=F_rn,
        F_a0=F_a0,
        M=moment,
        parity=partial.parity,
        n=n,
    )


def moment_arms_from_geometry(geom: DiscGeometry, bend_per_joint: float) -> Tuple[float, float]:
    """
    Bras de levier (r1, r2) déduits de la géométrie

    Construction à contact symétrique : r1 = rho·cos(φ/2), r2 = (l/2)·cos(φ/2).
    Choix de modélisation, les bras peuvent aussi être donnés directement.
    """
    if abs(bend_per_joint) > geom.beta + 1e-12:
        raise ValueError("bend_per_joint exceeds the joint limit beta")
    shrink = math.cos(bend_per_joint / 2.0)
    return geom.rho * shrink, (geom.l / 2.0) * shrink


def _cross2d(point: np.ndarray, force: np.ndarray) -> float:
    return float(point[0] * force[1] - point[1] * force[0])


def _rotation2d(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _body_loads(sol: TendonSolution, load: TendonLoad, n: int, k: int):
    """
    Efforts (point, force) et couples du corps k dans son repère local (y, z)

    Origine à l'articulation inférieure du corps, articulation supérieure en
    (0, 2·r2), centre du disque en (0, r2). Le côté des contacts alterne d'un
    disque à l'autre : s_k = (−1)^(n−k).
    """
    r1, r2 = load.r1, load.r2
    sin_a, cos_a = math.sin(sol.alpha), math.cos(sol.alpha)
    top = np.array([0.0, 2.0 * r2])
    center = np.array([0.0, r2])
    s_k = 1.0 if (n - k) % 2 == 0 else -1.0

    def contact(side: float) -> np.ndarray:
        return sol.F_r * np.array([side * sin_a, cos_a])

    forces = []
    couples = []
    if k == 0:
        s_1 = 1.0 if (n - 1) % 2 == 0 else -1.0
        forces.append((top, -contact(s_1)))
        direction = np.array([s_1 * sin_a, cos_a])
        if sol.parity == "even":
            # Bride du squelette décalée de 2·r2 : couple repris par M
            normal = np.array([cos_a, -s_1 * sin_a])
            forces.append((top + 2.0 * r2 * normal, sol.F_a0 * direction))
            couples.append(-(sol.M or 0.0))
        else:
            forces.append((top, sol.F_a0 * direction))
        return forces, couples

    forces.append((np.zeros(2), contact(s_k)))
    if k == n:
        forces.append((np.array([s_k * r1, 2.0 * r2]), np.array([0.0, -load.F_c])))
        forces.append((center, np.array([-s_k * sol.F_an_distal, 0.0])))
    else:
        forces.append((top, -contact(-s_k)))
        forces.append((center, np.array([-s_k * sol.F_a_intermediate, 0.0])))
    return forces, couples


def disc_residuals(sol: TendonSolution, load: TendonLoad, n: int, angles: JointAngles) -> np.ndarray:
    """
    Résidus d'équilibre de chaque corps (base puis disques 1..n)

    Chaque corps est placé dans la configuration fléchie (plan sagittal),
    les forces sont sommées ainsi que les moments autour de l'origine.

    Returns:
        Tableau (n+1,) : max(|ΣF_y|, |ΣF_z|, |ΣM|) par corps
    """
    if angles.n != n:
        raise ValueError(f"expected {n} joints, got {angles.n}")
    if not angles.is_planar:
        raise NonPlanarConfigurationError("free-body check only covers sagittal configurations")

    residuals = np.zeros(n + 1)
    origin = np.zeros(2)
    heading = 0.0
    for k in range(n + 1):
        if k > 0:
            heading += float(angles.phi[k - 1])
        rotation = _rotation2d(heading)
        forces, couples = _body_loads(sol, load, n, k)
        total_force = np.zeros(2)
        total_moment = float(sum(couples))
        for point, force in forces:
            world_point = origin + rotation @ point
            world_force = rotation @ force
            total_force += world_force
            total_moment += _cross2d(world_point, world_force)
        residuals[k] = max(abs(total_force[0]), abs(total_force[1]), abs(total_moment))
        origin = origin + rotation @ np.array([0.0, 2.0 * load.r2])
    return residuals


def free_body_residuals(sol: TendonSolution, load: TendonLoad, n: int, angles: JointAngles) -> float:
    """Résidu maximal (N, N·m) sur tous les corps de la chaîne"""
    return float(np.max(disc_residuals(sol, load, n, angles)))


def disc_force_table(sol: TendonSolution, load: TendonLoad, n: int, angles: JointAngles) -> pd.DataFrame:
    """Table par disque : câble, squelette, contact, moment de base (pair) et résidu"""
    residuals = disc_residuals(sol, load, n, angles)
    roles = ["base"] + ["intermediate"] * (n - 1) + ["distal"]
    backbone = [sol.F_a0] + [sol.F_a_intermediate] * (n - 1) + [sol.F_an_distal]
    table = pd.DataFrame(
        {
            "disc": np.arange(n + 1),
            "role": roles,
            "cable_force": [0.0] * n + [load.F_c],
            "backbone_force": backbone,
            "contact_force": [0.0] + [sol.F_r] * n,
        }
    )
    if sol.M is not None:
        table["moment"] = [sol.M] + [0.0] * n
    table["residual"] = residuals
    return table
