"""
Référence d'effort d'assistance (contrôleur haut niveau)
Impédance virtuelle inertie/amortissement/raideur ramenée sur le câble
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..utils.constants import GRAVITY_LAW_DAMPING, GRAVITY_LAW_STIFFNESS

STIFFNESS_LAWS = ("linear", "gravity")


@dataclass(frozen=True)
class ImpedanceParams:
    """
    Impédance désirée autour de la trajectoire de référence

    stiffness_law "linear" : K_d·(θ_a − θ_r) ; "gravity" : K_d·sin(θ_a − θ_r).
    La trajectoire de référence est nulle par défaut.
    """

    J_d: float = 0.0
    B_d: float = 6.0
    K_d: float = 60.0
    stiffness_law: str = "gravity"
    theta_r: float = 0.0
    theta_dot_r: float = 0.0
    theta_ddot_r: float = 0.0

    def __post_init__(self):
        if self.J_d < 0:
            raise ValueError("impedance.J_d must be >= 0")
        if self.B_d < 0:
            raise ValueError("impedance.B_d must be >= 0")
        if self.stiffness_law not in STIFFNESS_LAWS:
            raise ValueError(f"impedance.stiffness_law must be one of {STIFFNESS_LAWS}")


@dataclass(frozen=True)
class ForceReference:
    """Référence de force du câble et sa décomposition"""

    F_r: float
    F_k: float
    F_b: float
    clamped: bool


def _clamp(F_k: float, F_b: float) -> ForceReference:
    raw = F_k + F_b
    if raw < 0.0:
        return ForceReference(0.0, F_k, F_b, True)
    return ForceReference(raw, F_k, F_b, False)


def impedance_reference(
    params: ImpedanceParams,
    theta_a: float,
    theta_dot_a: float,
    theta_ddot_a: float,
    r_l: float,
) -> ForceReference:
    """
    Couple d'assistance de l'impédance virtuelle puis force de câble F_r = T_r / r_l

    Le câble ne pousse pas : une référence négative est ramenée à 0 et marquée
    clamped.

    Args:
        params: Impédance désirée
        theta_a: Flexion mesurée du tronc (rad)
        theta_dot_a: Vitesse de flexion (rad/s)
        theta_ddot_a: Accélération de flexion (rad/s²)
        r_l: Bras de levier du tronc (m)

    Returns:
        ForceReference (F_k : part raideur, F_b : parts amortissement et inertie)
    """
    if r_l == 0:
        raise ValueError("r_l must be non-zero")
    if not r_l > 0:
        raise ValueError("r_l must be > 0")
    if not all(math.isfinite(v) for v in (theta_a, theta_dot_a, theta_ddot_a)):
        raise ValueError("trunk state must be finite")
    offset = theta_a - params.theta_r
    if params.stiffness_law == "gravity":
        stiffness_torque = params.K_d * math.sin(offset)
    else:
        stiffness_torque = params.K_d * offset
    damping_torque = params.J_d * (theta_ddot_a - params.theta_ddot_r) + params.B_d * (
        theta_dot_a - params.theta_dot_r
    )
    return _clamp(stiffness_torque / r_l, damping_torque / r_l)


def gravity_stiffness_reference(theta_a: float, theta_dot_a: float) -> ForceReference:
    """F_r = 20·θ̇_a + 200·sin θ_a, bornée à 0"""
    return _clamp(GRAVITY_LAW_STIFFNESS * math.sin(theta_a), GRAVITY_LAW_DAMPING * theta_dot_a)
