"""
Modèle statique lombaire (L5/S1) en flexion du tronc
Force du muscle érecteur, compression et cisaillement discal avec et sans
l'effort d'assistance de l'exosquelette
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

# Plage angulaire du modèle statique (rad)
THETA_MIN = 0.0
THETA_MAX = math.pi / 2.0
ANGLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Anthropometrics:
    """Masses du haut du corps et de la charge, longueur du tronc"""

    m_body: float = 41.0
    m_load: float = 15.0
    L_trunk: float = 0.5
    g: float = 9.81

    def __post_init__(self):
        if self.m_body < 0:
            raise ValueError("anthropometrics.m_body must be >= 0")
        if self.m_load < 0:
            raise ValueError("anthropometrics.m_load must be >= 0")
        if not self.L_trunk > 0:
            raise ValueError("anthropometrics.L_trunk must be > 0")
        if not self.g > 0:
            raise ValueError("anthropometrics.g must be > 0")

    @property
    def total_weight(self) -> float:
        """Poids du haut du corps et de la charge (N)"""
        return (self.m_body + self.m_load) * self.g


@dataclass(frozen=True)
class MomentArms:
    """
    Bras de levier autour de L5/S1

    load_arm et body_arm sont des fonctions de l'angle de flexion du tronc,
    évaluées élément par élément sur des tableaux numpy.
    """

    D_e: float
    D_exo: float
    load_arm: Callable[[ArrayLike], ArrayLike]
    body_arm: Callable[[ArrayLike], ArrayLike]
    r_l: float

    def __post_init__(self):
        if not self.D_e > 0:
            raise ValueError("moment_arms.D_e must be > 0")
        if not self.D_exo > 0:
            raise ValueError("moment_arms.D_exo must be > 0")
        if not self.r_l > 0:
            raise ValueError("moment_arms.r_l must be > 0")
        probe = np.linspace(THETA_MIN, THETA_MAX, 91)
        for name, arm in (("load_arm", self.load_arm), ("body_arm", self.body_arm)):
            values = np.asarray(arm(probe), dtype=float)
            if not np.all(np.isfinite(values)) or np.any(values < 0):
                raise ValueError(f"moment_arms.{name} must be finite and >= 0 on [0, 90] deg")

    def D_load(self, theta: ArrayLike) -> ArrayLike:
        return self.load_arm(theta)

    def D_body(self, theta: ArrayLike) -> ArrayLike:
        return self.body_arm(theta)


def default_moment_arms(
    anthro: Anthropometrics,
    load_offset: float = 0.25,
    body_com_fraction: float = 0.5,
    D_e: float = 0.05,
    D_exo: float = 0.30,
    r_l: float | None = None,
) -> MomentArms:
    """
    Bras de levier de démonstration

    D_load(θ) = L_trunk·sin θ + load_offset (mains devant les épaules),
    D_body(θ) = body_com_fraction·L_trunk·sin θ. r_l vaut D_exo par défaut.
    """
    length = anthro.L_trunk

    def load_arm(theta: ArrayLike) -> ArrayLike:
        return length * np.sin(theta) + load_offset

    def body_arm(theta: ArrayLike) -> ArrayLike:
        return body_com_fraction * length * np.sin(theta)

    return MomentArms(
        D_e=D_e,
        D_exo=D_exo,
        load_arm=load_arm,
        body_arm=body_arm,
        r_l=D_exo if r_l is None else r_l,
    )


@dataclass(frozen=True)
class SpineForces:
    """Efforts lombaires (scalaires ou séries temporelles)"""

    F_e: ArrayLike
    F_p: ArrayLike
    F_s: ArrayLike
    F_exo: ArrayLike
    theta: ArrayLike

    @property
    def negative_muscle_force(self) -> bool:
        return bool(np.any(np.asarray(self.F_e) < 0))

    @property
    def negative_shear(self) -> bool:
        return bool(np.any(np.asarray(self.F_s) < 0))

    @property
    def infeasible(self) -> bool:
        """Assistance supérieure à ce que le câble peut transmettre utilement"""
        return self.negative_muscle_force or self.negative_shear

    def infeasible_mask(self) -> np.ndarray:
        return (np.asarray(self.F_e) < 0) | (np.asarray(self.F_s) < 0)


def _check_inputs(theta: np.ndarray, F_exo: np.ndarray) -> None:
    if not (np.all(np.isfinite(theta)) and np.all(np.isfinite(F_exo))):
        raise ValueError("theta and F_exo must be finite")
    if np.any(theta < THETA_MIN - ANGLE_TOLERANCE) or np.any(theta > THETA_MAX + ANGLE_TOLERANCE):
        raise ValueError("theta must lie in [0, pi/2]")
    if np.any(F_exo < 0):
        raise ValueError("F_exo must be >= 0")


def _evaluate(anthro: Anthropometrics, arms: MomentArms, theta: np.ndarray, F_exo: np.ndarray):
    if arms.D_e == 0:
        raise ValueError("D_e must be non-zero")
    load_weight = anthro.m_load * anthro.g
    body_weight = anthro.m_body * anthro.g
    load_moment = load_weight * arms.D_load(theta) + body_weight * arms.D_body(theta)
    F_e = (load_moment - F_exo * arms.D_exo) / arms.D_e
    F_p = F_e + anthro.total_weight * np.cos(theta)
    F_s = -F_exo + anthro.total_weight * np.sin(theta)
    return F_e, F_p, F_s


def lumbar_forces(anthro: Anthropometrics, arms: MomentArms, theta: float, F_exo: float) -> SpineForces:
    """
    Efforts lombaires pour un angle de flexion et un effort d'assistance

    Équilibre des moments autour de L5/S1 pour F_e, puis projection du poids
    le long du tronc (compression) et perpendiculairement (cisaillement).
    L'effort de l'exosquelette est perpendiculaire au dos.

    Args:
        anthro: Masses et longueur du tronc
        arms: Bras de levier
        theta: Flexion du tronc dans [0, π/2] (rad)
        F_exo: Effort d'assistance ≥ 0 (N)

    Returns:
        SpineForces scalaires ; les valeurs négatives sont signalées, pas bornées
    """
    theta_array = np.asarray(float(theta))
    F_exo_array = np.asarray(float(F_exo))
    _check_inputs(theta_array, F_exo_array)
    F_e, F_p, F_s = _evaluate(anthro, arms, theta_array, F_exo_array)
    return SpineForces(float(F_e), float(F_p), float(F_s), float(F_exo), float(theta))


def lumbar_force_series(
    anthro: Anthropometrics,
    arms: MomentArms,
    theta: np.ndarray,
    F_exo: np.ndarray,
) -> SpineForces:
    """Version vectorisée de lumbar_forces le long d'une trajectoire"""
    theta = np.asarray(theta, dtype=float)
    F_exo = np.broadcast_to(np.asarray(F_exo, dtype=float), theta.shape)
    _check_inputs(theta, F_exo)
    F_e, F_p, F_s = _evaluate(anthro, arms, theta, F_exo)
    return SpineForces(F_e, F_p, F_s, np.array(F_exo), theta)
