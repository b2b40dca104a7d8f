"""
Routage du câble dans la chaîne de disques
Longueur de câble, correspondance rétraction ↔ angle de flexion et
calibration du rayon des trous
"""
from __future__ import annotations

import math
from typing import Iterable, Tuple

import numpy as np
from scipy.optimize import bisect, least_squares

from ..exceptions import CalibrationError
from ..utils.constants import BISECTION_MAX_ITER, BISECTION_TOLERANCE_RAD
from .mechanism_kinematics import DiscGeometry, JointAngles, chain_frames


def hole_points(angles: JointAngles, geom: DiscGeometry) -> np.ndarray:
    """
    Positions des trous de câble, du disque de base au disque distal

    Le trou du disque k est à mi-pas sous l'articulation k, décalé de rho
    côté flexion : T_k·(0, −rho, −l/2).

    Returns:
        Tableau (n+1, 3)
    """
    frames = chain_frames(angles, geom.l)
    local_hole = np.array([0.0, -geom.rho, -geom.l / 2.0, 1.0])
    return (frames @ local_hole)[:, :3]


def cable_length(angles: JointAngles, geom: DiscGeometry) -> float:
    """Longueur libre du câble entre le trou de base et le trou distal (m)"""
    points = hole_points(angles, geom)
    return float(np.sum(np.linalg.norm(np.diff(points, axis=0), axis=1)))


def straight_cable_length(geom: DiscGeometry) -> float:
    return geom.n * geom.l


def cable_retraction(angles: JointAngles, geom: DiscGeometry) -> float:
    """Câble rétracté par rapport à la chaîne droite (m)"""
    return straight_cable_length(geom) - cable_length(angles, geom)


def max_bend_per_joint(geom: DiscGeometry) -> float:
    """
    Flexion uniforme maximale par articulation pour l'inversion

    Au-delà de 2·atan(l/(2·rho)) deux trous voisins se croisent et la
    longueur repart à la hausse ; la butée β s'applique aussi.
    """
    return min(geom.beta, 2.0 * math.atan(geom.l / (2.0 * geom.rho)))


def _uniform_retraction(bend_per_joint: float, geom: DiscGeometry) -> float:
    return cable_retraction(JointAngles.uniform(geom.n, phi=bend_per_joint), geom)


def max_retraction(geom: DiscGeometry) -> float:
    return _uniform_retraction(max_bend_per_joint(geom), geom)


def bend_from_retraction(retraction: float, geom: DiscGeometry) -> float:
    """
    Angle de flexion total correspondant à une rétraction de câble

    Hypothèse de courbure constante (même φ sur toutes les articulations),
    inversion par bissection.

    Args:
        retraction: Longueur rétractée (m)
        geom: Géométrie calibrée

    Returns:
        Angle total n·φ (rad)

    Raises:
        ValueError: Si la rétraction est hors de la plage atteignable
    """
    upper = max_bend_per_joint(geom)
    reachable = _uniform_retraction(upper, geom)
    if retraction < 0.0 or retraction > reachable + 1e-12:
        raise ValueError(
            f"retraction {retraction:.6g} m outside the achievable range [0, {reachable:.6g}] m"
        )
    if retraction == 0.0:
        return 0.0
    if retraction >= reachable:
        return geom.n * upper

    bend = bisect(
        lambda phi: _uniform_retraction(phi, geom) - retraction,
        0.0,
        upper,
        xtol=BISECTION_TOLERANCE_RAD / geom.n,
        maxiter=BISECTION_MAX_ITER,
    )
    return geom.n * bend


def calibrate_hole_radius(pairs: Iterable[Tuple[float, float]], geom: DiscGeometry) -> float:
    """
    Ajuste rho aux couples (rétraction, flexion totale) mesurés

    Moindres carrés sur l'erreur de rétraction prédite, rho borné à (0, r].

    Args:
        pairs: Couples (rétraction en m, flexion totale en rad)
        geom: Géométrie (rho initial ignoré)

    Returns:
        Rayon du trou rho (m)

    Raises:
        CalibrationError: Couples dégénérés ou calibration infaisable
    """
    pairs = [(float(retraction), float(bend)) for retraction, bend in pairs]
    if not pairs:
        raise CalibrationError("calibration needs at least one (retraction, bend) pair")
    if any(bend < 0.0 or retraction < 0.0 for retraction, bend in pairs):
        raise CalibrationError("calibration pairs must be non-negative")
    if all(bend == 0.0 for _, bend in pairs):
        raise CalibrationError("degenerate calibration: every bend is zero")
    if any(bend / geom.n > geom.beta for _, bend in pairs):
        raise CalibrationError("calibration bend exceeds the joint limit n·beta")

    retractions = np.array([retraction for retraction, _ in pairs])
    bends = [bend / geom.n for _, bend in pairs]

    def residuals(x: np.ndarray) -> np.ndarray:
        trial = geom.with_rho(float(x[0]))
        return np.array([_uniform_retraction(phi, trial) for phi in bends]) - retractions

    result = least_squares(
        residuals,
        x0=np.array([geom.r / 2.0]),
        bounds=(np.array([1e-9]), np.array([geom.r])),
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
    )
    rho = float(result.x[0])
    worst = float(np.max(np.abs(result.fun)))
    if len(pairs) == 1 and worst > 1e-6:
        raise CalibrationError(
            f"no hole radius in (0, r] reproduces the pair (best error {worst:.3g} m)"
        )
    calibrated = geom.with_rho(rho)
    if any(phi > max_bend_per_joint(calibrated) for phi in bends):
        raise CalibrationError("calibrated holes collide before the requested bend")
    return rho
