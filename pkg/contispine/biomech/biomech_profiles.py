"""
Profils temporels du soulever en flexion (stoop)
Trajectoire du tronc en cosinus et profil d'assistance de l'exosquelette
"""
from __future__ import annotations

import math
from typing import Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

DEFAULT_CYCLE_S = 8.0
DEFAULT_THETA_MAX = math.radians(70.0)
DEFAULT_F_MAX = 250.0
# Fenêtre d'assistance (s) : de F_max à 0 en suivant un cosinus
ASSIST_WINDOW_S = 4.0


def stoop_trajectory(
    t: ArrayLike,
    cycle: float = DEFAULT_CYCLE_S,
    theta_max: float = DEFAULT_THETA_MAX,
) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """
    Flexion puis extension du tronc, une période par cycle

    θ(t) = θ_max/2·(1 − cos(2πt/T)) : 0 debout, θ_max à mi-cycle.
    Périodique, les cycles s'enchaînent sans discontinuité.

    Args:
        t: Temps ≥ 0 (s), scalaire ou tableau
        cycle: Durée d'un cycle T (s)
        theta_max: Flexion maximale (rad)

    Returns:
        (θ, θ̇, θ̈)
    """
    if not cycle > 0:
        raise ValueError("cycle must be > 0")
    t_array = np.asarray(t, dtype=float)
    if np.any(t_array < 0):
        raise ValueError("t must be >= 0")
    omega = 2.0 * math.pi / cycle
    phase = omega * t_array
    theta = 0.5 * theta_max * (1.0 - np.cos(phase))
    theta_dot = 0.5 * theta_max * omega * np.sin(phase)
    theta_ddot = 0.5 * theta_max * omega**2 * np.cos(phase)
    if np.ndim(t) == 0:
        return float(theta), float(theta_dot), float(theta_ddot)
    return theta, theta_dot, theta_ddot


def assist_profile(t: ArrayLike, F_max: float = DEFAULT_F_MAX) -> ArrayLike:
    """
    Effort d'assistance : F_max à t=0, décroissance en cosinus jusqu'à 0 à t=4 s

    Nul hors de la fenêtre [0, 4] s.
    """
    if F_max < 0:
        raise ValueError("F_max must be >= 0")
    t_array = np.asarray(t, dtype=float)
    inside = (t_array >= 0.0) & (t_array <= ASSIST_WINDOW_S)
    profile = 0.5 * F_max * (1.0 + np.cos(math.pi * t_array / ASSIST_WINDOW_S))
    force = np.where(inside, profile, 0.0)
    if np.ndim(t) == 0:
        return float(force)
    return force


def stoop_assist_series(
    t: ArrayLike, cycle: float = DEFAULT_CYCLE_S, F_max: float = DEFAULT_F_MAX
) -> ArrayLike:
    """
    Assistance le long des cycles de stoop

    Le profil est ancré sur la flexion maximale : F_max tronc fléchi, 0 debout,
    symétrique entre la descente et la remontée.
    """
    t_array = np.asarray(t, dtype=float)
    half = cycle / 2.0
    time_from_flexion = np.abs(np.mod(t_array, cycle) - half) * (ASSIST_WINDOW_S / half)
    force = assist_profile(time_from_flexion, F_max)
    if np.ndim(t) == 0:
        return float(force)
    return force


def sample_times(cycle: float = DEFAULT_CYCLE_S, samples_per_cycle: int = 800, cycles: int = 1) -> np.ndarray:
    """Instants d'échantillonnage k·T/N, bornes incluses"""
    if samples_per_cycle < 2:
        raise ValueError("samples_per_cycle must be >= 2")
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    count = samples_per_cycle * cycles
    return cycle * np.arange(count + 1) / samples_per_cycle
