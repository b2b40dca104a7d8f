"""
Modèle de l'actionneur : moteur, réducteur 36:1, poulie et câble Bowden
Boucle de courant du premier ordre, câble élastique en série, frottement de
gaine par effet cabestan
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Tuple

from ..exceptions import SimulationInstabilityError

MAX_PLANT_STEP_S = 1e-3


@dataclass(frozen=True)
class PlantParams:
    """
    Paramètres de l'actionneur

    k_t, k_c, J, damping et current_tau sont des hypothèses de modélisation ;
    cable_arm convertit la flexion du tronc en câble tiré côté charge.
    """

    nominal_torque: float = 2.0
    nominal_speed_rpm: float = 1500.0
    gear_ratio: float = 36.0
    pulley_radius: float = 0.05
    k_t: float = 0.1
    k_c: float = 50000.0
    force_limit: float = 1500.0
    speed_limit: float = 0.22
    mu_theta: float = 0.3
    v_eps: float = 0.001
    current_tau: float = 0.001
    inertia: float = 5e-5
    damping: float = 1e-3
    cable_arm: float = 0.03

    def __post_init__(self):
        positive = (
            "nominal_torque",
            "nominal_speed_rpm",
            "gear_ratio",
            "pulley_radius",
            "k_t",
            "k_c",
            "force_limit",
            "speed_limit",
            "v_eps",
            "current_tau",
            "inertia",
        )
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"plant.{name} must be > 0")
        for name in ("mu_theta", "damping", "cable_arm"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"plant.{name} must be >= 0")

    @cached_property
    def transmission(self) -> float:
        """G = r_poulie / N : m de câble par rad moteur"""
        return self.pulley_radius / self.gear_ratio

    @property
    def max_cable_force(self) -> float:
        """Force continue au couple nominal (N)"""
        return self.nominal_torque / self.transmission

    @property
    def rated_speed(self) -> float:
        """Vitesse nominale du moteur (rad/s)"""
        return self.nominal_speed_rpm * 2.0 * math.pi / 60.0

    @cached_property
    def max_motor_speed(self) -> float:
        return min(self.rated_speed, self.speed_limit / self.transmission)

    @property
    def max_cable_speed(self) -> float:
        return self.max_motor_speed * self.transmission

    @cached_property
    def current_limit(self) -> float:
        return self.nominal_torque / self.k_t


@dataclass(frozen=True)
class LoopState:
    """
    État de la boucle à un instant

    motor_angle positif : câble enroulé ; payout = −G·motor_angle.
    v_slide est la vitesse de glissement du câble dans la gaine, positive
    quand le câble est ramené vers le moteur.
    """

    t: float = 0.0
    theta_a: float = 0.0
    theta_dot_a: float = 0.0
    theta_ddot_a: float = 0.0
    F_r: float = 0.0
    F_a: float = 0.0
    F_prox: float = 0.0
    omega_r: float = 0.0
    omega: float = 0.0
    I_r: float = 0.0
    I: float = 0.0
    motor_angle: float = 0.0
    payout: float = 0.0
    v_slide: float = 0.0
    force_integral: float = 0.0
    velocity_integral: float = 0.0

    def is_finite(self) -> bool:
        return all(math.isfinite(value) for value in self.__dict__.values())


def sliding_direction(cable_velocity: float, params: PlantParams) -> float:
    """s ∈ [−1, 1], transition lisse dans la bande v_eps"""
    return math.tanh(cable_velocity / params.v_eps)


def hysteresis_transmission(F_proximal: float, cable_velocity: float, params: PlantParams) -> float:
    """
    Force distale après la gaine Bowden (cabestan)

    F_distal = F_proximal·exp(−s·μΘ) : atténuée quand le moteur ramène le
    câble (s = +1), amplifiée quand la charge le tire (s = −1).

    Args:
        F_proximal: Tension côté moteur ≥ 0 (N)
        cable_velocity: Vitesse de glissement, positive vers le moteur (m/s)
        params: Paramètres de l'actionneur

    Returns:
        Tension côté charge (N)
    """
    if F_proximal < 0:
        raise ValueError("F_proximal must be >= 0")
    if params.mu_theta == 0.0:
        return F_proximal
    return F_proximal * math.exp(-sliding_direction(cable_velocity, params) * params.mu_theta)


def trunk_draw(theta_a: float, theta_dot_a: float, params: PlantParams) -> Tuple[float, float]:
    """Câble tiré par le tronc (m) et vitesse de glissement associée (m/s)"""
    return params.cable_arm * theta_a, -params.cable_arm * theta_dot_a


def cable_tension(motor_angle: float, draw: float, params: PlantParams) -> Tuple[float, float]:
    """(tension élastique brute, tension proximale saturée)"""
    stretch = params.transmission * motor_angle + draw
    spring = params.k_c * stretch if stretch > 0.0 else 0.0
    return spring, min(spring, params.force_limit)


def advance(
    motor_angle: float,
    omega: float,
    current: float,
    I_command: float,
    draw: float,
    v_slide: float,
    dt: float,
    params: PlantParams,
) -> Tuple[float, float, float, float, float, float]:
    """
    Pas explicite de l'actionneur sur des flottants

    Returns:
        (motor_angle, omega, current, tension brute, F_prox, F_distal)
    """
    limit = params.current_limit
    current += dt / params.current_tau * (max(-limit, min(limit, I_command)) - current)
    torque = max(-params.nominal_torque, min(params.nominal_torque, params.k_t * current))
    _, F_prox = cable_tension(motor_angle, draw, params)
    omega += dt / params.inertia * (torque - params.transmission * F_prox - params.damping * omega)
    omega_max = params.max_motor_speed
    omega = max(-omega_max, min(omega_max, omega))
    motor_angle += dt * omega
    spring, F_prox = cable_tension(motor_angle, draw, params)
    F_distal = min(hysteresis_transmission(F_prox, v_slide, params), params.force_limit)
    return motor_angle, omega, current, spring, F_prox, F_distal


def check_plant(spring: float, omega: float, params: PlantParams, tick: int | None = None) -> None:
    """Détecte une divergence : NaN ou tension au-delà de deux fois la saturation"""
    if not (math.isfinite(spring) and math.isfinite(omega)):
        raise SimulationInstabilityError("non-finite plant state", tick)
    if spring > 2.0 * params.force_limit:
        raise SimulationInstabilityError(
            f"cable tension {spring:.1f} N exceeds twice the saturation", tick
        )


def plant_step(
    state: LoopState,
    I_command: float,
    trunk_kinematics: Tuple[float, float, float],
    dt: float,
    params: PlantParams,
) -> LoopState:
    """
    Avance l'actionneur d'un pas fixe

    Forme état de advance : même noyau que la boucle interne de simulate_stoop,
    qui appelle advance directement sur des flottants.

    Args:
        state: État courant
        I_command: Consigne de courant (A)
        trunk_kinematics: (θ_a, θ̇_a, θ̈_a) du tronc à la fin du pas
        dt: Pas dans (0, 1e-3] s
        params: Paramètres de l'actionneur

    Returns:
        Nouvel état (courant, vitesse, angle moteur, tensions)

    Raises:
        SimulationInstabilityError: NaN ou tension hors bornes
    """
    if not 0.0 < dt <= MAX_PLANT_STEP_S:
        raise ValueError("dt must lie in (0, 1e-3] s")
    theta_a, theta_dot_a, theta_ddot_a = trunk_kinematics
    draw, v_slide = trunk_draw(theta_a, theta_dot_a, params)
    motor_angle, omega, current, spring, F_prox, F_distal = advance(
        state.motor_angle, state.omega, state.I, I_command, draw, v_slide, dt, params
    )
    check_plant(spring, omega, params)
    return replace(
        state,
        t=state.t + dt,
        theta_a=theta_a,
        theta_dot_a=theta_dot_a,
        theta_ddot_a=theta_ddot_a,
        I_r=I_command,
        I=current,
        omega=omega,
        motor_angle=motor_angle,
        payout=-params.transmission * motor_angle,
        F_prox=F_prox,
        F_a=F_distal,
        v_slide=v_slide,
    )
