"""
Simulation de la commande d'assistance sur des cycles de stoop
Contrôleur haut niveau à 1 kHz (référence d'impédance, PID de force) et
boucle bas niveau à 10 kHz (PID de vitesse, boucle de courant, actionneur)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..biomech.biomech_profiles import DEFAULT_CYCLE_S, DEFAULT_THETA_MAX, stoop_trajectory
from ..exceptions import SimulationInstabilityError
from .control_pid import PIDGains, PIDState, pid_step
from .control_plant import PlantParams, advance, check_plant, sliding_direction, trunk_draw
from .control_reference import ImpedanceParams, gravity_stiffness_reference, impedance_reference

OPEN_LOOP = "open_loop_current"
CLOSED_LOOP = "closed_loop_force"
CONTROLLERS = (OPEN_LOOP, CLOSED_LOOP)

IMPEDANCE = "impedance"
GRAVITY_STIFFNESS = "gravity_stiffness"
REFERENCES = (IMPEDANCE, GRAVITY_STIFFNESS)

TRACE_COLUMNS = (
    "t",
    "theta_a",
    "theta_dot_a",
    "F_r",
    "F_k",
    "F_b",
    "F_a",
    "F_prox",
    "I_r",
    "I",
    "omega_r",
    "omega",
    "payout",
    "v_slide",
)


@dataclass(frozen=True)
class ControllerParams:
    """Gains des boucles de force et de vitesse (réglés sur l'actionneur nominal)"""

    force_kp: float = 1.5
    force_ki: float = 30.0
    force_kd: float = 0.0
    velocity_kp: float = 0.2
    velocity_ki: float = 8.0
    velocity_kd: float = 0.0
    capstan_feedforward: bool = False

    def force_gains(self, plant: PlantParams) -> PIDGains:
        """N → rad/s, sortie bornée à la vitesse moteur maximale"""
        limit = plant.max_motor_speed
        return PIDGains(self.force_kp, self.force_ki, self.force_kd, limit, limit)

    def velocity_gains(self, plant: PlantParams) -> PIDGains:
        """rad/s → A, sortie bornée au courant nominal"""
        limit = plant.current_limit
        return PIDGains(self.velocity_kp, self.velocity_ki, self.velocity_kd, limit, limit)


@dataclass(frozen=True)
class SensorNoise:
    """Bruit additif gaussien des capteurs, désactivé par défaut"""

    force_std: float = 0.0
    angle_std: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.force_std < 0 or self.angle_std < 0:
            raise ValueError("sensor noise standard deviations must be >= 0")

    @property
    def enabled(self) -> bool:
        return self.force_std > 0 or self.angle_std > 0


@dataclass(frozen=True)
class SimulationParams:
    """Tout ce qu'il faut pour rejouer une simulation à l'identique"""

    plant: PlantParams = field(default_factory=PlantParams)
    impedance: ImpedanceParams = field(default_factory=ImpedanceParams)
    control: ControllerParams = field(default_factory=ControllerParams)
    noise: SensorNoise = field(default_factory=SensorNoise)
    r_l: float = 0.30
    cycle_s: float = DEFAULT_CYCLE_S
    theta_max: float = DEFAULT_THETA_MAX
    high_level_hz: float = 1000.0
    plant_hz: float = 10000.0

    def __post_init__(self):
        if not self.r_l > 0:
            raise ValueError("r_l must be > 0")
        if not self.cycle_s > 0:
            raise ValueError("cycle_s must be > 0")
        if not 0 < self.theta_max <= math.pi / 2:
            raise ValueError("theta_max must lie in (0, pi/2]")
        if not self.high_level_hz > 0:
            raise ValueError("high_level_hz must be > 0")
        ratio = self.plant_hz / self.high_level_hz
        if ratio < 1 or abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("plant_hz must be an integer multiple of high_level_hz")
        if 1.0 / self.plant_hz > 1e-3:
            raise ValueError("plant step must not exceed 1 ms")

    @property
    def substeps(self) -> int:
        return int(round(self.plant_hz / self.high_level_hz))


@dataclass(frozen=True)
class SimTrace:
    """Trace d'une simulation, un échantillon par période haut niveau"""

    samples: pd.DataFrame
    cycles: int
    controller: str
    reference: str
    high_level_hz: float
    clamp_events: int

    def __len__(self) -> int:
        return len(self.samples)

    def column(self, name: str) -> np.ndarray:
        return self.samples[name].to_numpy()


def open_loop_current(F_r: float, v_slide: float, plant: PlantParams, feedforward: bool) -> float:
    """Courant donnant F_r au moteur, compensation inverse du cabestan en option"""
    force = F_r
    if feedforward and plant.mu_theta > 0:
        force *= math.exp(sliding_direction(v_slide, plant) * plant.mu_theta)
    current = force * plant.transmission / plant.k_t
    return max(-plant.current_limit, min(plant.current_limit, current))


def _reference(
    reference: str,
    params: SimulationParams,
    theta: float,
    theta_dot: float,
    theta_ddot: float,
):
    if reference == GRAVITY_STIFFNESS:
        return gravity_stiffness_reference(theta, theta_dot)
    return impedance_reference(params.impedance, theta, theta_dot, theta_ddot, params.r_l)


def _trunk_samples(count: int, params: SimulationParams) -> Tuple[list, list, list]:
    times = np.arange(count) / params.plant_hz
    theta, theta_dot, theta_ddot = stoop_trajectory(times, params.cycle_s, params.theta_max)
    return theta.tolist(), theta_dot.tolist(), theta_ddot.tolist()


def simulate_stoop(
    cycles: int,
    controller: str,
    reference: str,
    params: SimulationParams,
    progress: bool = False,
) -> SimTrace:
    """
    Simule des cycles de stoop avec le tronc en mouvement imposé

    Le tronc suit la trajectoire en cosinus (capteur idéal sauf bruit
    configuré). À chaque période haut niveau, la référence F_r est calculée
    et l'échantillon est enregistré ; l'actionneur est ensuite intégré par
    sous-pas fixes.

    Args:
        cycles: Nombre de cycles (≥ 1)
        controller: "open_loop_current" ou "closed_loop_force"
        reference: "impedance" ou "gravity_stiffness"
        params: Paramètres de simulation
        progress: Afficher une barre de progression

    Returns:
        SimTrace

    Raises:
        SimulationInstabilityError: NaN ou tension au-delà de 2× la saturation,
            avec l'indice de la période fautive
    """
    if int(cycles) != cycles or cycles < 1:
        raise ValueError("cycles must be an integer >= 1")
    if controller not in CONTROLLERS:
        raise ValueError(f"controller must be one of {CONTROLLERS}")
    if reference not in REFERENCES:
        raise ValueError(f"reference must be one of {REFERENCES}")

    plant = params.plant
    substeps = params.substeps
    period = 1.0 / params.high_level_hz
    h = 1.0 / params.plant_hz
    ticks = int(round(cycles * params.cycle_s * params.high_level_hz))
    theta_list, theta_dot_list, theta_ddot_list = _trunk_samples(ticks * substeps + 1, params)

    closed_loop = controller == CLOSED_LOOP
    feedforward = params.control.capstan_feedforward
    force_gains = params.control.force_gains(plant)
    velocity_gains = params.control.velocity_gains(plant)
    noise = params.noise
    rng = np.random.default_rng(noise.seed) if noise.enabled else None
    transmission = plant.transmission
    arm = plant.cable_arm

    force_state = PIDState()
    velocity_state = PIDState()
    motor_angle = omega = current = 0.0
    F_prox = F_a = 0.0
    I_r = omega_r = 0.0
    clamp_events = 0
    rows = np.empty((ticks, len(TRACE_COLUMNS)))

    for k in tqdm(range(ticks), desc="🚀 Simulation", unit=" ticks", disable=not progress):
        base = k * substeps
        t = base / params.plant_hz
        theta = theta_list[base]
        theta_dot = theta_dot_list[base]
        _, v_slide = trunk_draw(theta, theta_dot, plant)

        measured_theta = theta
        measured_force = F_a
        if rng is not None:
            measured_theta += rng.normal(0.0, noise.angle_std) if noise.angle_std > 0 else 0.0
            measured_force += rng.normal(0.0, noise.force_std) if noise.force_std > 0 else 0.0

        ref = _reference(reference, params, measured_theta, theta_dot, theta_ddot_list[base])
        if ref.clamped:
            clamp_events += 1

        if closed_loop:
            omega_r, force_state = pid_step(force_gains, ref.F_r, measured_force, force_state, period)
        else:
            I_r = open_loop_current(ref.F_r, v_slide, plant, feedforward)

        rows[k] = (
            t,
            theta,
            theta_dot,
            ref.F_r,
            ref.F_k,
            ref.F_b,
            F_a,
            F_prox,
            I_r,
            current,
            omega_r,
            omega,
            -transmission * motor_angle,
            v_slide,
        )

        feedforward_current = 0.0
        if closed_loop and feedforward:
            feedforward_current = open_loop_current(ref.F_r, v_slide, plant, True)

        for j in range(1, substeps + 1):
            index = base + j
            draw = arm * theta_list[index]
            v_slide = -arm * theta_dot_list[index]
            if closed_loop:
                I_r, velocity_state = pid_step(velocity_gains, omega_r, omega, velocity_state, h)
                if feedforward:
                    I_r = max(-plant.current_limit, min(plant.current_limit, I_r + feedforward_current))
            motor_angle, omega, current, spring, F_prox, F_a = advance(
                motor_angle, omega, current, I_r, draw, v_slide, h, plant
            )
            try:
                check_plant(spring, omega, plant, k)
            except SimulationInstabilityError:
                print(f"💥 Instabilité à la ligne {k} (t = {t:.3f} s)")
                raise

    samples = pd.DataFrame(rows, columns=list(TRACE_COLUMNS))
    return SimTrace(
        samples=samples,
        cycles=int(cycles),
        controller=controller,
        reference=reference,
        high_level_hz=params.high_level_hz,
        clamp_events=clamp_events,
    )
