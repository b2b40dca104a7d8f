"""
Correcteur PID positionnel avec anti-emballement de l'intégrale
Utilisé pour la boucle de force (1 kHz) et la boucle de vitesse (10 kHz)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple


@dataclass(frozen=True)
class PIDGains:
    """Gains et limites d'un correcteur"""

    kp: float
    ki: float = 0.0
    kd: float = 0.0
    integral_limit: float = math.inf
    output_limit: float = math.inf

    def __post_init__(self):
        for name in ("kp", "ki", "kd"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"pid.{name} must be finite")
        if not self.integral_limit > 0:
            raise ValueError("pid.integral_limit must be > 0")
        if not self.output_limit > 0:
            raise ValueError("pid.output_limit must be > 0")


class PIDState(NamedTuple):
    integral: float = 0.0
    previous_error: Optional[float] = None


def _clip(value: float, limit: float) -> float:
    return max(-limit, min(limit, value))


def pid_step(
    gains: PIDGains,
    setpoint: float,
    measurement: float,
    state: PIDState,
    dt: float,
) -> Tuple[float, PIDState]:
    """
    Un pas du PID

    L'intégrale accumule ki·e·dt et reste bornée par integral_limit ; la
    dérivée est nulle au premier pas. La commande est saturée à output_limit.

    Returns:
        (commande, nouvel état)
    """
    if not dt > 0:
        raise ValueError("dt must be > 0")
    error = setpoint - measurement
    integral = _clip(state.integral + gains.ki * error * dt, gains.integral_limit)
    if state.previous_error is None:
        derivative = 0.0
    else:
        derivative = (error - state.previous_error) / dt
    command = gains.kp * error + integral + gains.kd * derivative
    return _clip(command, gains.output_limit), PIDState(integral, error)

