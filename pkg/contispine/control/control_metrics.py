"""
Indicateurs de suivi en force
Erreur RMS, aire de la boucle d'hystérésis, linéarité de la raideur rendue et
énergie dissipée dans la gaine
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from scipy.stats import linregress

from .control_simulator import SimTrace


@dataclass(frozen=True)
class TrackingMetrics:
    rms_N: float
    peak_N: float
    percent_of_peak: float
    loop_area: float
    slope: float
    r2: float
    dissipation: float
    clamp_events: int

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(self)])


def hysteresis_loop_area(F_r: np.ndarray, F_a: np.ndarray, cycles: int = 1) -> float:
    """Aire enclose par la courbe (F_r, F_a), moyennée par cycle (N²)"""
    F_r = np.asarray(F_r, dtype=float)
    F_a = np.asarray(F_a, dtype=float)
    if F_r.size < 2:
        return 0.0
    signed = np.sum(0.5 * (F_a[1:] + F_a[:-1]) * np.diff(F_r))
    return float(abs(signed) / max(cycles, 1))


def stiffness_fit(trace: SimTrace) -> tuple:
    """
    Régression de la part élastique délivrée contre la référence de raideur

    La part élastique est F_a − F_b (F_b : amortissement et inertie de la
    référence). Returns (pente, R²).
    """
    x = trace.column("F_k")
    y = trace.column("F_a") - trace.column("F_b")
    if np.ptp(x) == 0.0:
        return math.nan, math.nan
    fit = linregress(x, y)
    return float(fit.slope), float(fit.rvalue**2)


def transmission_dissipation(trace: SimTrace) -> float:
    """Énergie dissipée par la gaine : ∫ (F_prox − F_a)·v_slide dt (J), ≥ 0 si passive"""
    power = (trace.column("F_prox") - trace.column("F_a")) * trace.column("v_slide")
    return float(trapezoid(power, trace.column("t")))


def tracking_metrics(trace: SimTrace) -> TrackingMetrics:
    """
    Indicateurs d'une trace de simulation

    Args:
        trace: Trace non vide

    Returns:
        TrackingMetrics (RMS de F_a − F_r, pic de F_r, pourcentage du pic,
        aire de boucle par cycle, pente et R² de la raideur, dissipation)

    Raises:
        ValueError: Si la trace est vide
    """
    if len(trace) == 0:
        raise ValueError("tracking_metrics needs a non-empty trace")
    F_r = trace.column("F_r")
    F_a = trace.column("F_a")
    rms = float(np.sqrt(np.mean((F_a - F_r) ** 2)))
    peak = float(np.max(F_r))
    percent = 100.0 * rms / peak if peak > 0 else math.nan
    slope, r2 = stiffness_fit(trace)
    return TrackingMetrics(
        rms_N=rms,
        peak_N=peak,
        percent_of_peak=percent,
        loop_area=hysteresis_loop_area(F_r, F_a, trace.cycles),
        slope=slope,
        r2=r2,
        dissipation=transmission_dissipation(trace),
        clamp_events=trace.clamp_events,
    )
