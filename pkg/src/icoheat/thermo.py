"""Heat bookkeeping, anomalous-flow thresholds and temperature sweeps.

Units: hbar = k_B = 1, temperatures in units of the system frequency. Heat is
positive when energy flows into the system. With ``H = (omega / 2) sigma_z`` a
unit shift of excited population costs ``omega`` of energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .ico import ALPHA_PLUS, SwitchOutcome, classical_heat, coherent_control, run_switch
from .qmat import thermal_population

DEFAULT_GRID = (0.25, 2.0, 200)


class Mode(str, Enum):
    ICO = "ico"
    CLASSICAL = "classical"
    COHERENT = "coherent"


@dataclass(frozen=True)
class HeatRecord:
    te_over_ts: float
    dq_plus: float
    dq_minus: float
    p_plus: float
    p_minus: float
    f_plus: float
    f_minus: float

    @property
    def unconditional(self) -> float:
        return self.dq_plus + self.dq_minus


def _heat(prob: float, f: float, f1: float, omega: float) -> float:
    # an impossible outcome carries no heat
    if math.isnan(f):
        return 0.0
    return prob * omega * (f - f1)


def heat_exchange(outcome: SwitchOutcome, f1: float, omega: float, te_over_ts: float = math.nan) -> HeatRecord:
    """Conditional heats ``dQ+- = P+- omega (f+- - f1)`` for one control readout."""
    return HeatRecord(
        te_over_ts=te_over_ts,
        dq_plus=_heat(outcome.p_plus, outcome.f_plus, f1, omega),
        dq_minus=_heat(outcome.p_minus, outcome.f_minus, f1, omega),
        p_plus=outcome.p_plus,
        p_minus=outcome.p_minus,
        f_plus=outcome.f_plus,
        f_minus=outcome.f_minus,
    )


def heating_condition(f1: float, f2: float) -> bool:
    """True when the ``|->`` outcome heats a system hotter than the channels.

    Equivalent to ``f2 > f1^2 / (1 - 2 f1 + 2 f1^2)`` for ``alpha = 1/2``.
    """
    return f2 > f1**2 / (1.0 - 2.0 * f1 + 2.0 * f1**2)


def cooling_condition(f1: float, f2: float) -> bool:
    """True when the ``|+>`` outcome cools a system colder than the channels.

    Equivalent to ``f2 < 1 + (1 - f1^2) / (-1 - 2 f1 + 2 f1^2)`` for ``alpha = 1/2``.
    """
    return f2 < 1.0 + (1.0 - f1**2) / (-1.0 - 2.0 * f1 + 2.0 * f1**2)


def _check_positive(**kw):
    for name, v in kw.items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")


def heating_threshold(omega: float, t_s: float) -> float:
    """Lowest channel temperature at which the ``|->`` outcome still heats the system.

    The bound ``T_S / 2`` does not depend on ``omega``.
    """
    _check_positive(omega=omega, t_s=t_s)
    return t_s / 2.0


def cooling_threshold(omega: float, t_s: float) -> float:
    """Highest channel temperature at which the ``|+>`` outcome still cools the system.

    ``omega / (2 artanh(sinh(x) / (cosh(x) + 2)))`` with ``x = omega / T_S``.
    The ratio is evaluated in a form that does not overflow; as ``T_S -> 0`` it
    tends to 1 and the threshold to 0.
    """
    _check_positive(omega=omega, t_s=t_s)
    x = omega / t_s
    e1, e2 = math.exp(-x), math.exp(-2.0 * x)
    ratio = (1.0 - e2) / (1.0 + e2 + 4.0 * e1)
    if ratio >= 1.0:
        return 0.0
    return omega / (2.0 * math.atanh(ratio))


def heat_at(te: float, t_s: float, omega: float = 1.0, alpha: float = ALPHA_PLUS, mode: Mode | str = Mode.ICO) -> HeatRecord:
    """One sweep point at channel temperature ``te`` (absolute, not a ratio)."""
    mode = Mode(mode)
    f1 = thermal_population(omega, t_s)
    p = thermal_population(omega, te)
    ratio = te / t_s
    if mode is Mode.CLASSICAL:
        dq_plus, dq_minus = classical_heat(f1, p, omega)
        return HeatRecord(ratio, dq_plus, dq_minus, 0.5, 0.5, p, p)
    run = run_switch if mode is Mode.ICO else coherent_control
    return heat_exchange(run(f1, alpha, p), f1, omega, ratio)


def te_grid(te_min: float = DEFAULT_GRID[0], te_max: float = DEFAULT_GRID[1], steps: int = DEFAULT_GRID[2]) -> np.ndarray:
    """Uniform grid of ``T_E / T_S`` ratios."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    return np.linspace(te_min, te_max, steps)


def sweep_heat(
    t_s: float,
    omega: float = 1.0,
    alpha: float = ALPHA_PLUS,
    grid: Sequence[float] | None = None,
    mode: Mode | str = Mode.ICO,
) -> list[HeatRecord]:
    """Heat records over a grid of ``T_E / T_S`` ratios, in grid order.

    ``mode`` picks the quantum switch (``ico``), the fixed-order reference with
    the control in ``|0>`` (``classical``) or coherent control of which channel
    acts (``coherent``).
    """
    _check_positive(omega=omega, t_s=t_s)
    grid = te_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be positive and strictly increasing")
    return [heat_at(r * t_s, t_s, omega, alpha, mode) for r in grid]


def find_sign_change(fn: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12) -> float:
    """Root of ``fn`` bracketed by ``[lo, hi]``."""
    return brentq(fn, lo, hi, xtol=xtol)


def locate_heat_zero(component: str, omega: float, t_s: float, lo: float, hi: float, alpha: float = ALPHA_PLUS) -> float:
    """Channel temperature in ``[lo, hi]`` where ``dQ+`` or ``dQ-`` of the switch vanishes."""
    attr = {"plus": "dq_plus", "minus": "dq_minus"}[component]
    return find_sign_change(lambda te: getattr(heat_at(te, t_s, omega, alpha), attr), lo, hi)
