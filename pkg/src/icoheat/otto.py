"""Four-stroke Otto cycle whose hot-side isochore is driven by the quantum switch.

Stroke I compresses the frequency ``omega1 -> omega2`` on the thermal state at
``(omega1, T4)``; Stroke II switches two channels at ``T2`` and keeps the cycle
going only on the ``|->`` control outcome (failures are reset and retried);
Stroke III expands back to ``omega1``; Stroke IV rethermalizes at ``T4`` and the
demon's one-bit record is erased at cost ``T_r * dS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Sequence

from scipy.special import entr

from .ico import ALPHA_PLUS, MIN_OUTCOME_PROB, run_switch
from .qmat import thermal_population


class CycleImpossibleError(ValueError):
    """The ``|->`` outcome has (numerically) zero probability."""


@dataclass(frozen=True)
class OttoConfig:
    omega1: float
    omega2: float
    t2: float
    t4: float
    t_r: float | None = None  # defaults to t4
    alpha: float = ALPHA_PLUS

    def __post_init__(self):
        if not self.omega1 > 0 or self.omega2 < self.omega1:
            raise ValueError(f"need omega2 >= omega1 > 0, got {self.omega1}, {self.omega2}")
        if not 0 < self.t2 <= self.t4:
            raise ValueError(f"need 0 < t2 <= t4, got t2={self.t2}, t4={self.t4}")
        if self.t_r is not None and not self.t_r > 0:
            raise ValueError(f"t_r must be positive, got {self.t_r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def ratio(self) -> float:
        return self.omega2 / self.omega1

    @property
    def reset_temperature(self) -> float:
        return self.t4 if self.t_r is None else self.t_r

    @property
    def t1(self) -> float:
        """System temperature right after the compression stroke."""
        return self.t4 * self.omega2 / self.omega1


@dataclass(frozen=True)
class OttoReport:
    """Signed energy ledger of one successful cycle (positive = into the system).

    ``reset_heat`` is the mean heat exchanged with the auxiliary reset channel
    over the failed Stroke II attempts. It is diagnostic only and is not part
    of ``cop``.
    """

    ratio: float
    w1: float
    q2: float
    w3: float
    q4: float
    w_net: float
    p_plus: float
    p_minus: float
    f1: float
    f2: float
    f_minus: float
    delta_s: float
    w_era: float
    cop: float
    attempts: float
    reset_heat: float
    possible: bool = True

    @property
    def ledger_residual(self) -> float:
        return self.w1 + self.q2 + self.w3 + self.q4

    @classmethod
    def impossible(cls, ratio: float) -> "OttoReport":
        nan = math.nan
        values = {f.name: nan for f in fields(cls)}
        values.update(ratio=ratio, possible=False)
        return cls(**values)


def expected_attempts(p_minus: float) -> float:
    """Mean number of Stroke II trials until the first ``|->`` outcome."""
    if not p_minus > 0:
        raise ValueError(f"success probability must be positive, got {p_minus}")
    if p_minus > 1:
        raise ValueError(f"success probability exceeds 1: {p_minus}")
    return 1.0 / p_minus


def shannon_entropy(*probs: float) -> float:
    """Entropy in nats; zero-probability terms contribute nothing."""
    return float(sum(entr(p) for p in probs))


def run_cycle(cfg: OttoConfig) -> OttoReport:
    """Evaluate every stroke of one cycle.

    Raises:
        CycleImpossibleError: if the ``|->`` outcome probability is below 1e-14.
    """
    w_lo, w_hi = cfg.omega1, cfg.omega2
    f1 = thermal_population(w_lo, cfg.t4)
    f2 = thermal_population(w_hi, cfg.t2)

    # the adiabat keeps populations, so Stroke II starts from f1 at omega2
    out = run_switch(f1, cfg.alpha, f2)
    if out.p_minus < MIN_OUTCOME_PROB:
        raise CycleImpossibleError(f"P- = {out.p_minus:.3e} at omega2/omega1 = {cfg.ratio:g}")
    f_minus = out.f_minus

    w1 = (w_hi - w_lo) * (f1 - 0.5)
    q2 = w_hi * (f_minus - f1)
    w3 = (w_lo - w_hi) * (f_minus - 0.5)
    q4 = w_lo * (f1 - f_minus)
    w_net = w1 + w3

    delta_s = shannon_entropy(out.p_minus, out.p_plus)
    w_era = cfg.reset_temperature * delta_s
    cost = w_era / out.p_minus
    cop = (q2 + abs(w_net)) / cost if cost > 0 else math.inf

    attempts = expected_attempts(out.p_minus)
    # each failure leaves f+ and is reset to f1 at omega2
    failed_heat = w_hi * (f1 - out.f_plus) if out.p_plus > MIN_OUTCOME_PROB else 0.0
    reset_heat = (attempts - 1.0) * failed_heat

    return OttoReport(
        ratio=cfg.ratio,
        w1=w1,
        q2=q2,
        w3=w3,
        q4=q4,
        w_net=w_net,
        p_plus=out.p_plus,
        p_minus=out.p_minus,
        f1=f1,
        f2=f2,
        f_minus=f_minus,
        delta_s=delta_s,
        w_era=w_era,
        cop=cop,
        attempts=attempts,
        reset_heat=reset_heat,
    )


def sweep_ratio(cfg_base: OttoConfig, ratio_grid: Sequence[float]) -> list[OttoReport]:
    """One report per ``omega2 / omega1`` in ``ratio_grid``.

    Points where the cycle cannot run come back as ``OttoReport.impossible``.
    """
    reports = []
    for r in ratio_grid:
        if r < 1:
            raise ValueError(f"ratios must be >= 1, got {r}")
        cfg = replace(cfg_base, omega2=float(r) * cfg_base.omega1)
        try:
            reports.append(run_cycle(cfg))
        except CycleImpossibleError:
            reports.append(OttoReport.impossible(float(r)))
    return reports


def cop_argmax(reports: Sequence[OttoReport]) -> OttoReport:
    valid = [r for r in reports if r.possible and not math.isnan(r.cop)]
    if not valid:
        raise ValueError("no runnable cycle in the sweep")
    return max(valid, key=lambda r: r.cop)
