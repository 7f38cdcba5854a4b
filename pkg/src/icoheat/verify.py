"""Randomised cross-check suites behind ``icoheat verify`` and ``icoheat photonic-check``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import completeness_deviation, make_thermalizing, random_channel
from .ico import coherent_kraus, run_switch, switch_kraus
from .photonic import (
    KRAUS_ANGLE_TABLE,
    PlateKind,
    WavePlateSetting,
    compose,
    jones_rz,
    mzi_operator,
    phase_aligned_distance,
    prep_angle,
    prepared_state,
    reconstruct_switch_state,
    rz_settings,
)
from .qmat import random_density, trace_distance
from .thermo import sweep_heat, te_grid
from .unfolded import UnfoldSetup, switch_constant_closed_form, switch_constant_kraus, unfolded_circuit


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tol: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<28} cases={self.cases:<6d} max_dev={self.max_deviation:.3e} tol={self.tol:.1e} {status}"


def unfolded_suite(trials: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    """Circuit vs closed form vs constant-channel switch on random qubit setups."""
    worst = 0.0
    for _ in range(trials):
        setup = UnfoldSetup(*(random_density(2, rng) for _ in range(4)))
        closed = switch_constant_closed_form(setup)
        worst = max(
            worst,
            trace_distance(unfolded_circuit(setup), closed),
            trace_distance(switch_constant_kraus(setup), closed),
        )
    return SuiteResult("unfolded-equivalence", worst, tol, trials)


def cptp_suite(trials: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    """Completeness of switched and coherently controlled random channels."""
    worst = 0.0
    for _ in range(trials):
        ch1 = random_channel(int(rng.integers(1, 5)), rng)
        ch2 = random_channel(int(rng.integers(1, 5)), rng)
        worst = max(
            worst,
            completeness_deviation(switch_kraus(ch1, ch2).ops),
            completeness_deviation(coherent_kraus(ch1, ch2).ops),
        )
    return SuiteResult("switch-cptp", worst, tol, trials)


def closed_form_suite(trials: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    """Sixteen-branch matrix evolution vs closed-form ``P+-`` and ``f+-``."""
    worst = 0.0
    for f1, p, alpha in rng.uniform(0.0, 1.0, size=(trials, 3)):
        worst = max(worst, run_switch(f1, alpha, p).deviation())
    return SuiteResult("closed-form-vs-matrix", worst, tol, trials)


def coherent_sign_suite(tol: float, steps: int = 200, t_s: float = 1.0, omega: float = 1.0) -> SuiteResult:
    """Coherent control never reverses heat flow.

    The deviation is the largest wrong-signed heat on the grid (heat at equal
    temperatures counts in full), so it is zero when every point flows from hot
    to cold.
    """
    worst = 0.0
    for rec in sweep_heat(t_s, omega, 0.5, te_grid(0.25, 2.0, steps), mode="coherent"):
        direction = math.copysign(1.0, rec.te_over_ts - 1.0) if rec.te_over_ts != 1.0 else 0.0
        for dq in (rec.dq_plus, rec.dq_minus):
            worst = max(worst, abs(dq) if direction == 0.0 else max(0.0, -direction * dq))
    return SuiteResult("coherent-control-sign", worst, tol, steps)


def run_verify(trials: int, seed: int, tol: float) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    return [
        unfolded_suite(trials, rng, tol),
        cptp_suite(trials, rng, tol),
        closed_form_suite(trials, rng, tol),
        coherent_sign_suite(tol),
    ]


def rz_suite(trials: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    worst = 0.0
    for alpha in rng.uniform(-4 * math.pi, 4 * math.pi, size=trials):
        worst = max(worst, phase_aligned_distance(compose(rz_settings(alpha)), jones_rz(alpha)))
    return SuiteResult("rz-decomposition", worst, tol, trials)


def unitarity_suite(trials: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    worst = 0.0
    for theta in rng.uniform(-math.pi, math.pi, size=trials):
        for kind in PlateKind:
            u = WavePlateSetting(kind, theta).matrix
            worst = max(worst, float(np.max(np.abs(u.conj().T @ u - np.eye(2)))))
    return SuiteResult("waveplate-unitarity", worst, tol, 2 * trials)


def kraus_table_suite(tol: float, ps=(0.5, 0.625, 0.75, 0.875, 1.0)) -> SuiteResult:
    """Table rows times ``sqrt(weight)`` reproduce the thermalizing operators up to phase."""
    worst = 0.0
    for p in ps:
        for row, k in zip(KRAUS_ANGLE_TABLE, make_thermalizing(p).ops):
            candidate = math.sqrt(row.weight(p)) * mzi_operator(row.angles)
            if np.allclose(k, 0.0) and np.allclose(candidate, 0.0):
                continue
            worst = max(worst, phase_aligned_distance(candidate, k))
    return SuiteResult("kraus-angle-table", worst, tol, 4 * len(ps))


def reconstruction_suite(tol: float) -> SuiteResult:
    """Sixteen-run reconstruction vs the switch on a 10 x 10 x 3 grid."""
    worst = 0.0
    grid = np.linspace(0.0, 1.0, 10)
    for f1 in grid:
        for p in grid:
            for alpha in (0.0, 0.5, 1 / math.sqrt(2)):
                a, b = reconstruct_switch_state(f1, p, alpha), run_switch(f1, alpha, p)
                worst = max(worst, float(np.max(np.abs(a.joint - b.joint))))
                for x, y in ((a.p_plus, b.p_plus), (a.p_minus, b.p_minus), (a.f_plus, b.f_plus), (a.f_minus, b.f_minus)):
                    if not (math.isnan(x) and math.isnan(y)):
                        worst = max(worst, abs(x - y))
    return SuiteResult("sixteen-run-reconstruction", worst, tol, grid.size**2 * 3)


def prep_suite(trials: int, rng: np.random.Generator, tol: float) -> SuiteResult:
    worst = 0.0
    for f1 in rng.uniform(0.0, 1.0, size=trials):
        theta = prep_angle(f1)
        worst = max(worst, abs(math.cos(2 * theta) ** 2 - f1), abs(prepared_state(theta)[0, 0].real - f1))
    return SuiteResult("prep-angle-roundtrip", worst, tol, trials)


def run_photonic_check(trials: int, seed: int, tol: float) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    return [
        rz_suite(trials, rng, tol),
        unitarity_suite(trials, rng, tol),
        kraus_table_suite(tol),
        reconstruction_suite(tol),
        prep_suite(trials, rng, tol),
    ]

