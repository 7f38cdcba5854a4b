"""Jones-calculus side of the photonic simulation.

Polarisation basis: ``|H>`` is index 0 (excited ``|e>``), ``|V>`` index 1
(ground ``|g>``). Covers wave-plate matrices, the ``R_Z`` decomposition used
for the adiabatic strokes, thermal-state preparation angles, the HWP settings
that realise each thermalizing Kraus operator, and the sixteen-run
reconstruction of the switch output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ico import P0, P1, SwitchOutcome, _control, measure_control
from .qmat import as_matrix, dagger, kron, thermal_state

QUARTER = math.pi / 4


class PlateKind(str, Enum):
    HWP = "HWP"
    QWP = "QWP"


def hwp(theta: float) -> np.ndarray:
    """Half-wave plate with fast axis at ``theta``."""
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    return np.array([[c, s], [s, -c]], dtype=complex)


def qwp(theta: float) -> np.ndarray:
    """Quarter-wave plate with fast axis at ``theta``."""
    c, s = math.cos(theta), math.sin(theta)
    off = (1 - 1j) * s * c
    return np.array([[c * c + 1j * s * s, off], [off, s * s + 1j * c * c]], dtype=complex)


@dataclass(frozen=True)
class WavePlateSetting:
    kind: PlateKind
    theta: float

    @property
    def matrix(self) -> np.ndarray:
        return hwp(self.theta) if PlateKind(self.kind) is PlateKind.HWP else qwp(self.theta)


def compose(settings) -> np.ndarray:
    """Jones matrix of plates listed in matrix-product order (leftmost acts last)."""
    out = np.eye(2, dtype=complex)
    for s in settings:
        out = out @ s.matrix
    return out


def jones_rz(alpha: float) -> np.ndarray:
    """``exp(-i alpha sigma_z / 2) = diag(e^{-i alpha/2}, e^{i alpha/2})``."""
    return np.diag([np.exp(-0.5j * alpha), np.exp(0.5j * alpha)])


def rz_settings(alpha: float) -> list[WavePlateSetting]:
    """``QWP@pi/4 . HWP@alpha/2 . HWP@alpha/4 . QWP@-pi/4``."""
    return [
        WavePlateSetting(PlateKind.QWP, QUARTER),
        WavePlateSetting(PlateKind.HWP, alpha / 2),
        WavePlateSetting(PlateKind.HWP, alpha / 4),
        WavePlateSetting(PlateKind.QWP, -QUARTER),
    ]


def phase_aligned_distance(a, b) -> float:
    """Trace norm of ``a - e^{i phi} b`` with the global phase ``phi`` that best aligns them."""
    a, b = as_matrix(a), as_matrix(b)
    inner = np.trace(dagger(b) @ a)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.sum(np.linalg.svd(a - phase * b, compute_uv=False)))


def adiabat_angle(omega1: float, omega2: float, tau: float) -> float:
    """Rotation angle ``integral of omega(t) dt = (omega1 + omega2) tau / 2`` for a linear ramp."""
    for name, v in (("omega1", omega1), ("omega2", omega2), ("tau", tau)):
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")
    return 0.5 * (omega1 + omega2) * tau


def prep_angle(f1: float) -> float:
    """HWP angle in ``[0, pi/4]`` giving excited population ``f1 = cos^2(2 theta)``."""
    if not 0.0 <= f1 <= 1.0:
        raise ValueError(f"population must lie in [0, 1], got {f1}")
    return 0.5 * math.acos(math.sqrt(f1))


def prepared_state(theta: float) -> np.ndarray:
    """``|H>`` through ``HWP@theta`` then fully dephased by the unbalanced interferometer."""
    amp = hwp(theta) @ np.array([1.0, 0.0], dtype=complex)
    return np.diag(np.abs(amp) ** 2).astype(complex)


@dataclass(frozen=True)
class KrausAngleRow:
    kraus_index: int
    angles: tuple[float, float, float, float]
    excites: bool  # True for the sqrt(p) operators, False for sqrt(1 - p)

    def weight(self, p: float) -> float:
        return p if self.excites else 1.0 - p


KRAUS_ANGLE_TABLE = (
    KrausAngleRow(0, (0.0, 0.0, QUARTER, 0.0), True),
    KrausAngleRow(1, (QUARTER, 0.0, QUARTER, 0.0), True),
    KrausAngleRow(2, (0.0, QUARTER, 0.0, 0.0), False),
    KrausAngleRow(3, (QUARTER, QUARTER, 0.0, 0.0), False),
)

_PH = np.diag([1.0, 0.0]).astype(complex)
_PV = np.diag([0.0, 1.0]).astype(complex)


def mzi_operator(angles) -> np.ndarray:
    """Net linear map of the four-HWP interferometer for one angle setting.

    HWP1 acts on the input; the first PBS sends H into an arm holding HWP2 and
    V into an arm holding HWP3; the second PBS keeps H from the first arm and
    V from the second on the monitored port; HWP4 acts on the output.
    """
    t1, t2, t3, t4 = angles
    inner = _PH @ hwp(t2) @ _PH + _PV @ hwp(t3) @ _PV
    return hwp(t4) @ inner @ hwp(t1)


@dataclass(frozen=True, eq=False)
class SwitchBranch:
    """One of the sixteen runs: Kraus pair ``(i, j)``, its post-processing weight and raw output."""

    i: int
    j: int
    weight: float
    operator: np.ndarray
    state: np.ndarray

    @property
    def vanishes(self) -> bool:
        return bool(np.allclose(self.operator, 0.0, atol=1e-15))


def switch_branches(f1: float, p: float, alpha: float) -> list[SwitchBranch]:
    """Run each Kraus pair through the switch without its ``p`` weights.

    Each branch applies ``|0><0| (x) A_i A_j + |1><1| (x) A_j A_i`` to the
    initial control (x) system state, where ``A_i`` is the interferometer map of
    table row ``i``; the weight ``w_i w_j`` is what post-processing multiplies
    the measured state by.
    """
    ctrl = _control(alpha)
    joint_in = kron(ctrl.rho.mat, thermal_state(f1).mat)
    ops = [mzi_operator(row.angles) for row in KRAUS_ANGLE_TABLE]
    branches = []
    for row_i, a in zip(KRAUS_ANGLE_TABLE, ops):
        for row_j, b in zip(KRAUS_ANGLE_TABLE, ops):
            w = kron(P0, a @ b) + kron(P1, b @ a)
            branches.append(
                SwitchBranch(
                    i=row_i.kraus_index,
                    j=row_j.kraus_index,
                    weight=row_i.weight(p) * row_j.weight(p),
                    operator=w,
                    state=w @ joint_in @ dagger(w),
                )
            )
    return branches


def reconstruct_switch_state(f1: float, p: float, alpha: float) -> SwitchOutcome:
    """Weighted sum of the sixteen branch outputs, then control readout."""
    if not 0.0 <= p <= 1.0 or not 0.0 <= f1 <= 1.0:
        raise ValueError("populations must lie in [0, 1]")
    joint = sum(b.weight * b.state for b in switch_branches(f1, p, alpha))
    return measure_control(joint)
