"""Quantum switch of two qubit channels and the coherently controlled comparison.

Joint states are ordered control (most significant) then system, i.e. the
``|c> (x) |s>`` layout. The control is prepared in
``sqrt(alpha)|0> + sqrt(1 - alpha)|1>`` and read out in the ``|+>, |->`` basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channels import KrausChannel, make_thermalizing
from .qmat import (
    DensityMatrix,
    DimensionError,
    as_matrix,
    dagger,
    kraus_ops,
    kron,
    outer,
    thermal_state,
)

# |+>_c has alpha = 1/2; alpha = 1/sqrt(2) is kept as an alternative weight.
ALPHA_PLUS = 0.5
ALPHA_ROOT_HALF = 1 / math.sqrt(2)
MIN_OUTCOME_PROB = 1e-14

P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)
PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2)
MINUS = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class ControlState:
    """Pure control qubit ``sqrt(alpha)|0> + sqrt(1 - alpha)|1>``."""

    alpha: float = ALPHA_PLUS

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def ket(self) -> np.ndarray:
        return np.array([math.sqrt(self.alpha), math.sqrt(1.0 - self.alpha)], dtype=complex)

    @property
    def rho(self) -> DensityMatrix:
        return DensityMatrix(outer(self.ket))

    @property
    def coherence(self) -> float:
        """``sqrt(alpha (1 - alpha))``, the off-diagonal weight of ``rho``."""
        return math.sqrt(self.alpha * (1.0 - self.alpha))


def _control(ctrl) -> ControlState:
    return ctrl if isinstance(ctrl, ControlState) else ControlState(float(ctrl))


class ClosedForm(NamedTuple):
    p_plus: float
    p_minus: float
    f_plus: float
    f_minus: float


@dataclass(frozen=True, eq=False)
class SwitchOutcome:
    """Control-measurement result on a joint control-system state.

    A state is ``None`` (and its population ``nan``) when its outcome
    probability does not exceed ``MIN_OUTCOME_PROB``.
    """

    rho_plus: DensityMatrix | None
    rho_minus: DensityMatrix | None
    p_plus: float
    p_minus: float
    f_plus: float
    f_minus: float
    joint: np.ndarray | None = None
    closed_form: ClosedForm | None = None

    def deviation(self) -> float:
        """Largest gap between the matrix result and ``closed_form``."""
        if self.closed_form is None:
            raise ValueError("no closed form attached to this outcome")
        mine = (self.p_plus, self.p_minus, self.f_plus, self.f_minus)
        gaps = [abs(a - b) for a, b in zip(mine, self.closed_form) if not (math.isnan(a) and math.isnan(b))]
        if any(math.isnan(g) for g in gaps):
            return math.inf
        return max(gaps)


def switch_kraus(ch1: KrausChannel, ch2: KrausChannel) -> KrausChannel:
    """Kraus operators of the quantum switch on control (x) system.

    ``W_ij = |0><0| (x) K1_i K2_j + |1><1| (x) K2_j K1_i``, listed with ``i``
    (first channel) as the slow index. Vanishing operators are kept so that
    position ``i * len(ch2) + j`` always holds ``W_ij``.
    """
    k1, k2 = kraus_ops(ch1), kraus_ops(ch2)
    if not k1 or not k2:
        raise DimensionError("both channels need at least one Kraus operator")
    if k1[0].shape != k2[0].shape:
        raise DimensionError(f"channel dims differ: {k1[0].shape} vs {k2[0].shape}")
    ops = tuple(kron(P0, a @ b) + kron(P1, b @ a) for a in k1 for b in k2)
    return KrausChannel(ops, label="switch")


def coherent_kraus(ch1: KrausChannel, ch2: KrausChannel) -> KrausChannel:
    """Coherent control of *which* channel acts, normalised to be trace preserving.

    ``M_ij = (|0><0| (x) K1_j + |1><1| (x) K2_i) / sqrt(n)``. Summing the
    unscaled operators over both free indices counts each channel ``n`` times,
    so the scale restores completeness. The shorter operator list is padded
    with zeros to a common length ``n``.
    """
    k1, k2 = kraus_ops(ch1), kraus_ops(ch2)
    if k1[0].shape != k2[0].shape:
        raise DimensionError(f"channel dims differ: {k1[0].shape} vs {k2[0].shape}")
    n = max(len(k1), len(k2))
    zero = np.zeros_like(k1[0])
    k1 = k1 + [zero] * (n - len(k1))
    k2 = k2 + [zero] * (n - len(k2))
    scale = 1.0 / math.sqrt(n)
    ops = tuple(scale * (kron(P0, a) + kron(P1, b)) for b in k2 for a in k1)
    return KrausChannel(ops, label="coherent-control")


def _control_matrix(ctrl) -> np.ndarray:
    if isinstance(ctrl, DensityMatrix):
        return ctrl.mat
    return _control(ctrl).rho.mat


def evolve_joint(ops, ctrl, rho_sys) -> np.ndarray:
    """``sum_k W_k (rho_c (x) rho_s) W_k^H`` for control (x) system operators.

    ``ctrl`` is a :class:`ControlState`, its ``alpha`` or, for a mixed control,
    a :class:`DensityMatrix`.
    """
    joint_in = kron(_control_matrix(ctrl), as_matrix(rho_sys))
    out = np.zeros_like(joint_in)
    for w in kraus_ops(ops):
        out = out + w @ joint_in @ dagger(w)
    return out


def project_control(joint: np.ndarray, sign: int) -> np.ndarray:
    """Unnormalised system block ``<+-|_c joint |+->_c`` (sign = +1 or -1)."""
    joint = as_matrix(joint)
    d = joint.shape[0] // 2
    b = joint.reshape(2, d, 2, d)
    return 0.5 * (b[0, :, 0, :] + b[1, :, 1, :] + sign * (b[0, :, 1, :] + b[1, :, 0, :]))


def _conditional(block: np.ndarray) -> tuple[DensityMatrix | None, float, float]:
    prob = float(np.trace(block).real)
    if prob <= MIN_OUTCOME_PROB:
        return None, max(prob, 0.0), math.nan
    state = block / prob
    state = (state + dagger(state)) / 2
    rho = DensityMatrix(state)
    f = float(state[0, 0].real) if state.shape[0] == 2 else math.nan
    return rho, prob, f


def measure_control(joint: np.ndarray, closed_form: ClosedForm | None = None) -> SwitchOutcome:
    rp, pp, fp = _conditional(project_control(joint, +1))
    rm, pm, fm = _conditional(project_control(joint, -1))
    return SwitchOutcome(rp, rm, pp, pm, fp, fm, joint=as_matrix(joint), closed_form=closed_form)


def evolve_switch(ch1: KrausChannel, ch2: KrausChannel, rho_sys, ctrl) -> SwitchOutcome:
    """Run an arbitrary pair of channels through the switch and measure the control."""
    return measure_control(evolve_joint(switch_kraus(ch1, ch2), ctrl, rho_sys))


def switch_closed_form(f1: float, p: float, alpha: float) -> ClosedForm:
    """Outcome probabilities and conditional populations for two thermalizing channels.

    ``P+- = 1/2 +- s [(1 - f1)(1 - p)^2 + f1 p^2]`` and
    ``f+- = [p +- 2 s f1 p^2] / (2 P+-)`` with ``s = sqrt(alpha (1 - alpha))``.
    """
    s = math.sqrt(alpha * (1.0 - alpha))
    overlap = (1.0 - f1) * (1.0 - p) ** 2 + f1 * p**2
    p_plus = 0.5 + s * overlap
    p_minus = 0.5 - s * overlap

    def cond(sign, prob):
        if prob <= MIN_OUTCOME_PROB:
            return math.nan
        return (p + sign * 2.0 * s * f1 * p**2) / (2.0 * prob)

    return ClosedForm(p_plus, p_minus, cond(+1, p_plus), cond(-1, p_minus))


def _check_inputs(f1: float, p: float):
    if not 0.0 <= f1 <= 1.0:
        raise ValueError(f"system population must lie in [0, 1], got {f1}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"channel population must lie in [0, 1], got {p}")


def run_switch(f1: float, ctrl, p: float) -> SwitchOutcome:
    """Switch two identical thermalizing channels (population ``p``) on ``diag(f1, 1 - f1)``.

    Builds the joint state by summing all sixteen ``W_ij`` branches, projects
    the control and attaches the closed-form prediction for cross-checking.
    """
    _check_inputs(f1, p)
    ctrl = _control(ctrl)
    ch = make_thermalizing(p)
    joint = evolve_joint(switch_kraus(ch, ch), ctrl, thermal_state(f1))
    return measure_control(joint, switch_closed_form(f1, p, ctrl.alpha))


def classical_heat(f1: float, p: float, omega: float) -> tuple[float, float]:
    """Heat per outcome when the control sits in ``|0>``: both equal ``omega (p - f1) / 2``."""
    _check_inputs(f1, p)
    dq = 0.5 * omega * (p - f1)
    return dq, dq


def coherent_control(f1: float, ctrl, p: float) -> SwitchOutcome:
    """Coherently controlled choice between two thermalizing channels at population ``p``."""
    _check_inputs(f1, p)
    ch = make_thermalizing(p)
    joint = evolve_joint(coherent_kraus(ch, ch), _control(ctrl), thermal_state(f1))
    return measure_control(joint)


def sequential(ch_first: KrausChannel, ch_second: KrausChannel, rho_sys) -> np.ndarray:
    """``ch_second(ch_first(rho))`` as an array."""
    m = as_matrix(rho_sys)
    for ch in (ch_first, ch_second):
        m = sum(k @ m @ dagger(k) for k in kraus_ops(ch))
    return m
