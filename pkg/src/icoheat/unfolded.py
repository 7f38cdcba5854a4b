"""Controlled-SWAP circuits that reproduce the quantum switch of constant channels.

The four-register circuit acts on ``E1 (x) E2 (x) T (x) C`` (E1 most
significant, control C least significant):

    cSWAP(E1, E2; C) -> SWAP(E1, E2) -> cSWAP(E2, T; C) -> trace out E2 and T

leaving a state on ``E1 (x) C``. Control ``|0>`` acts as identity and ``|1>``
swaps. Outputs here are ordered system then control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channels import make_constant
from .ico import MIN_OUTCOME_PROB, evolve_joint, project_control, switch_kraus
from .qmat import (
    DensityMatrix,
    as_matrix,
    dagger,
    kron,
    outer,
    partial_trace,
    permute_subsystems,
)

PLUS_STATE = np.full((2, 2), 0.5, dtype=complex)


@dataclass(frozen=True, eq=False)
class UnfoldSetup:
    """Constant-channel outputs ``tau1, tau2``, target ``rho`` and control ``gamma``."""

    tau1: DensityMatrix
    tau2: DensityMatrix
    rho: DensityMatrix
    gamma: DensityMatrix

    def __post_init__(self):
        for name in ("tau1", "tau2", "rho", "gamma"):
            value = getattr(self, name)
            if not isinstance(value, DensityMatrix):
                value = DensityMatrix(value)
                object.__setattr__(self, name, value)
            if value.dim != 2:
                raise ValueError(f"{name} must be a qubit state")


@lru_cache(maxsize=None)
def swap_gate(n_qubits: int, a: int, b: int) -> np.ndarray:
    """Permutation matrix exchanging qubits ``a`` and ``b`` (qubit 0 most significant)."""
    dim = 2**n_qubits
    u = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        bits = [(idx >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
        bits[a], bits[b] = bits[b], bits[a]
        out = sum(bit << (n_qubits - 1 - q) for q, bit in enumerate(bits))
        u[out, idx] = 1.0
    u.setflags(write=False)
    return u


@lru_cache(maxsize=None)
def cswap_gate(n_qubits: int, a: int, b: int, control: int) -> np.ndarray:
    """Fredkin gate: swap ``a`` and ``b`` when ``control`` is ``|1>``."""
    dim = 2**n_qubits
    shift = n_qubits - 1 - control
    ctrl_on = np.array([(idx >> shift) & 1 for idx in range(dim)], dtype=bool)
    u = np.where(ctrl_on[None, :], swap_gate(n_qubits, a, b), np.eye(dim))
    u = np.ascontiguousarray(u, dtype=complex)
    u.setflags(write=False)
    return u


E1, E2, T, C = range(4)


@lru_cache(maxsize=None)
def _circuit_unitary() -> np.ndarray:
    u = cswap_gate(4, E2, T, C) @ swap_gate(4, E1, E2) @ cswap_gate(4, E1, E2, C)
    u.setflags(write=False)
    return u


def circuit_output(env1, env2, target, control) -> np.ndarray:
    """Run the four-register circuit with ``env1`` loaded into E1 and ``env2`` into E2.

    Returns the reduced ``E1 (x) C`` state as a 4x4 array.
    """
    u = _circuit_unitary()
    state = kron(env1, env2, target, control)
    out = u @ state @ dagger(u)
    return partial_trace(out, [2, 2, 2, 2], [E1, C])


def unfolded_circuit(setup: UnfoldSetup) -> DensityMatrix:
    """Circuit realisation of the switch of two constant channels.

    With E1 prepared in ``tau_a`` and E2 in ``tau_b`` the control-``|0>``
    branch leaves ``tau_b`` in E1, so ``tau2`` goes into E1 and ``tau1`` into E2
    to line the branches up with the switch, whose ``|0>`` branch applies the
    first channel last.
    """
    out = circuit_output(setup.tau2, setup.tau1, setup.rho, setup.gamma)
    return DensityMatrix((out + dagger(out)) / 2)


def switch_constant_closed_form(setup: UnfoldSetup) -> DensityMatrix:
    """``c00 t1 (x) |0><0| + c11 t2 (x) |1><1| + c01 t1 rho t2 (x) |0><1| + c10 t2 rho t1 (x) |1><0|``."""
    t1, t2, rho, c = setup.tau1.mat, setup.tau2.mat, setup.rho.mat, setup.gamma.mat

    def unit(i, j):
        m = np.zeros((2, 2), dtype=complex)
        m[i, j] = 1.0
        return m

    out = (
        c[0, 0] * kron(t1, unit(0, 0))
        + c[1, 1] * kron(t2, unit(1, 1))
        + c[0, 1] * kron(t1 @ rho @ t2, unit(0, 1))
        + c[1, 0] * kron(t2 @ rho @ t1, unit(1, 0))
    )
    return DensityMatrix((out + dagger(out)) / 2)


def switch_constant_kraus(setup: UnfoldSetup) -> DensityMatrix:
    """The same output obtained from the sixteen switch operators of two constant channels."""
    ops = switch_kraus(make_constant(setup.tau1), make_constant(setup.tau2))
    joint = evolve_joint(ops, setup.gamma, setup.rho)
    # evolve_joint works on control (x) system; reorder to system (x) control
    out = permute_subsystems(joint, [2, 2], [1, 0])
    return DensityMatrix((out + dagger(out)) / 2)


def pure_state_expression(psi1, psi2, phi, c) -> np.ndarray:
    """Term-by-term pure-state output of the circuit with ``psi1`` in E1 and ``psi2`` in E2.

    ``|c0|^2 |psi2><psi2| (x) |0><0| + |c1|^2 |psi1><psi1| (x) |1><1|
    + c0 c1* <phi|psi1><psi2|phi> |psi2><psi1| (x) |0><1| + h.c.``
    """
    psi1, psi2, phi, c = (np.asarray(v, dtype=complex) for v in (psi1, psi2, phi, c))
    c0, c1 = c
    zero, one = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    amp01 = c0 * np.conj(c1) * np.vdot(phi, psi1) * np.vdot(psi2, phi)
    amp10 = c1 * np.conj(c0) * np.vdot(phi, psi2) * np.vdot(psi1, phi)
    return (
        abs(c0) ** 2 * kron(outer(psi2), outer(zero))
        + abs(c1) ** 2 * kron(outer(psi1), outer(one))
        + amp01 * kron(outer(psi2, psi1), outer(zero, one))
        + amp10 * kron(outer(psi1, psi2), outer(one, zero))
    )


@dataclass(frozen=True, eq=False)
class CswapOutcome:
    rho_plus: DensityMatrix | None
    rho_minus: DensityMatrix | None
    p_plus: float
    p_minus: float
    closed_form: "CswapOutcome | None" = None

    def deviation(self) -> float:
        """Largest entrywise / probability gap to ``closed_form``."""
        other = self.closed_form
        if other is None:
            raise ValueError("no closed form attached")
        gaps = [abs(self.p_plus - other.p_plus), abs(self.p_minus - other.p_minus)]
        for mine, theirs in ((self.rho_plus, other.rho_plus), (self.rho_minus, other.rho_minus)):
            if (mine is None) != (theirs is None):
                return math.inf
            if mine is not None:
                gaps.append(float(np.max(np.abs(mine.mat - theirs.mat))))
        return max(gaps)


def _normalise(block: np.ndarray) -> tuple[DensityMatrix | None, float]:
    prob = float(np.trace(block).real)
    if prob <= MIN_OUTCOME_PROB:
        return None, max(prob, 0.0)
    state = block / prob
    return DensityMatrix((state + dagger(state)) / 2), prob


def cswap_closed_form(tau1, tau2) -> CswapOutcome:
    """``rho+- = (t1 + t2 +- t1^2 t2 +- t2 t1^2) / (2 (1 +- Tr[t1^2 t2]))``."""
    t1, t2 = as_matrix(tau1), as_matrix(tau2)
    cross = t1 @ t1 @ t2 + t2 @ t1 @ t1
    rp, pp = _normalise(0.25 * (t1 + t2 + cross))
    rm, pm = _normalise(0.25 * (t1 + t2 - cross))
    return CswapOutcome(rp, rm, pp, pm)


def _measure_system_control(out: np.ndarray) -> tuple:
    joint = permute_subsystems(out, [2, 2], [1, 0])
    rp, pp = _normalise(project_control(joint, +1))
    rm, pm = _normalise(project_control(joint, -1))
    return rp, rm, pp, pm


def cswap_two_qubit(tau1, tau2) -> CswapOutcome:
    """Conditional state of the first target after a ``|+>``-controlled swap with ``tau2``.

    The printed closed form carries ``tau1^2 tau2``: the target qubit in
    ``tau1`` is routed through the controlled-SWAP circuit above, whose
    registers hold ``tau1`` and ``tau2``. This is simulated directly
    (16-dimensional, target prepared in ``tau1``, control ``|+>``, readout in
    the ``+-`` basis) and the closed form is attached for comparison. For the
    bare single-gate circuit see :func:`single_cswap`.
    """
    t1, t2 = DensityMatrix(tau1), DensityMatrix(tau2)
    out = circuit_output(t2, t1, t1, PLUS_STATE)
    rp, rm, pp, pm = _measure_system_control(out)
    return CswapOutcome(rp, rm, pp, pm, closed_form=cswap_closed_form(t1, t2))


def single_cswap_closed_form(tau1, tau2) -> CswapOutcome:
    """``rho+- = (t1 + t2 +- t1 t2 +- t2 t1) / (2 (1 +- Tr[t1 t2]))``."""
    t1, t2 = as_matrix(tau1), as_matrix(tau2)
    cross = t1 @ t2 + t2 @ t1
    rp, pp = _normalise(0.25 * (t1 + t2 + cross))
    rm, pm = _normalise(0.25 * (t1 + t2 - cross))
    return CswapOutcome(rp, rm, pp, pm)


def single_cswap(tau1, tau2) -> CswapOutcome:
    """One Fredkin gate on ``tau1 (x) tau2 (x) |+><+|``, second target discarded."""
    u = cswap_gate(3, 0, 1, 2)
    state = kron(tau1, tau2, PLUS_STATE)
    out = partial_trace(u @ state @ dagger(u), [2, 2, 2], [0, 2])
    rp, rm, pp, pm = _measure_system_control(out)
    return CswapOutcome(rp, rm, pp, pm, closed_form=single_cswap_closed_form(tau1, tau2))


def cswap_is_gibbs_preserving(tau, gamma) -> float:
    """Max entrywise change of ``tau (x) tau (x) gamma`` under the Fredkin gate.

    Zero for any diagonal ``gamma``; control coherences are not preserved.
    """
    u = cswap_gate(3, 0, 1, 2)
    state = kron(tau, tau, gamma)
    return float(np.max(np.abs(u @ state @ dagger(u) - state)))
