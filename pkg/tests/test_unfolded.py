import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icoheat.qmat import kron, outer, random_density, random_pure, thermal_state, trace_distance
from icoheat.unfolded import (
    PLUS_STATE,
    UnfoldSetup,
    circuit_output,
    cswap_closed_form,
    cswap_gate,
    cswap_is_gibbs_preserving,
    cswap_two_qubit,
    pure_state_expression,
    single_cswap,
    swap_gate,
    switch_constant_closed_form,
    switch_constant_kraus,
    unfolded_circuit,
)

TAU = np.diag([0.25, 0.75])


def test_gates_are_permutations():
    for u in (swap_gate(3, 0, 2), cswap_gate(4, 1, 2, 3)):
        assert np.allclose(u @ u, np.eye(u.shape[0]))
        assert np.allclose(np.abs(u).sum(axis=0), 1)
    # |1>|0>|1> -> |0>|1>|1> when the control (qubit 2) is set
    assert cswap_gate(3, 0, 1, 2)[0b011, 0b101] == 1


def test_single_branch_controls():
    rng = np.random.default_rng(0)
    t1, t2, rho = (random_density(2, rng) for _ in range(3))
    zero = UnfoldSetup(t1, t2, rho, np.diag([1.0, 0.0]))
    assert np.allclose(switch_constant_closed_form(zero).mat, kron(t1.mat, np.diag([1, 0])), atol=1e-12)
    assert trace_distance(unfolded_circuit(zero), switch_constant_closed_form(zero)) < 1e-12
    one = UnfoldSetup(t1, t2, rho, np.diag([0.0, 1.0]))
    assert np.allclose(unfolded_circuit(one).mat, kron(t2.mat, np.diag([0, 1])), atol=1e-12)


def test_maximally_mixed_offdiagonals():
    rng = np.random.default_rng(1)
    rho = random_density(2, rng).mat
    out = switch_constant_closed_form(UnfoldSetup(np.eye(2) / 2, np.eye(2) / 2, rho, PLUS_STATE)).mat
    blocks = out.reshape(2, 2, 2, 2)
    assert np.allclose(blocks[:, 0, :, 1], rho / 8, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_three_way_equivalence(seed):
    rng = np.random.default_rng(seed)
    setup = UnfoldSetup(*(random_density(2, rng) for _ in range(4)))
    closed = switch_constant_closed_form(setup)
    assert trace_distance(unfolded_circuit(setup), closed) < 1e-12
    assert trace_distance(switch_constant_kraus(setup), closed) < 1e-12


def test_pure_state_expression():
    rng = np.random.default_rng(2)
    for _ in range(20):
        psi1, psi2, phi, c = (random_pure(2, rng) for _ in range(4))
        out = circuit_output(outer(psi1), outer(psi2), outer(phi), outer(c))
        assert np.max(np.abs(out - pure_state_expression(psi1, psi2, phi, c))) < 1e-12


def test_cswap_examples():
    out = cswap_two_qubit(TAU, TAU)
    assert np.allclose(out.rho_minus.mat, np.diag([5 / 12, 7 / 12]), atol=1e-12)
    assert np.allclose(out.rho_plus.mat, np.diag([0.184783, 0.815217]), atol=1e-6)
    assert out.rho_plus.excited_population < 0.25
    mixed = cswap_two_qubit(np.eye(2) / 2, np.eye(2) / 2)
    assert np.allclose(mixed.rho_plus.mat, np.eye(2) / 2) and np.allclose(mixed.rho_minus.mat, np.eye(2) / 2)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_cswap_closed_form_on_thermal_pairs(a, b):
    out = cswap_two_qubit(thermal_state(a), thermal_state(b))
    ref = out.closed_form
    # unnormalised blocks are well conditioned; dividing by a tiny P amplifies roundoff by 1/P
    for prob, state, rprob, rstate in ((out.p_plus, out.rho_plus, ref.p_plus, ref.rho_plus),
                                       (out.p_minus, out.rho_minus, ref.p_minus, ref.rho_minus)):
        assert abs(prob - rprob) < 1e-12
        if state is not None and rstate is not None:
            assert np.max(np.abs(prob * state.mat - rprob * rstate.mat)) < 1e-12
    if min(out.p_plus, out.p_minus) >= 1e-3:
        assert out.deviation() < 1e-12


def test_single_gate_variant():
    out = single_cswap(TAU, TAU)
    assert out.deviation() < 1e-12
    assert np.allclose(out.rho_minus.mat, np.eye(2) / 2, atol=1e-12)
    rng = np.random.default_rng(3)
    t1, t2 = random_density(2, rng), random_density(2, rng)
    assert single_cswap(t1, t2).deviation() < 1e-12
    closed = cswap_closed_form(t1, t2)
    assert closed.p_plus + closed.p_minus == pytest.approx(1.0, abs=1e-12)


def test_cswap_leaves_identical_gibbs_pairs_alone():
    assert cswap_is_gibbs_preserving(TAU, np.diag([0.3, 0.7])) < 1e-15
    # control coherence picks up (tau x tau) SWAP
    assert cswap_is_gibbs_preserving(TAU, PLUS_STATE) > 0.05


def test_setup_rejects_non_qubits():
    with pytest.raises(ValueError):
        UnfoldSetup(np.eye(3) / 3, TAU, TAU, TAU)
    with pytest.raises(ValueError):
        UnfoldSetup(np.diag([0.5, 0.6]), TAU, TAU, TAU)


def test_trace_distance_bound_is_tight():
    assert math.isclose(trace_distance(TAU, TAU), 0.0)
