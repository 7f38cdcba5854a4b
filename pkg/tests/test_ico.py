import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icoheat.channels import identity_channel, make_thermalizing, random_channel, validate_cptp
from icoheat.ico import (
    ALPHA_ROOT_HALF,
    ControlState,
    classical_heat,
    coherent_control,
    coherent_kraus,
    evolve_switch,
    run_switch,
    sequential,
    switch_closed_form,
    switch_kraus,
)
from icoheat.qmat import DensityMatrix, thermal_state

from oracles import brute_switch, thermal_p

F_EQ = thermal_p(1.0, 1.0)

# frozen from the brute-force oracle in tests/oracles.py
EQ_TEMPS = dict(
    p_plus=0.7050821001377774,
    p_minus=0.2949178998622228,
    f_plus=0.20451080566212623,
    f_minus=0.4229804737899984,
)


def test_vanishing_switch_operators():
    ops = switch_kraus(make_thermalizing(0.3), make_thermalizing(0.3)).ops
    zero = [k for k, w in enumerate(ops) if np.allclose(w, 0.0)]
    assert zero == [0 * 4 + 2, 1 * 4 + 1, 2 * 4 + 0, 3 * 4 + 3]
    assert validate_cptp(switch_kraus(make_thermalizing(0.3), make_thermalizing(0.3)))[0]


def test_identity_switch():
    ops = switch_kraus(identity_channel(), identity_channel()).ops
    assert len(ops) == 1 and np.allclose(ops[0], np.eye(4))


def test_equal_temperature_example():
    out = run_switch(F_EQ, 0.5, F_EQ)
    oracle = brute_switch(F_EQ, F_EQ, 0.5)
    for key, frozen in EQ_TEMPS.items():
        assert getattr(out, key) == pytest.approx(frozen, abs=1e-12)
        assert oracle[key] == pytest.approx(frozen, abs=1e-12)
    assert out.deviation() < 1e-12


def test_control_zero_collapses():
    out = run_switch(0.1, 0.0, 0.35)
    assert out.p_plus == pytest.approx(0.5) and out.p_minus == pytest.approx(0.5)
    assert out.f_plus == pytest.approx(0.35) and out.f_minus == pytest.approx(0.35)


def test_ground_state_switch():
    out = run_switch(0.0, 0.5, 0.0)
    assert out.p_plus == pytest.approx(1.0) and out.p_minus == pytest.approx(0.0, abs=1e-15)
    assert out.rho_minus is None and math.isnan(out.f_minus)


def test_classical_heat_examples():
    assert classical_heat(0.2, 0.2, 1.0) == (0.0, 0.0)
    cold = classical_heat(F_EQ, thermal_p(1.0, 0.5), 1.0)
    hot = classical_heat(F_EQ, thermal_p(1.0, 2.0), 1.0)
    assert cold[0] == cold[1] == pytest.approx(-0.074869, abs=1e-6)
    assert hot[0] == hot[1] == pytest.approx(0.054300, abs=1e-6)


def test_coherent_control_examples():
    out = coherent_control(0.1, 0.0, 0.3)
    assert np.allclose(out.rho_plus.mat, np.diag([0.3, 0.7]), atol=1e-12)
    assert np.allclose(out.rho_minus.mat, np.diag([0.3, 0.7]), atol=1e-12)
    eq = coherent_control(F_EQ, 0.5, F_EQ)
    assert abs(eq.p_plus * (eq.f_plus - F_EQ)) < 1e-12
    assert abs(eq.p_minus * (eq.f_minus - F_EQ)) < 1e-12


def test_coherent_kraus_complete():
    rng = np.random.default_rng(7)
    for _ in range(20):
        ch = coherent_kraus(random_channel(2, rng), random_channel(3, rng))
        assert validate_cptp(ch)[0]


def test_generic_switch_matches_oracle():
    rng = np.random.default_rng(11)
    ch1, ch2 = random_channel(3, rng), random_channel(2, rng)
    rho = thermal_state(0.4)
    out = evolve_switch(ch1, ch2, rho, ControlState(0.5))
    oracle = brute_switch(0.4, None, 0.5, list(ch1.ops), list(ch2.ops))
    assert out.p_plus == pytest.approx(oracle["p_plus"], abs=1e-12)
    assert out.f_minus == pytest.approx(oracle["f_minus"], abs=1e-12)


def test_unconditional_equals_sequential_average():
    # trace over the control: mixture of both orders
    rng = np.random.default_rng(12)
    ch1, ch2 = random_channel(2, rng), random_channel(2, rng)
    rho = DensityMatrix(np.diag([0.3, 0.7]))
    out = evolve_switch(ch1, ch2, rho, 0.5)
    mixed = out.p_plus * out.rho_plus.mat + out.p_minus * out.rho_minus.mat
    expected = 0.5 * (sequential(ch2, ch1, rho) + sequential(ch1, ch2, rho))
    assert np.allclose(mixed, expected, atol=1e-12)


def test_root_half_alpha_is_valid_control():
    out = run_switch(0.3, ALPHA_ROOT_HALF, 0.2)
    assert out.deviation() < 1e-12
    assert out.p_plus + out.p_minus == pytest.approx(1.0, abs=1e-12)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        run_switch(1.5, 0.5, 0.2)
    with pytest.raises(ValueError):
        ControlState(-0.1)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
def test_closed_form_matches_oracle(f1, p, alpha):
    cf = switch_closed_form(f1, p, alpha)
    oracle = brute_switch(f1, p, alpha)
    assert cf.p_plus == pytest.approx(oracle["p_plus"], abs=1e-12)
    assert cf.p_minus == pytest.approx(oracle["p_minus"], abs=1e-12)
    for key in ("f_plus", "f_minus"):
        a, b = getattr(cf, key), oracle[key]
        assert (math.isnan(a) and math.isnan(b)) or a == pytest.approx(b, abs=1e-10)
