import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icoheat.thermo import (
    cooling_condition,
    cooling_threshold,
    heat_at,
    heating_condition,
    heating_threshold,
    locate_heat_zero,
    sweep_heat,
    te_grid,
)

from oracles import brute_switch, thermal_p

DQ_MINUS_075 = 0.027124593750533676  # frozen from the brute-force oracle


def oracle_dq_minus(te, t_s=1.0, omega=1.0):
    f1, p = thermal_p(omega, t_s), thermal_p(omega, te)
    o = brute_switch(f1, p, 0.5)
    return o["p_minus"] * omega * (o["f_minus"] - f1)


def test_equal_temperature_net_heat_zero():
    rec = heat_at(1.0, 1.0)
    assert abs(rec.unconditional) < 1e-12
    assert rec.dq_plus == pytest.approx(-rec.dq_minus, abs=1e-15) and rec.dq_plus != 0


def test_anomalous_heating_example():
    assert oracle_dq_minus(0.75) == pytest.approx(DQ_MINUS_075, abs=1e-12)
    assert heat_at(0.75, 1.0).dq_minus == pytest.approx(DQ_MINUS_075, abs=1e-12)
    assert heat_at(0.75, 1.0).dq_minus == pytest.approx(0.027125, abs=1e-6)
    assert abs(heat_at(0.5, 1.0).dq_minus) < 1e-9


def test_cold_channels_release_asymmetry():
    rec = heat_at(0.4, 1.0)
    assert rec.dq_plus < 0 and rec.dq_minus < 0
    assert abs(rec.dq_plus) > abs(rec.dq_minus)


def test_threshold_values():
    assert heating_threshold(1.0, 1.0) == 0.5
    assert heating_threshold(1.0, 2.0) == 1.0
    assert cooling_threshold(1.0, 1.0) == pytest.approx(1.45043, abs=1e-5)
    assert cooling_threshold(2.0, 2.0) == pytest.approx(2 * cooling_threshold(1.0, 1.0), rel=1e-14)
    assert 0 <= cooling_threshold(1.0, 1e-3) < 1e-3
    with pytest.raises(ValueError):
        heating_threshold(1.0, 0.0)
    with pytest.raises(ValueError):
        cooling_threshold(-1.0, 1.0)


def test_bisection_agrees_with_thresholds():
    assert locate_heat_zero("minus", 1.0, 1.0, 0.3, 0.9) == pytest.approx(0.5, abs=1e-6)
    assert locate_heat_zero("plus", 1.0, 1.0, 1.1, 1.9) == pytest.approx(1.45043, abs=1e-4)
    assert locate_heat_zero("plus", 1.0, 1.0, 1.1, 1.9) == pytest.approx(cooling_threshold(1.0, 1.0), abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.2, 3.0))
def test_inequalities_match_heat_signs(te, t_s):
    f1, p = thermal_p(1.0, t_s), thermal_p(1.0, te)
    rec = heat_at(te, t_s)
    if abs(rec.dq_minus) > 1e-9:
        assert heating_condition(f1, p) == (rec.dq_minus > 0)
    if abs(rec.dq_plus) > 1e-9:
        assert cooling_condition(f1, p) == (rec.dq_plus < 0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_threshold_scale_invariance(omega, lam):
    assert cooling_threshold(lam * omega, lam) == pytest.approx(lam * cooling_threshold(omega, 1.0), rel=1e-11)


def test_sweep_modes():
    grid = te_grid(0.25, 2.0, 200)
    classical = sweep_heat(1.0, grid=grid, mode="classical")
    ico = sweep_heat(1.0, grid=grid, mode="ico")
    assert len(classical) == 200
    assert all(r.p_plus == 0.5 and r.p_minus == 0.5 for r in classical)
    for c, q in zip(classical, ico):
        assert c.unconditional == pytest.approx(q.unconditional, abs=1e-12)
        assert c.dq_plus == c.dq_minus
    with pytest.raises(ValueError):
        sweep_heat(1.0, grid=[1.0, 0.5])


def test_te_grid():
    assert np.allclose(te_grid(0.25, 2.0, 8), np.arange(1, 9) * 0.25)
    with pytest.raises(ValueError):
        te_grid(0.1, 1.0, 0)


def test_impossible_outcome_carries_no_heat():
    rec = heat_at(1e-3, 1e-3)
    assert rec.p_minus < 1e-14 and rec.dq_minus == 0.0 and math.isnan(rec.f_minus)
