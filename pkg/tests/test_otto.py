import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icoheat.otto import (
    CycleImpossibleError,
    OttoConfig,
    cop_argmax,
    expected_attempts,
    run_cycle,
    shannon_entropy,
    sweep_ratio,
)

from oracles import brute_switch, thermal_p

GRID = np.linspace(1.0, 1.5, 500)


def test_no_work_at_unit_ratio():
    r = run_cycle(OttoConfig(1.0, 1.0, 1.0, 1.0))
    assert r.w_net == 0.0
    assert r.q2 > 0 and r.q2 == pytest.approx(-r.q4, abs=1e-15)


def test_cycle_against_oracle():
    cfg = OttoConfig(1.0, 1.105, 0.9, 1.0)
    r = run_cycle(cfg)
    f1, f2 = thermal_p(1.0, 1.0), thermal_p(1.105, 0.9)
    o = brute_switch(f1, f2, 0.5)
    fm, pm = o["f_minus"], o["p_minus"]
    assert r.q2 == pytest.approx(1.105 * (fm - f1), abs=1e-12)
    assert r.w_net == pytest.approx(0.105 * (f1 - 0.5) - 0.105 * (fm - 0.5), abs=1e-12)
    ds = -(pm * math.log(pm) + (1 - pm) * math.log(1 - pm))
    assert r.delta_s == pytest.approx(ds, abs=1e-12)
    assert r.cop == pytest.approx((r.q2 + abs(r.w_net)) * pm / ds, rel=1e-12)


def test_cop_peak_near_1105():
    best = cop_argmax(sweep_ratio(OttoConfig(1.0, 1.0, 0.9, 1.0), GRID))
    assert best.ratio == pytest.approx(1.105, abs=0.01)


def test_refrigerator_window_and_q2_maximum():
    reports = sweep_ratio(OttoConfig(1.0, 1.0, 0.9, 1.0), GRID)
    window = [r for r in reports if r.q2 > 0 and r.q4 < 0 and r.w_net < 0]
    assert window
    assert reports[0].q2 == max(r.q2 for r in reports)


def test_equal_bath_variant_extracts_more_work():
    cold = sweep_ratio(OttoConfig(1.0, 1.0, 0.9, 1.0), GRID)
    warm = sweep_ratio(OttoConfig(1.0, 1.0, 1.0, 1.0), GRID)
    for a, b in zip(warm, cold):
        assert abs(a.w_net) >= abs(b.w_net)


def test_expected_attempts():
    assert expected_attempts(1.0) == 1.0
    assert expected_attempts(0.5) == 2.0
    assert expected_attempts(0.294923) == pytest.approx(3.391, abs=1e-3)
    with pytest.raises(ValueError):
        expected_attempts(0.0)


def test_entropy():
    assert shannon_entropy(0.5, 0.5) == pytest.approx(math.log(2))
    assert shannon_entropy(1.0, 0.0) == 0.0


def test_config_validation():
    with pytest.raises(ValueError):
        OttoConfig(1.0, 0.5, 0.9, 1.0)
    with pytest.raises(ValueError):
        OttoConfig(1.0, 1.2, 1.1, 1.0)
    with pytest.raises(ValueError):
        sweep_ratio(OttoConfig(1.0, 1.0, 0.9, 1.0), [0.9])


def test_impossible_cycle():
    cfg = OttoConfig(1.0, 1.0, 1e-3, 1e-3)
    with pytest.raises(CycleImpossibleError):
        run_cycle(cfg)
    (rep,) = sweep_ratio(cfg, [1.0])
    assert not rep.possible and math.isnan(rep.cop)
    with pytest.raises(ValueError):
        cop_argmax([rep])


@settings(max_examples=300, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(1.0, 3.0), st.floats(0.1, 1.0), st.floats(0.2, 3.0))
def test_ledger_closes(omega1, ratio, t2_frac, t4):
    r = run_cycle(OttoConfig(omega1, ratio * omega1, t2_frac * t4, t4))
    assert abs(r.ledger_residual) < 1e-12


def test_argmax_independent_of_reset_temperature():
    peaks = {cop_argmax(sweep_ratio(OttoConfig(1.0, 1.0, 0.9, 1.0, t_r=tr), GRID)).ratio for tr in (0.5, 1.0, 2.0)}
    assert len(peaks) == 1
