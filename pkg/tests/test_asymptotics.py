import math

import pytest

from scfsec import asymptotics as asy
from scfsec.baseline_rates import C

PA = [1e4, 1e6, 1e8]


def test_table_cells_proportional():
    ca = C(1.0)
    assert asy.table1_reference("upper", asy.GAMMA_LT_1, 1, 0.5) == 0.0
    assert asy.table1_reference("lc", asy.GAMMA_GE_1, 1, 2) == ca
    assert asy.table1_reference("zhang", asy.GAMMA_GE_1, 1, 2) == pytest.approx(ca + C(0.5))
    assert asy.table1_reference("sun", asy.GAMMA_GE_1, 1, 1) == pytest.approx(C(1) + C(2))
    assert asy.table1_reference("sun", asy.GAMMA_LT_1, 2, 0.5) == pytest.approx(C(0.5) + C(2.5))
    assert asy.table1_reference("he_cf_full", asy.GAMMA_LT_1, 1, 0.1) == pytest.approx(ca + C(0.1))


def test_he_interval_cell_is_unsupported():
    with pytest.raises(asy.UnsupportedCell) as err:
        asy.table1_reference("he", asy.GAMMA_GE_1, 1, 2)
    assert err.value.interval == pytest.approx((0.5, 0.5 + C(0.5)))


def test_fixed_relay_cells():
    assert asy.table1_reference("rb", asy.FIXED_PR, 1) == 0.0
    assert asy.table1_reference("zhang", asy.FIXED_PR, 0.5) == pytest.approx(C(2))
    assert asy.table1_reference("sun", asy.FIXED_PR, 1, p_r=10) == pytest.approx(C(1) + C(10 / 12))
    with pytest.raises(ValueError):
        asy.table1_bounds("sun", asy.FIXED_PR, 1)


def test_validation():
    with pytest.raises(ValueError):
        asy.table1_bounds("rb", asy.GAMMA_LT_1, 1)
    with pytest.raises(ValueError):
        asy.table1_bounds("rb", "nope", 1, 1)
    with pytest.raises(ValueError):
        asy.canonical_scheme("bogus")
    with pytest.raises(ValueError):
        asy.AsymptoticScenario.proportional(1, 1, [1e4])
    with pytest.raises(ValueError):
        asy.AsymptoticScenario.proportional(1, 1, [1e6, 1e4])
    with pytest.raises(ValueError):
        asy.AsymptoticScenario.proportional(0, 1, PA)
    with pytest.raises(ValueError):
        asy.AsymptoticScenario(1, "other", 1, tuple(PA))


def test_regimes_and_configs():
    assert asy.AsymptoticScenario.proportional(1, 0.5, PA).regime == asy.GAMMA_LT_1
    assert asy.AsymptoticScenario.proportional(1, 1, PA).regime == asy.GAMMA_GE_1
    s = asy.AsymptoticScenario.fixed(2, 7, PA)
    assert s.regime == asy.FIXED_PR
    cfg = s.config(1e4)
    assert (cfg.p_a, cfg.p_b, cfg.p_r) == (1e4, 2e4, 7)


@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("scheme", ["upper", "rb", "lc", "zhang", "sun"])
def test_convergence_alpha_one(scheme, gamma):
    rep = asy.convergence_check(scheme, asy.AsymptoticScenario.proportional(1, gamma, PA), 0.05)
    assert rep.passed, rep


@pytest.mark.parametrize("scheme", ["upper", "rb", "lc", "he", "zhang"])
def test_convergence_fixed_relay(scheme):
    rep = asy.convergence_check(scheme, asy.AsymptoticScenario.fixed(1, 1.0, PA), 0.05)
    assert rep.passed, rep


def test_he_full_power_matches_cell_and_optimised_gap_is_smaller():
    for alpha, gamma in [(1, 0.1), (1, 0.25), (0.5, 0.2)]:
        scen = asy.AsymptoticScenario.proportional(alpha, gamma, PA)
        assert asy.convergence_check("he_cf_full", scen, 1e-3).passed
        opt, full = asy.gap_G("he", scen), asy.gap_G("he_cf_full", scen)
        assert all(o <= f + 1e-9 for o, f in zip(opt, full))


def test_he_interval_cell_contains_gap():
    for alpha, gamma in [(1, 1), (1, 2), (0.5, 5)]:
        rep = asy.convergence_check("he", asy.AsymptoticScenario.proportional(alpha, gamma, PA), 1e-3)
        assert rep.passed and rep.reference[0] < rep.reference[1]


def test_rb_relay_limited_tracks_time_share_ratio():
    # the limit is approached like 1/log P_A; the finite-P_A cell is exact
    scen = asy.AsymptoticScenario.fixed(1, 100.0, PA)
    gaps = asy.gap_G("rb", scen)
    assert gaps[-1] > 0.1
    rep = asy.convergence_check("rb", scen, 1e-3)
    assert rep.passed and rep.reference == (0.0, 0.0)
    for g, p in zip(gaps, PA):
        assert g == pytest.approx(C(100) / C(p) * C(1), abs=1e-4)


def test_upper_cell_outside_its_domain():
    # gamma > alpha / (1 + alpha): the relay cap no longer binds
    scen = asy.AsymptoticScenario.proportional(0.5, 0.5, PA)
    gap = asy.gap_G0(scen)[-1]
    assert gap == pytest.approx(C(2) - 0.5 * math.log2(2), abs=1e-3)
    assert not asy.convergence_check("upper", scen, 0.05).passed


def test_interval_residual():
    assert asy.interval_residual(0.3, 0.2, 0.5) == 0
    assert asy.interval_residual(0.1, 0.2, 0.5) == pytest.approx(0.1)
    assert asy.interval_residual(0.9, 0.2, 0.5) == pytest.approx(0.4)


def test_g0_matches_upper_gap():
    scen = asy.AsymptoticScenario.proportional(1, 2, PA)
    assert asy.gap_G("g0", scen) == asy.gap_G0(scen)
