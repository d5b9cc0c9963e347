import math

import numpy as np
import pytest

from oracles import dense_max, pairs
from scfsec import schemes as sc
from scfsec.baseline_rates import C, cnf_rate_he2, perfect_rate_vatedka, secrecy_upper_bound
from scfsec.core import ChannelConfig, CoefficientPair, EveChannelConfig
from scfsec.optimizer import closed_form_value, search_coefficients
from scfsec.scf_rates import jammer_cap, sigma_threshold

SYM = ChannelConfig(100, 100, 100)


def test_symmetric_rates():
    assert sc.rb_rate(SYM) == pytest.approx(2.8256, abs=1e-4)
    assert sc.lc_rate(SYM) == pytest.approx(2.8256, abs=1e-4)
    assert sc.combined_lower_bound(SYM) == sc.lc_rate(SYM)


def test_rb_limited_relay_is_joint_optimum():
    cfg = ChannelConfig(100, 100, 10)
    got = sc.rb_rate(cfg)
    # brute-force the scaled objective over every pair
    want = max(dense_max(cfg, a, relay_rate=C(10))[1] for a in pairs(3))
    assert got == pytest.approx(want, abs=1e-6)
    # scaling the unconstrained optimum afterwards is never better
    r_a_at_opt = 0.5 * math.log2(100.5)
    post_scaled = C(10) / r_a_at_opt * closed_form_value(100, 100)
    assert post_scaled == pytest.approx(1.4697, abs=1e-4)
    assert got >= post_scaled - 1e-12


def test_lc_limited_relay():
    assert sc.lc_rate(ChannelConfig(100, 100, 10)) == pytest.approx(C(10), abs=1e-12)
    assert sc.lc_rate(ChannelConfig(100, 100, 10)) == pytest.approx(1.7297, abs=1e-4)


def test_rb_far_above_threshold_is_negative():
    cfg = ChannelConfig(100, 100, 100, 1e9)
    assert sc.rb_rate(cfg) == pytest.approx(C(100) + C(100 / 1e9) - C(200), abs=1e-12)
    assert sc.rb_rate(cfg) < 0


def random_cfgs(n, seed, sigma=False):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        pa, pb, pr = 10 ** rng.uniform(-1, 4, 3)
        s2 = 10 ** rng.uniform(-2, 2) if sigma else 0.0
        out.append(ChannelConfig(pa, pb, pr, s2))
    return out


def test_lc_at_least_rb_below_threshold():
    # holds for the clamped rates; with both raw values negative the time-share
    # factor can shrink RB's deficit below LC's
    for cfg in random_cfgs(100, 21):
        assert max(sc.lc_rate(cfg), 0.0) >= max(sc.rb_rate(cfg), 0.0) - 1e-9
        if sc.rb_rate(cfg) > 0:
            assert sc.lc_rate(cfg) >= sc.rb_rate(cfg) - 1e-9


def test_lc_equals_min_closed_form_and_relay_capacity():
    for cfg in random_cfgs(30, 22):
        assert sc.lc_rate(cfg) == pytest.approx(min(closed_form_value(cfg.p_a, cfg.p_b), C(cfg.p_r)), abs=1e-9)


def test_combined_is_envelope():
    for cfg in random_cfgs(60, 23, sigma=True):
        comb = sc.combined_lower_bound(cfg)
        assert comb >= sc.lc_rate(cfg) - 1e-12
        if cfg.sigma2 > sigma_threshold(cfg) ** 2:
            assert comb >= sc.rb_rate(cfg) - 1e-12


def test_combined_envelope_above_threshold():
    cfg = ChannelConfig(1000, 1000, 1000, 50.0)
    assert sigma_threshold(cfg) ** 2 < 50
    comb = sc.combined_lower_bound(cfg)
    assert comb == pytest.approx(max(sc.rb_rate(cfg), sc.lc_rate(cfg)), abs=1e-12)


def test_achievable_below_converse():
    for cfg in random_cfgs(100, 24):
        ub = secrecy_upper_bound(cfg).effective
        for f in (sc.rb_rate, sc.lc_rate, sc.combined_lower_bound):
            assert max(0.0, f(cfg)) <= ub + 1e-9


def test_lc_constrained_branch_respects_cap():
    cfg = ChannelConfig(1000, 1000, 1000, 20.0)
    res = search_coefficients(cfg, 8, sc.Objective(b_rate_cap=jammer_cap(cfg)))
    assert res.best.r_cf_b <= jammer_cap(cfg) + 1e-9
    assert sc.lc_rate(cfg) == pytest.approx(min(res.value, C(1000)), abs=1e-12)


def test_branch_jump_matches_analytic_difference():
    # the two sides of the threshold use different expressions; the jump is
    # exactly the gap between them, not a selection bug
    for pa, pb, pr in [(100, 100, 100), (1000, 50, 2000), (30, 300, 30)]:
        base = ChannelConfig(pa, pb, pr)
        bar2 = sigma_threshold(base) ** 2
        lo = ChannelConfig(pa, pb, pr, bar2 * (1 - 1e-6))
        hi = ChannelConfig(pa, pb, pr, bar2 * (1 + 1e-6))
        factor = min(C(pr) / C(pa), 1.0)
        expected_hi = factor * (C(pa) + C(pb / hi.sigma2) - C(pa + pb))
        assert sc.rb_rate(hi) == pytest.approx(expected_hi, abs=1e-12)
        below = search_coefficients(lo, 8, sc.Objective(relay_rate=C(pr))).value
        assert sc.rb_rate(lo) == pytest.approx(below, abs=1e-12)
        assert sc.rb_rate(lo) - sc.rb_rate(hi) >= -1e-9


def test_corollary_collocated():
    assert sc.corollary_collocated(SYM) == pytest.approx(2.8256, abs=1e-4)
    cfg = ChannelConfig(100, 10, 200)
    assert sc.corollary_collocated(cfg) == pytest.approx(1.624148, abs=1e-6)
    assert sc.corollary_collocated(cfg) == pytest.approx(sc.rb_rate(cfg), abs=1e-6)
    assert sc.corollary_collocated(cfg) == pytest.approx(sc.lc_rate(cfg), abs=1e-6)
    with pytest.raises(sc.PreconditionViolated):
        sc.corollary_collocated(ChannelConfig(100, 10, 50))
    with pytest.raises(sc.PreconditionViolated):
        sc.corollary_collocated(ChannelConfig(100, 10, 200, 0.1))


def test_corollary_symmetric():
    assert sc.corollary_symmetric(100) == pytest.approx(2.8256, abs=1e-4)
    assert sc.corollary_symmetric(3.5) == 0.5
    for p in (1, 10, 100, 1e4):
        assert sc.corollary_symmetric(p) == pytest.approx(sc.corollary_collocated(ChannelConfig(p, p, p)), abs=1e-9)
        assert sc.corollary_symmetric(p) - cnf_rate_he2(p) == pytest.approx(0.5, abs=1e-12)
        assert sc.corollary_symmetric(p) - perfect_rate_vatedka(p) == pytest.approx(0.5 + math.log2(math.e), abs=1e-12)


def test_eve_reduces_to_untrusted_relay():
    eve = EveChannelConfig(100, 100, 100)
    assert sc.eve_rb_rate(eve) == pytest.approx(sc.rb_rate(SYM), abs=1e-6)


def test_eve_weak_eavesdropper_channel_gives_nonpositive_rate():
    eve = EveChannelConfig(100, 100, 100, h1p=0.01, h2p=0.01)
    assert sc.eve_rb_rate(eve) <= 0


def test_eve_monotone_in_h2p():
    vals = [sc.eve_rb_rate(EveChannelConfig(100, 100, 100, h2p=h)) for h in np.linspace(1, 3, 21)]
    assert all(b <= a + 1e-9 for a, b in zip(vals, vals[1:]))


def test_eve_invariant_in_h3():
    vals = [sc.eve_rb_rate(EveChannelConfig(100, 100, 100, h1p=0.8, h2p=1.5, h3=h)) for h in (0.1, 1, 10)]
    assert max(vals) - min(vals) == 0.0


def test_eve_relay_limited_branch():
    # weak relay: the time-share factor applies inside the maximisation
    eve = EveChannelConfig(100, 100, 5, h1=1, h2=1, h1p=0.7, h2p=1.2)
    want = max(dense_max(eve, a)[1] for a in pairs(3))
    assert sc.eve_rb_rate(eve, 3) == pytest.approx(want, abs=1e-6)
