"""Slow, independent reference maximisers used only by the tests."""

import math

import numpy as np

from scfsec.baseline_rates import C
from scfsec.core import CoefficientPair, EveChannelConfig, ScalingPair
from scfsec.scf_rates import computation_rate, eve_computation_rate


def scalar_objective(a, t, cfg, relay_rate=None, b_cap=None):
    """Objective at ratio t written out from the rate definitions."""
    beta = ScalingPair(t, 1.0)
    if isinstance(cfg, EveChannelConfig):
        ra = min(eve_computation_rate("A", a, beta, cfg.h, cfg), eve_computation_rate("A", a, beta, cfg.h_eve, cfg))
        rb = min(eve_computation_rate("B", a, beta, cfg.h, cfg), eve_computation_rate("B", a, beta, cfg.h_eve, cfg))
        v = ra + rb - C(cfg.h1p**2 * cfg.p_a + cfg.h2p**2 * cfg.p_b)
        relay = C(cfg.h2**2 * cfg.p_r)
        if cfg.p_r < (cfg.h1 / cfg.h2) ** 2 * cfg.p_a and ra > relay:
            v *= relay / ra
        return v
    ra = computation_rate("A", a, beta, cfg)
    rb = computation_rate("B", a, beta, cfg)
    if b_cap is not None and rb > b_cap:
        return -math.inf
    v = ra + rb - C(cfg.p_a + cfg.p_b)
    if relay_rate is not None and ra > relay_rate:
        v *= relay_rate / ra
    return v


def dense_max(cfg, a, relay_rate=None, b_cap=None, n=4001, lo=-20.0, hi=20.0, refine=3):
    """Grid maximum over log2 t, re-gridded around the winner ``refine`` times."""
    best_x, best_v = lo, -math.inf
    for _ in range(refine + 1):
        xs = np.linspace(lo, hi, n)
        vals = [scalar_objective(a, 2.0**x, cfg, relay_rate, b_cap) for x in xs]
        j = int(np.argmax(vals))
        if vals[j] > best_v:
            best_x, best_v = xs[j], vals[j]
        step = xs[1] - xs[0]
        lo, hi = best_x - 2 * step, best_x + 2 * step
        n = 401
    return best_x, best_v


def pairs(a_max):
    out = []
    for a1 in range(1, a_max + 1):
        for a2 in range(-a_max, a_max + 1):
            if a2 and math.gcd(a1, abs(a2)) == 1:
                out.append(CoefficientPair(a1, a2))
    return out
