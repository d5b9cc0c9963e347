"""Achievable secrecy rates of the random-binning (RB) and lattice-chain (LC)
schemes, their special cases, the combined lower bound, and the RB rate in the
external-eavesdropper model.

Rates are returned raw (they may be negative); clamp at 0 for plotting.
"""

from __future__ import annotations

import math

from .baseline_rates import C
from .core import ChannelConfig, EveChannelConfig
from .optimizer import (
    DEFAULT_A_MAX,
    Objective,
    closed_form_value,
    search_coefficients,
)
from .scf_rates import above_threshold, jammer_cap


class PreconditionViolated(ValueError):
    pass


def _rb_above_threshold(cfg: ChannelConfig) -> float:
    # jammer codeword must stay decodable at C, so R_t^B sits at C(P_B/sigma^2)
    # while A runs at its MMSE ceiling C(P_A)
    c_a = C(cfg.p_a)
    return min(C(cfg.p_r) / c_a, 1.0) * (c_a + jammer_cap(cfg) - C(cfg.p_a + cfg.p_b))


def max_secrecy_objective(cfg: ChannelConfig, a_max: int = DEFAULT_A_MAX) -> float:
    return search_coefficients(cfg, a_max).value


def constrained_secrecy_objective(cfg: ChannelConfig, a_max: int = DEFAULT_A_MAX) -> float:
    """max R_s subject to R_CF^B <= C(P_B / sigma^2)."""
    return search_coefficients(cfg, a_max, Objective(b_rate_cap=jammer_cap(cfg))).value


def rb_rate(cfg: ChannelConfig, a_max: int = DEFAULT_A_MAX) -> float:
    if above_threshold(cfg):
        return _rb_above_threshold(cfg)
    # the relay time-sharing factor depends on R_CF^A(a, beta), so it is
    # optimised jointly rather than applied to the unconstrained optimum
    return search_coefficients(cfg, a_max, Objective(relay_rate=C(cfg.p_r))).value


def lc_rate(cfg: ChannelConfig, a_max: int = DEFAULT_A_MAX) -> float:
    if above_threshold(cfg):
        inner = constrained_secrecy_objective(cfg, a_max)
    else:
        inner = max_secrecy_objective(cfg, a_max)
    return min(inner, C(cfg.p_r))


def combined_lower_bound(cfg: ChannelConfig, a_max: int = DEFAULT_A_MAX) -> float:
    """Envelope of the LC rate and, above the threshold, the RB rate."""
    lc = lc_rate(cfg, a_max)
    if not above_threshold(cfg):
        return lc
    return max(lc, _rb_above_threshold(cfg))


def corollary_collocated(cfg: ChannelConfig) -> float:
    """Closed-form rate for a collocated jammer and a relay at least as strong as A."""
    if cfg.sigma2 != 0:
        raise PreconditionViolated(f"requires sigma2 == 0, got {cfg.sigma2}")
    if cfg.p_r < cfg.p_a:
        raise PreconditionViolated(f"requires p_r >= p_a, got p_r={cfg.p_r} < p_a={cfg.p_a}")
    return closed_form_value(cfg.p_a, cfg.p_b)


def corollary_symmetric(p: float) -> float:
    """Closed-form rate when P_A = P_B = P_R = p and the jammer is collocated."""
    if not p > 0:
        raise PreconditionViolated(f"requires p > 0, got {p}")
    return 0.5 * math.log2(0.5 + p) - 0.5


def eve_rb_rate(eve_cfg: EveChannelConfig, a_max: int = DEFAULT_A_MAX) -> float:
    """RB scheme against an external eavesdropper.

    The relay time-sharing factor applies only when
    ``P_R < (h1/h2)^2 P_A``; ``h3`` does not enter the rate.
    """
    return search_coefficients(eve_cfg, a_max).value
