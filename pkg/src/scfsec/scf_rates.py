"""Scaled compute-and-forward rates for both channel models.

Computation rates, the secrecy objective ``R_s(a, beta)``, the leakage
bounds, and the jammer-noise threshold that selects the scheme branch.
"""

from __future__ import annotations

import math

from .baseline_rates import C
from .core import ChannelConfig, CoefficientPair, EveChannelConfig, ScalingPair


class DegenerateNoise(ValueError):
    pass


def _noise(a1: int, a2: int, beta_a: float, beta_b: float, p_a: float, p_b: float) -> float:
    n = (
        p_a * p_b * (a1 * beta_a - a2 * beta_b) ** 2
        + (a1 * beta_a) ** 2 * p_a
        + (a2 * beta_b) ** 2 * p_b
    ) / (p_a + p_b + 1)
    if n <= 0:
        raise DegenerateNoise(f"effective noise is {n} for a=({a1}, {a2})")
    return n


def _rate(node: str, a: CoefficientPair, beta: ScalingPair, p_a: float, p_b: float) -> float:
    n = _noise(a.a1, a.a2, beta.beta_a, beta.beta_b, p_a, p_b)
    if node == "A":
        return 0.5 * math.log2(beta.beta_a**2 * p_a / n)
    if node == "B":
        return 0.5 * math.log2(beta.beta_b**2 * p_b / n)
    raise ValueError(f"node must be 'A' or 'B', got {node!r}")


def noise_term(a: CoefficientPair, beta: ScalingPair, cfg: ChannelConfig) -> float:
    """Effective noise variance seen when decoding ``a1*T_A + a2*T_B``."""
    return _noise(a.a1, a.a2, beta.beta_a, beta.beta_b, cfg.p_a, cfg.p_b)


def computation_rate(node: str, a: CoefficientPair, beta: ScalingPair, cfg: ChannelConfig) -> float:
    return _rate(node, a, beta, cfg.p_a, cfg.p_b)


def scf_objective(a: CoefficientPair, beta: ScalingPair, cfg: ChannelConfig) -> float:
    """R_s(a, beta) = R_CF^A + R_CF^B - C(P_A + P_B); may be negative."""
    return (
        computation_rate("A", a, beta, cfg)
        + computation_rate("B", a, beta, cfg)
        - C(cfg.p_a + cfg.p_b)
    )


def leakage_bound(cfg: ChannelConfig, r_t_b: float) -> float:
    """Upper bound on the per-use leakage to the relay for jammer rate ``r_t_b``."""
    if r_t_b < 0:
        raise ValueError(f"transmit rate must be >= 0, got {r_t_b}")
    return C(cfg.p_a + cfg.p_b) - r_t_b


def sigma_threshold(cfg: ChannelConfig) -> float:
    """Jammer-noise level above which the jammer's codeword is undecodable at C.

    Returns ``inf`` when ``P_A P_B <= P_A + 1`` (the constraint never binds).
    """
    d = cfg.p_a * cfg.p_b - cfg.p_a - 1
    if d <= 0:
        return math.inf
    return math.sqrt(1 + (1 + cfg.p_a + cfg.p_b) / d)


def above_threshold(cfg: ChannelConfig) -> bool:
    """True when sigma exceeds the threshold (compared on the variance scale)."""
    bar = sigma_threshold(cfg)
    return bar != math.inf and cfg.sigma2 > bar * bar


def jammer_cap(cfg: ChannelConfig) -> float:
    """C(P_B / sigma^2): the rate at which C can decode the jammer's codeword."""
    if cfg.sigma2 == 0:
        return math.inf
    return C(cfg.p_b / cfg.sigma2)


def mmse_ratio(cfg: ChannelConfig) -> float:
    """beta_B / beta_A at which R_CF^A reaches C(P_A) for a = (1, 1)."""
    return cfg.p_a / (1 + cfg.p_a)


def eve_noise_term(a: CoefficientPair, beta: ScalingPair, h_pair, cfg) -> float:
    h_a, h_b = h_pair
    return _noise(a.a1, a.a2, beta.beta_a, beta.beta_b, h_a**2 * cfg.p_a, h_b**2 * cfg.p_b)


def eve_computation_rate(node: str, a: CoefficientPair, beta: ScalingPair, h_pair, cfg) -> float:
    """Computation rate with channel gains ``h_pair`` (to the relay or to Eve)."""
    h_a, h_b = h_pair
    return _rate(node, a, beta, h_a**2 * cfg.p_a, h_b**2 * cfg.p_b)


def eve_leakage_bound(eve_cfg: EveChannelConfig, r_t_b: float) -> float:
    if r_t_b < 0:
        raise ValueError(f"transmit rate must be >= 0, got {r_t_b}")
    return C(eve_cfg.h1p**2 * eve_cfg.p_a + eve_cfg.h2p**2 * eve_cfg.p_b) - r_t_b
