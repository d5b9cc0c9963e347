"""Secrecy-rate upper bound and the rates of earlier relaying schemes.

These are comparison curves: amplify-and-forward (Sun et al.), modulo-and-
forward (Zhang et al.), compress-and-forward (He et al.), and the two
compute-and-forward rates for the symmetric collocated case.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import kernels
from .core import ChannelConfig

LOG2_E = math.log2(math.e)

HE_GRID_POINTS = 64
HE_GRID_OCTAVES = 30.0
HE_TOL = 1e-8
HE_MAX_ROUNDS = 50


class NegativeSnr(ValueError):
    pass


class SigmaIgnoredWarning(UserWarning):
    """A rate defined only for a collocated jammer was evaluated with sigma2 > 0."""


def gaussian_capacity(x: float) -> float:
    """C(x) = 1/2 log2(1 + x) in bits per channel use."""
    if x < 0:
        raise NegativeSnr(f"SNR must be >= 0, got {x!r}")
    if x == math.inf:
        return math.inf
    return 0.5 * math.log2(1.0 + x)


C = gaussian_capacity


@dataclass(frozen=True)
class UpperBoundResult:
    rho: float
    r_b: float
    effective: float


def correlation_rho(p_a: float, p_b: float) -> float:
    # rearranged to avoid cancellation: X - sqrt(X^2 - 4 p_a^2) = 4 p_a^2 / (X + sqrt(.))
    x = 2 * p_a + p_a * p_b + p_b
    root = math.sqrt(
        4 * p_b * p_a**2 + 4 * p_b * p_a + p_b**2 * p_a**2 + 2 * p_b**2 * p_a + p_b**2
    )
    return 2 * p_a / (x + root)


def phase1_bound(p_a: float, p_b: float) -> float:
    """Phase-1 secrecy upper bound R_b; 0 without a jammer (p_b == 0)."""
    if p_b == 0:
        return 0.0
    rho = correlation_rho(p_a, p_b)
    s = p_a + p_b + 1
    # (p_a+1)s - (p_a+rho)^2 expanded so the p_a^2 terms cancel symbolically
    num = p_a * p_b + 2 * p_a + p_b + 1 - 2 * p_a * rho - rho * rho
    return 0.5 * math.log2(num / (s * (1 - rho * rho)))


def secrecy_upper_bound(cfg: ChannelConfig) -> UpperBoundResult:
    rho = correlation_rho(cfg.p_a, cfg.p_b)
    r_b = phase1_bound(cfg.p_a, cfg.p_b)
    return UpperBoundResult(rho=rho, r_b=r_b, effective=min(r_b, C(cfg.p_r)))


def no_secrecy_capacity(cfg: ChannelConfig) -> float:
    return min(C(cfg.p_a), C(cfg.p_r))


def _warn_sigma(cfg: ChannelConfig, name: str) -> None:
    if cfg.sigma2 > 0:
        warnings.warn(
            f"{name} is defined for a collocated jammer; sigma2={cfg.sigma2} ignored",
            SigmaIgnoredWarning,
            stacklevel=3,
        )


def af_rate_sun(cfg: ChannelConfig) -> float:
    """Amplify-and-forward with the destination jamming."""
    _warn_sigma(cfg, "af_rate_sun")
    p_a, p_b, p_r = cfg.p_a, cfg.p_b, cfg.p_r
    return C(p_a * p_r / (p_a + p_b + p_r + 1)) - C(p_a / (p_b + 1))


def mf_rate_zhang(cfg: ChannelConfig) -> float:
    """Modulo-and-forward with the destination jamming."""
    _warn_sigma(cfg, "mf_rate_zhang")
    p_a, p_b, p_r = cfg.p_a, cfg.p_b, cfg.p_r
    first = 0.5 * math.log2((p_a + p_r + p_a * p_r + 1) / (p_a + p_r + 2))
    return first - C(p_a / (p_b + 1))


def mf_rate_zhang_symmetric(p: float) -> float:
    return C(p) - 0.5 - 0.5 * math.log2(1 + p / (1 + p))


def he_objective(p_a: float, p_b: float, cfg: ChannelConfig) -> float:
    """Compress-and-forward objective at transmit powers ``p_a, p_b``."""
    s2 = cfg.sigma2
    sc2 = (p_a + 1 + p_b * s2 / (p_b + s2)) / cfg.p_r
    return C(p_a / (1 + s2 + sc2 - s2 * s2 / (p_b + s2))) - C(p_a / (1 + p_b))


def cf_rate_he_design(cfg: ChannelConfig) -> tuple[float, float, float]:
    """``(p_a*, p_b*, rate)`` maximising the compress-and-forward objective."""
    p_a, p_b, value, _ = kernels.he_search(
        float(cfg.p_a), float(cfg.p_b), float(cfg.p_r), float(cfg.sigma2),
        HE_GRID_POINTS, HE_GRID_OCTAVES, HE_TOL, HE_MAX_ROUNDS,
    )
    return float(p_a), float(p_b), float(value)


def cf_rate_he(cfg: ChannelConfig) -> float:
    """Compress-and-forward, maximised over transmit powers up to the caps."""
    return cf_rate_he_design(cfg)[2]


def cf_rate_he_symmetric(p: float) -> float:
    return 0.5 * math.log2(2 + 1 / p + p) - 1


def cnf_rate_he2(p_a: float) -> float:
    """Compute-and-forward with binning, symmetric collocated case."""
    return 0.5 * math.log2(0.5 + p_a) - 1


def perfect_rate_vatedka(p_a: float) -> float:
    """Perfect-secrecy compute-and-forward, symmetric collocated case."""
    return 0.5 * math.log2(0.5 + p_a) - 1 - LOG2_E
