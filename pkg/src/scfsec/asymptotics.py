"""High-SNR gaps to the no-secrecy capacity and their tabulated limits.

With ``P_B = alpha * P_A`` and either ``P_R = gamma * P_A`` or ``P_R`` fixed,
``G0`` is the gap between ``min(C(P_A), C(P_R))`` and the (relay-capped)
secrecy upper bound, and ``G`` the same gap for a scheme's achievable rate.
Limits are approached numerically by evaluating at large but finite ``P_A``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import baseline_rates, schemes
from .baseline_rates import C
from .core import ChannelConfig

GAMMA_LT_1 = "gamma_lt_1"
GAMMA_GE_1 = "gamma_ge_1"
FIXED_PR = "fixed_pr"
REGIMES = (GAMMA_LT_1, GAMMA_GE_1, FIXED_PR)

SCHEMES = ("rb", "lc", "he_cf", "he_cf_full", "zhang_mf", "sun_af")
UPPER = "upper"
ALIASES = {"sun": "sun_af", "zhang": "zhang_mf", "he": "he_cf", "g0": UPPER}


class UnsupportedCell(LookupError):
    """The tabulated value is an interval, not a number."""

    def __init__(self, message: str, interval: tuple[float, float]):
        super().__init__(message)
        self.interval = interval


def canonical_scheme(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in SCHEMES and name != UPPER:
        raise ValueError(f"unknown scheme {name!r}")
    return name


@dataclass(frozen=True)
class AsymptoticScenario:
    alpha: float
    relay_mode: str  # "proportional" (P_R = gamma P_A) or "fixed"
    gamma_or_pr: float
    p_a_list: tuple[float, ...]

    def __post_init__(self):
        if self.relay_mode not in ("proportional", "fixed"):
            raise ValueError(f"relay_mode must be 'proportional' or 'fixed', got {self.relay_mode!r}")
        if not (self.alpha > 0 and self.gamma_or_pr > 0):
            raise ValueError("alpha and gamma/P_R must be positive")
        pts = tuple(float(p) for p in self.p_a_list)
        if len(pts) < 2 or any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("p_a_list must be strictly increasing with at least 2 points")
        object.__setattr__(self, "p_a_list", pts)

    @classmethod
    def proportional(cls, alpha, gamma, p_a_list):
        return cls(alpha, "proportional", gamma, tuple(p_a_list))

    @classmethod
    def fixed(cls, alpha, p_r, p_a_list):
        return cls(alpha, "fixed", p_r, tuple(p_a_list))

    @property
    def regime(self) -> str:
        if self.relay_mode == "fixed":
            return FIXED_PR
        return GAMMA_LT_1 if self.gamma_or_pr < 1 else GAMMA_GE_1

    def config(self, p_a: float) -> ChannelConfig:
        p_r = self.gamma_or_pr * p_a if self.relay_mode == "proportional" else self.gamma_or_pr
        return ChannelConfig(p_a, self.alpha * p_a, p_r, 0.0)


def scheme_rate(scheme: str, cfg: ChannelConfig) -> float:
    scheme = canonical_scheme(scheme)
    if scheme == UPPER:
        return baseline_rates.secrecy_upper_bound(cfg).effective
    return {
        "rb": schemes.rb_rate,
        "lc": schemes.lc_rate,
        "he_cf": baseline_rates.cf_rate_he,
        "he_cf_full": lambda c: baseline_rates.he_objective(c.p_a, c.p_b, c),
        "zhang_mf": baseline_rates.mf_rate_zhang,
        "sun_af": baseline_rates.af_rate_sun,
    }[scheme](cfg)


def gap_G0(scenario: AsymptoticScenario) -> list[float]:
    out = []
    for p_a in scenario.p_a_list:
        cfg = scenario.config(p_a)
        out.append(baseline_rates.no_secrecy_capacity(cfg) - baseline_rates.secrecy_upper_bound(cfg).effective)
    return out


def gap_G(scheme: str, scenario: AsymptoticScenario) -> list[float]:
    if canonical_scheme(scheme) == UPPER:
        return gap_G0(scenario)
    out = []
    for p_a in scenario.p_a_list:
        cfg = scenario.config(p_a)
        out.append(baseline_rates.no_secrecy_capacity(cfg) - scheme_rate(scheme, cfg))
    return out


def table1_bounds(scheme: str, regime: str, alpha: float, gamma: float | None = None,
                  p_r: float | None = None) -> tuple[float, float]:
    """Tabulated limit as an interval ``(lo, hi)``; ``lo == hi`` for point cells.

    Cells carrying the ratio C(P_R)/C(P_A) with P_R = gamma P_A use its limit 1.
    The compress-and-forward cells describe full transmit power; the
    power-optimised ``he_cf`` gap can only be smaller.
    """
    scheme = canonical_scheme(scheme)
    if scheme == "he_cf_full":
        scheme = "he_cf"
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if regime != FIXED_PR and gamma is None:
        raise ValueError("gamma is required for the proportional-relay regimes")
    if regime == FIXED_PR and scheme == "sun_af" and p_r is None:
        raise ValueError("p_r is required for the fixed-relay Sun cell")
    ca = C(1 / alpha)
    if regime == FIXED_PR:
        value = {
            UPPER: 0.0, "rb": 0.0, "lc": 0.0, "he_cf": 0.0,
            "zhang_mf": ca,
            "sun_af": ca + C(alpha * p_r / (p_r + alpha + 1)) if p_r is not None else None,
        }[scheme]
        return value, value
    if regime == GAMMA_LT_1:
        value = {
            UPPER: 0.0, "rb": ca, "lc": 0.0,
            "he_cf": ca + C(gamma), "zhang_mf": ca + C(gamma),
            "sun_af": ca + C(gamma + alpha),
        }[scheme]
        return value, value
    if scheme == "he_cf":
        return ca, ca + C(1 / gamma)
    value = {
        UPPER: ca, "rb": ca, "lc": ca,
        "zhang_mf": ca + C(1 / gamma),
        "sun_af": ca + C((alpha + 1) / gamma),
    }[scheme]
    return value, value


def table1_reference(scheme: str, regime: str, alpha: float, gamma: float | None = None,
                     p_r: float | None = None) -> float:
    lo, hi = table1_bounds(scheme, regime, alpha, gamma, p_r)
    if lo != hi:
        raise UnsupportedCell(f"{scheme} / {regime} is tabulated as an interval", (lo, hi))
    return lo


def scenario_bounds(scheme: str, scenario: AsymptoticScenario) -> tuple[float, float]:
    if scenario.relay_mode == "fixed":
        return table1_bounds(scheme, FIXED_PR, scenario.alpha, p_r=scenario.gamma_or_pr)
    return table1_bounds(scheme, scenario.regime, scenario.alpha, gamma=scenario.gamma_or_pr)


def point_bounds(scheme: str, scenario: AsymptoticScenario, p_a: float) -> tuple[float, float]:
    """Reference at finite ``P_A``.

    The relay-limited RB cell keeps the time-share ratio C(P_R)/C(P_A), which
    tends to its limit only like 1/log P_A; every other cell is P_A-free.
    """
    if canonical_scheme(scheme) == "rb" and scenario.regime != GAMMA_GE_1:
        cfg = scenario.config(p_a)
        v = min(C(cfg.p_r) / C(cfg.p_a), 1.0) * C(1 / scenario.alpha)
        return v, v
    return scenario_bounds(scheme, scenario)


def interval_residual(value: float, lo: float, hi: float) -> float:
    if value < lo:
        return lo - value
    if value > hi:
        return value - hi
    return 0.0


@dataclass(frozen=True)
class ConvergenceReport:
    scheme: str
    passed: bool
    gaps: tuple[float, ...]
    residuals: tuple[float, ...]
    reference: tuple[float, float]
    tolerance: float


def convergence_check(scheme: str, scenario: AsymptoticScenario, tolerance: float) -> ConvergenceReport:
    """Pass iff the last gap is within ``tolerance`` of the tabulated value and
    the residuals do not grow over the last three points.

    ``reference`` in the report is the limit; residuals use ``point_bounds``.
    """
    lo, hi = scenario_bounds(scheme, scenario)
    gaps = gap_G(scheme, scenario)
    residuals = [interval_residual(g, *point_bounds(scheme, scenario, p))
                 for g, p in zip(gaps, scenario.p_a_list)]
    tail = residuals[-3:]
    shrinking = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
    passed = residuals[-1] <= tolerance and shrinking
    return ConvergenceReport(canonical_scheme(scheme), passed, tuple(gaps), tuple(residuals),
                             (lo, hi), tolerance)
