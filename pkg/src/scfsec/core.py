"""Shared value types and validation for the two-hop relay models.

All powers are linear SNRs with unit noise; conversion from dB happens at the
CLI boundary only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class ConfigError(ValueError):
    """Invalid channel configuration. ``field`` names the offending field."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class NonPositivePower(ConfigError):
    pass


class NegativeSigma(ConfigError):
    pass


class NonPositiveGain(ConfigError):
    pass


def db_to_linear(x_db: float) -> float:
    """``10**(x_db/10)``; ``-inf`` maps to exactly 0."""
    if x_db == -math.inf:
        return 0.0
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if x == 0:
        return -math.inf
    return 10.0 * math.log10(x)


def _check_power(name: str, value: float) -> None:
    if not (value > 0) or math.isnan(value):
        raise NonPositivePower(name, f"power must be > 0, got {value!r}")


@dataclass(frozen=True)
class ChannelConfig:
    """Untrusted-relay model: source A, jammer B, relay R, destination C.

    ``sigma2`` is the noise variance of the jammer-to-destination link;
    ``sigma2 == 0`` means the jammer is the destination itself.
    """

    p_a: float
    p_b: float
    p_r: float
    sigma2: float = 0.0

    def __post_init__(self):
        validate(self)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


def validate(cfg: ChannelConfig) -> None:
    """Raise :class:`NonPositivePower` or :class:`NegativeSigma` on bad fields."""
    for name in ("p_a", "p_b", "p_r"):
        _check_power(name, getattr(cfg, name))
    if not (cfg.sigma2 >= 0):
        raise NegativeSigma("sigma2", f"noise variance must be >= 0, got {cfg.sigma2!r}")


@dataclass(frozen=True)
class EveChannelConfig:
    """Trusted relay with an external eavesdropper.

    ``h = (h1, h2)`` are the gains A->R and B->R (h2 is also R->B),
    ``h' = (h1p, h2p)`` the gains A->E and B->E, ``h3`` the gain R->E.
    """

    p_a: float
    p_b: float
    p_r: float
    h1: float = 1.0
    h2: float = 1.0
    h1p: float = 1.0
    h2p: float = 1.0
    h3: float = 1.0

    def __post_init__(self):
        for name in ("p_a", "p_b", "p_r"):
            _check_power(name, getattr(self, name))
        for name in ("h1", "h2", "h1p", "h2p", "h3"):
            value = getattr(self, name)
            if not (value > 0):
                raise NonPositiveGain(name, f"channel gain must be > 0, got {value!r}")

    @property
    def h(self) -> tuple[float, float]:
        return (self.h1, self.h2)

    @property
    def h_eve(self) -> tuple[float, float]:
        return (self.h1p, self.h2p)


@dataclass(frozen=True)
class CoefficientPair:
    """Integer coefficients of the combination ``a1*T_A + a2*T_B``."""

    a1: int
    a2: int

    def __post_init__(self):
        if int(self.a1) != self.a1 or int(self.a2) != self.a2:
            raise ValueError(f"coefficients must be integers, got ({self.a1}, {self.a2})")
        if self.a1 == 0 or self.a2 == 0:
            raise ValueError(f"coefficients must be nonzero, got ({self.a1}, {self.a2})")
        object.__setattr__(self, "a1", int(self.a1))
        object.__setattr__(self, "a2", int(self.a2))

    def canonical(self) -> CoefficientPair:
        # all rates depend on a only through squares, so a and -a are equivalent
        if self.a1 < 0:
            return CoefficientPair(-self.a1, -self.a2)
        return self

    def __iter__(self):
        yield self.a1
        yield self.a2


@dataclass(frozen=True)
class ScalingPair:
    beta_a: float
    beta_b: float

    def __post_init__(self):
        if not (self.beta_a > 0 and self.beta_b > 0):
            raise ValueError(f"scalings must be > 0, got ({self.beta_a}, {self.beta_b})")

    @property
    def ratio(self) -> float:
        return self.beta_a / self.beta_b

    def scaled(self, c: float) -> ScalingPair:
        return ScalingPair(self.beta_a * c, self.beta_b * c)


@dataclass(frozen=True)
class SCFDesign:
    """A coefficient/scaling choice and the rates it induces (bits/channel use)."""

    coeffs: CoefficientPair
    scalings: ScalingPair
    r_cf_a: float
    r_cf_b: float
    objective: float
    leakage_bound: float


@dataclass
class SweepResult:
    x_label: str
    scheme_labels: list[str]
    rows: list[tuple[float, ...]] = field(default_factory=list)

    def append(self, x: float, values) -> None:
        values = tuple(float(v) for v in values)
        if len(values) != len(self.scheme_labels):
            raise ValueError(
                f"row has {len(values)} values, expected {len(self.scheme_labels)}"
            )
        if self.rows and not x > self.rows[-1][0]:
            raise ValueError("x values must be strictly increasing")
        self.rows.append((float(x), *values))

    def column(self, label: str) -> list[float]:
        j = self.scheme_labels.index(label) + 1
        return [row[j] for row in self.rows]

    @property
    def xs(self) -> list[float]:
        return [row[0] for row in self.rows]
