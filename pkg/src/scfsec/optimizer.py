"""Maximise the SCF secrecy objective over coefficient pairs and scaling ratios.

Only the ratio ``t = beta_A / beta_B`` matters (rates are invariant under a
common rescaling of beta), so each coefficient pair needs a 1-D search in
``log2 t``; :mod:`scfsec.kernels` does the numeric work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .baseline_rates import C
from .core import ChannelConfig, CoefficientPair, EveChannelConfig, SCFDesign, ScalingPair
from .scf_rates import (
    computation_rate,
    eve_computation_rate,
    eve_leakage_bound,
    leakage_bound,
    scf_objective,
)

DEFAULT_A_MAX = 8


class InfeasibleConstraint(Exception):
    pass


@dataclass(frozen=True)
class Objective:
    """What to maximise besides plain ``R_s(a, beta)``.

    ``b_rate_cap``: restrict to ``R_CF^B <= b_rate_cap``.
    ``relay_rate``: multiply by ``min(relay_rate / R_CF^A, 1)``, the fraction of
    phase-1 uses a rate-limited relay can forward.

    The eavesdropper objective is selected by passing an
    :class:`EveChannelConfig`; its relay limitation is derived from the config.
    """

    b_rate_cap: float | None = None
    relay_rate: float | None = None

    def __post_init__(self):
        if self.b_rate_cap is not None and self.relay_rate is not None:
            raise ValueError("b_rate_cap and relay_rate cannot be combined")

    @property
    def constrained(self) -> bool:
        return self.b_rate_cap is not None


UNCONSTRAINED = Objective()


class RatioSearch(NamedTuple):
    ratio: float
    value: float
    evaluations: int
    feasible: bool


@dataclass(frozen=True)
class OptimizationResult:
    best: SCFDesign
    value: float
    constrained: bool
    evaluations: int
    feasible: bool = True


class ClosedFormOptimum(NamedTuple):
    a: CoefficientPair
    beta_ratio: float
    value: float


def eve_relay_rate(eve: EveChannelConfig) -> float | None:
    """C(h2^2 P_R) when the relay cannot keep up with the source, else None."""
    if eve.p_r >= (eve.h1**2 / eve.h2**2) * eve.p_a:
        return None
    return C(eve.h2**2 * eve.p_r)


def _kernel_args(cfg, objective: Objective):
    if isinstance(cfg, EveChannelConfig):
        relay = eve_relay_rate(cfg)
        params = [cfg.p_a, cfg.p_b, cfg.h1, cfg.h2, cfg.h1p, cfg.h2p,
                  -1.0 if relay is None else relay]
        return kernels.EVE, np.array(params, dtype=np.float64)
    if objective.b_rate_cap is not None:
        return kernels.CAPPED, np.array([cfg.p_a, cfg.p_b, objective.b_rate_cap])
    if objective.relay_rate is not None:
        return kernels.RB_SCALED, np.array([cfg.p_a, cfg.p_b, objective.relay_rate])
    return kernels.PLAIN, np.array([float(cfg.p_a), float(cfg.p_b)])


def _feasible(value: float, objective: Objective) -> bool:
    if not math.isfinite(value):
        return False
    return objective.b_rate_cap is None or value > 0


def optimize_beta(a: CoefficientPair, cfg, objective: Objective = UNCONSTRAINED) -> RatioSearch:
    """Best scaling ratio ``beta_A/beta_B`` for a fixed coefficient pair."""
    kind, params = _kernel_args(cfg, objective)
    x, v, evals = kernels.search_log_ratio(
        kind, float(a.a1), float(a.a2), params,
        kernels.GRID_LO, kernels.GRID_HI, kernels.GRID_POINTS,
        kernels.KEEP_BRACKETS, kernels.RATIO_TOL,
    )
    return RatioSearch(2.0 ** float(x), float(v), int(evals), _feasible(float(v), objective))


def canonical_pairs(a_max: int) -> list[CoefficientPair]:
    """Pairs with ``1 <= a1 <= a_max``, ``0 < |a2| <= a_max``, ``gcd = 1``.

    Ordered by ``(a1, |a2|)`` with positive ``a2`` first, which is also the
    tie-break order of :func:`search_coefficients`.
    """
    if a_max < 1:
        raise ValueError(f"a_max must be >= 1, got {a_max}")
    pairs = [
        (a1, a2)
        for a1 in range(1, a_max + 1)
        for a2 in range(-a_max, a_max + 1)
        if a2 != 0 and math.gcd(a1, abs(a2)) == 1
    ]
    pairs.sort(key=lambda p: (p[0], abs(p[1]), p[1] < 0))
    return [CoefficientPair(a1, a2) for a1, a2 in pairs]


def objective_value(a: CoefficientPair, beta: ScalingPair, cfg, objective: Objective = UNCONSTRAINED) -> float:
    """Scalar re-evaluation of the searched objective (no kernels involved)."""
    if isinstance(cfg, EveChannelConfig):
        m_a = min(eve_computation_rate("A", a, beta, cfg.h, cfg),
                  eve_computation_rate("A", a, beta, cfg.h_eve, cfg))
        m_b = min(eve_computation_rate("B", a, beta, cfg.h, cfg),
                  eve_computation_rate("B", a, beta, cfg.h_eve, cfg))
        value = m_a + m_b - C(cfg.h1p**2 * cfg.p_a + cfg.h2p**2 * cfg.p_b)
        relay = eve_relay_rate(cfg)
        if relay is not None and m_a > relay:
            value *= relay / m_a
        return value
    r_s = scf_objective(a, beta, cfg)
    if objective.b_rate_cap is not None:
        if computation_rate("B", a, beta, cfg) > objective.b_rate_cap:
            return -math.inf
        return r_s
    if objective.relay_rate is not None:
        r_a = computation_rate("A", a, beta, cfg)
        if r_a > objective.relay_rate:
            return r_s * objective.relay_rate / r_a
    return r_s


def design_at(a: CoefficientPair, ratio: float, cfg) -> SCFDesign:
    beta = ScalingPair(ratio, 1.0)
    if isinstance(cfg, EveChannelConfig):
        r_a = min(eve_computation_rate("A", a, beta, cfg.h, cfg),
                  eve_computation_rate("A", a, beta, cfg.h_eve, cfg))
        r_b = min(eve_computation_rate("B", a, beta, cfg.h, cfg),
                  eve_computation_rate("B", a, beta, cfg.h_eve, cfg))
        obj = r_a + r_b - C(cfg.h1p**2 * cfg.p_a + cfg.h2p**2 * cfg.p_b)
        leak = eve_leakage_bound(cfg, max(r_b, 0.0))
    else:
        r_a = computation_rate("A", a, beta, cfg)
        r_b = computation_rate("B", a, beta, cfg)
        obj = scf_objective(a, beta, cfg)
        leak = leakage_bound(cfg, max(r_b, 0.0))
    return SCFDesign(a, beta, r_a, r_b, obj, leak)


def search_coefficients(cfg, a_max: int = DEFAULT_A_MAX, objective: Objective = UNCONSTRAINED) -> OptimizationResult:
    """Best (a, beta) over all canonical pairs up to ``a_max``.

    Ties (within 1e-12 bits) go to the pair that comes first in
    :func:`canonical_pairs`.
    """
    pairs = canonical_pairs(a_max)
    kind, params = _kernel_args(cfg, objective)
    a1s = np.array([float(p.a1) for p in pairs])
    a2s = np.array([float(p.a2) for p in pairs])
    xs, vs, evals = kernels.search_pairs(
        kind, a1s, a2s, params,
        kernels.GRID_LO, kernels.GRID_HI, kernels.GRID_POINTS,
        kernels.KEEP_BRACKETS, kernels.RATIO_TOL,
    )
    best = 0
    for j in range(1, len(pairs)):
        if vs[j] > vs[best] + 1e-12:
            best = j
    value = float(vs[best])
    ratio = 2.0 ** float(xs[best])
    constrained = objective.constrained and not isinstance(cfg, EveChannelConfig)
    return OptimizationResult(
        best=design_at(pairs[best], ratio, cfg),
        value=value,
        constrained=constrained,
        evaluations=int(evals.sum()),
        feasible=_feasible(value, objective),
    )


def closed_form_ratio(cfg: ChannelConfig) -> float:
    return math.sqrt(cfg.p_b * (1 + cfg.p_a) / (cfg.p_a * (1 + cfg.p_b)))


def closed_form_value(p_a: float, p_b: float) -> float:
    # sqrt((1+p_a)(1+p_b)) - sqrt(p_a p_b) = (1+p_a+p_b) / (sum of the roots)
    s = math.sqrt((1 + p_a) * (1 + p_b)) + math.sqrt(p_a * p_b)
    return 0.5 * math.log2(s * s / (1 + p_a + p_b)) - 1


def closed_form_optimum(cfg: ChannelConfig) -> ClosedFormOptimum:
    """Analytic maximiser of ``R_s``: a = (1, 1) at the ratio above."""
    return ClosedFormOptimum(
        CoefficientPair(1, 1), closed_form_ratio(cfg), closed_form_value(cfg.p_a, cfg.p_b)
    )
