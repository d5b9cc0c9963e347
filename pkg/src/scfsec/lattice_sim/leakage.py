"""Exact leakage of the message to the relay's decoded combination.

Enumerates every equiprobable ``(T, V_A, V_B)`` triple of a one-dimensional
chain and evaluates ``I(T; U)`` from integer counts, so the joint
distribution is exact and independence yields exactly 0 bits.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .chain import ScalarLatticeChain

MOD_COARSE = "mod_coarse"
NONE = "none"
REDUCTIONS = (MOD_COARSE, NONE)

ENUMERATION_BUDGET = 2**20


class BudgetExceeded(RuntimeError):
    pass


def _check(chain: ScalarLatticeChain, reduce: str) -> None:
    if reduce not in REDUCTIONS:
        raise ValueError(f"reduce must be one of {REDUCTIONS}, got {reduce!r}")
    if chain.dims != 1:
        raise BudgetExceeded("exhaustive enumeration supports dims == 1 only")
    size = chain.m_s * chain.m_e * chain.m_b
    if size > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"{size} triples exceeds the budget of {ENUMERATION_BUDGET}")


def joint_counts(chain: ScalarLatticeChain, reduce: str = MOD_COARSE) -> np.ndarray:
    """``counts[t, k]``: number of triples with message ``t`` and ``U = u_min + k``."""
    _check(chain, reduce)
    a1, a2 = chain.coeffs
    t = np.arange(chain.m_s, dtype=np.int64)[:, None, None]
    va = (chain.m_s * np.arange(chain.m_e, dtype=np.int64))[None, :, None]
    vb = np.arange(chain.m_b, dtype=np.int64)[None, None, :]
    u = a1 * (t + va) + a2 * vb
    if reduce == MOD_COARSE:
        u = np.mod(u, chain.coarse)
    u = np.broadcast_to(u, (chain.m_s, chain.m_e, chain.m_b)).reshape(chain.m_s, -1)
    u_min = int(u.min())
    width = int(u.max()) - u_min + 1
    counts = np.zeros((chain.m_s, width), dtype=np.int64)
    for ti in range(chain.m_s):
        counts[ti] = np.bincount(u[ti] - u_min, minlength=width)
    return counts


def joint_distribution(chain: ScalarLatticeChain, reduce: str = MOD_COARSE) -> dict[tuple[int, int], Fraction]:
    """Exact ``P(T = t, U = u)`` as fractions (zero-probability pairs omitted)."""
    _check(chain, reduce)
    a1, a2 = chain.coeffs
    total = chain.m_s * chain.m_e * chain.m_b
    counts: dict[tuple[int, int], int] = {}
    for t in range(chain.m_s):
        for j in range(chain.m_e):
            for v in range(chain.m_b):
                u = a1 * (t + chain.m_s * j) + a2 * v
                if reduce == MOD_COARSE:
                    u %= chain.coarse
                counts[(t, u)] = counts.get((t, u), 0) + 1
    return {k: Fraction(c, total) for k, c in counts.items()}


def mutual_information_from_counts(counts: np.ndarray) -> float:
    """``I(X; Y)`` in bits from a joint count table.

    Each term's likelihood ratio ``n * c_xy / (c_x c_y)`` is an exact integer
    ratio; terms with ratio exactly 1 contribute exactly 0.
    """
    counts = np.asarray(counts, dtype=np.int64)
    n = int(counts.sum())
    row = counts.sum(axis=1)
    col = counts.sum(axis=0)
    terms = []
    for i, j in zip(*np.nonzero(counts)):
        c = int(counts[i, j])
        num = n * c
        den = int(row[i]) * int(col[j])
        if num == den:
            continue
        terms.append(c / n * (math.log2(num) - math.log2(den)))
    return math.fsum(terms)


def exhaustive_leakage(chain: ScalarLatticeChain, reduce: str = MOD_COARSE) -> float:
    """``I(T; U)`` in bits per dimension for uniform message, randomness and jammer."""
    return mutual_information_from_counts(joint_counts(chain, reduce))


def leakage_report(chain: ScalarLatticeChain, reduce: str = MOD_COARSE) -> dict:
    return {"chain": chain.as_dict(), "mode": reduce, "trials": 1, "failures": 0,
            "leakage_bits": exhaustive_leakage(chain, reduce), "seed": None}
