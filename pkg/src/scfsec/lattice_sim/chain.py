"""One-dimensional nested lattice chain with exact rational arithmetic.

Per dimension the fine lattice is Z, the mid lattice ``m_s Z``, the source
shaping lattice ``m_s m_e Z`` and the jammer shaping lattice ``m_b Z``.  The
fundamental region of ``mZ`` is ``[0, m)`` (floor quantiser), so every modulo
identity of the relaying process can be checked bit-exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..core import CoefficientPair

PLAIN = "plain"
CHAIN = "chain"
MODES = (PLAIN, CHAIN)

DITHER_MAX_DENOMINATOR = 64


class ZeroModulus(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class NestingViolation(ValueError):
    pass


def mod_lattice(x, modulus) -> Fraction:
    """``x - modulus * floor(x / modulus)``, in ``[0, modulus)``."""
    x = Fraction(x)
    modulus = Fraction(modulus)
    if modulus <= 0:
        raise ZeroModulus(f"modulus must be > 0, got {modulus}")
    return x - modulus * math.floor(x / modulus)


def _as_beta(beta) -> tuple[Fraction, Fraction]:
    b_a, b_b = (Fraction(b) for b in beta)
    if b_a <= 0 or b_b <= 0:
        raise ValueError(f"scalings must be > 0, got ({b_a}, {b_b})")
    return b_a, b_b


@dataclass(frozen=True)
class ScalarLatticeChain:
    m_s: int
    m_e: int
    m_b: int
    beta: tuple[Fraction, Fraction] = (Fraction(1), Fraction(1))
    coeffs: CoefficientPair = CoefficientPair(1, 1)
    dims: int = 1

    def __post_init__(self):
        for name in ("m_s", "m_e", "m_b", "dims"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        object.__setattr__(self, "beta", _as_beta(self.beta))
        if not isinstance(self.coeffs, CoefficientPair):
            object.__setattr__(self, "coeffs", CoefficientPair(*self.coeffs))

    @property
    def coarse(self) -> int:
        """Modulus of the source shaping lattice, ``m_s * m_e``."""
        return self.m_s * self.m_e

    @property
    def nested(self) -> bool:
        return self.coarse % self.m_b == 0 or self.m_b % self.coarse == 0

    def relay_modulus(self, mode: str) -> int:
        if mode == PLAIN:
            return self.coarse
        if mode == CHAIN:
            return self.m_s
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")

    def rates(self) -> dict[str, float]:
        """Per-dimension codebook rates in bits: transmit, randomness, message, jammer."""
        return {
            "r_t_a": math.log2(self.coarse),
            "r_e_a": math.log2(self.m_e),
            "r_s_a": math.log2(self.m_s),
            "r_t_b": math.log2(self.m_b),
        }

    def as_dict(self) -> dict:
        return {
            "m_s": self.m_s, "m_e": self.m_e, "m_b": self.m_b,
            "beta": [str(self.beta[0]), str(self.beta[1])],
            "a": [self.coeffs.a1, self.coeffs.a2], "dims": self.dims,
        }


def _vec(values, dims: int, name: str) -> tuple:
    if isinstance(values, (int, Fraction, np.integer)):
        values = [values] * dims
    values = tuple(values)
    if len(values) != dims:
        raise ValueError(f"{name} has {len(values)} entries, chain has {dims} dims")
    return values


def _check_range(values, upper: int, name: str) -> None:
    for v in values:
        if int(v) != v or not 0 <= v < upper:
            raise IndexOutOfRange(f"{name} entry {v} outside [0, {upper})")


def _zero(dims):
    return (Fraction(0),) * dims


def encode_source(chain: ScalarLatticeChain, message, random_index=0, dither=None) -> tuple[Fraction, ...]:
    """Channel input of the source: ``[(T + V)/beta_A + D] mod (m_s m_e / beta_A)``.

    ``V = m_s * random_index`` is the mid-lattice randomisation; ``m_e = 1``
    gives the plain code.
    """
    t = _vec(message, chain.dims, "message")
    idx = _vec(random_index, chain.dims, "random_index")
    _check_range(t, chain.m_s, "message")
    _check_range(idx, chain.m_e, "random_index")
    d = _zero(chain.dims) if dither is None else _vec(dither, chain.dims, "dither")
    b_a = chain.beta[0]
    modulus = Fraction(chain.coarse) / b_a
    return tuple(
        mod_lattice(Fraction(int(ti) + chain.m_s * int(vi)) / b_a + Fraction(di), modulus)
        for ti, vi, di in zip(t, idx, d)
    )


def encode_jammer(chain: ScalarLatticeChain, v_b, dither=None) -> tuple[Fraction, ...]:
    """Channel input of the jammer: ``[V_B/beta_B + D] mod (m_b / beta_B)``."""
    v = _vec(v_b, chain.dims, "v_b")
    _check_range(v, chain.m_b, "v_b")
    d = _zero(chain.dims) if dither is None else _vec(dither, chain.dims, "dither")
    b_b = chain.beta[1]
    modulus = Fraction(chain.m_b) / b_b
    return tuple(mod_lattice(Fraction(int(vi)) / b_b + Fraction(di), modulus) for vi, di in zip(v, d))


def strip_dither(x, dither, beta, modulus) -> tuple[Fraction, ...]:
    """Invert an encoder: ``[beta (x - D)] mod modulus`` recovers the lattice point."""
    beta = Fraction(beta)
    return tuple(mod_lattice(beta * (Fraction(xi) - Fraction(di)), modulus) for xi, di in zip(x, dither))


def relay_combine(chain: ScalarLatticeChain, t_a, v_a, v_b) -> tuple[int, ...]:
    """``a1 (T_A + V_A) + a2 V_B``; ``v_a`` is the mid-lattice point itself."""
    a1, a2 = chain.coeffs
    t = _vec(t_a, chain.dims, "t_a")
    va = _vec(v_a, chain.dims, "v_a")
    vb = _vec(v_b, chain.dims, "v_b")
    return tuple(a1 * (int(ti) + int(vai)) + a2 * int(vbi) for ti, vai, vbi in zip(t, va, vb))


def relay_modulo(chain: ScalarLatticeChain, u_r, mode: str = CHAIN) -> tuple[Fraction, ...]:
    """``(u_r / a1) mod m_s m_e`` (plain) or ``mod m_s`` (chain)."""
    m = chain.relay_modulus(mode)
    a1 = chain.coeffs.a1
    return tuple(mod_lattice(Fraction(u, a1), m) for u in _vec(u_r, chain.dims, "u_r"))


def destination_recover(chain: ScalarLatticeChain, u_tilde, v_b, mode: str = CHAIN) -> tuple[Fraction, ...]:
    """``[u_tilde - (a2/a1) V_B] mod M`` with ``M`` the relay modulus of ``mode``.

    In chain mode this is the message ``T_A``; in plain mode it is the whole
    source codeword ``T_A + V_A`` (equal to ``T_A`` when ``m_e = 1``).
    """
    if not chain.nested:
        raise NestingViolation(
            f"neither m_b={chain.m_b} nor m_s*m_e={chain.coarse} divides the other"
        )
    m = chain.relay_modulus(mode)
    ratio = Fraction(chain.coeffs.a2, chain.coeffs.a1)
    vb = _vec(v_b, chain.dims, "v_b")
    return tuple(mod_lattice(Fraction(u) - ratio * int(v), m) for u, v in zip(_vec(u_tilde, chain.dims, "u_tilde"), vb))


@dataclass(frozen=True)
class SimOutcome:
    t_a: tuple[int, ...]
    v_a: tuple[int, ...]
    v_b: tuple[int, ...]
    u_r: tuple[int, ...]
    u_tilde: tuple[Fraction, ...]
    recovered: tuple[Fraction, ...]
    exact_match: bool
    d_a: tuple[Fraction, ...] = field(default=())
    d_b: tuple[Fraction, ...] = field(default=())


def random_dither(rng: np.random.Generator, modulus: Fraction, dims: int) -> tuple[Fraction, ...]:
    """Uniform point of ``[0, modulus)`` on a random grid with denominator <= 64."""
    out = []
    for _ in range(dims):
        den = int(rng.integers(1, DITHER_MAX_DENOMINATOR + 1))
        steps = math.ceil(modulus * den)
        out.append(Fraction(int(rng.integers(0, steps)), den))
    return tuple(out)


def simulate_trial(chain: ScalarLatticeChain, rng: np.random.Generator, mode: str = CHAIN,
                   dithered: bool = True) -> SimOutcome:
    """One pass: encode, let the relay (granted) decode and reduce, recover at C.

    The relay's lattice points are obtained from the channel inputs by
    removing the dithers, so the encoders are exercised as well.
    """
    n = chain.dims
    t = tuple(int(v) for v in rng.integers(0, chain.m_s, n))
    idx = tuple(int(v) for v in rng.integers(0, chain.m_e, n))
    vb = tuple(int(v) for v in rng.integers(0, chain.m_b, n))
    b_a, b_b = chain.beta
    if dithered:
        d_a = random_dither(rng, Fraction(chain.coarse) / b_a, n)
        d_b = random_dither(rng, Fraction(chain.m_b) / b_b, n)
    else:
        d_a = d_b = _zero(n)
    x_a = encode_source(chain, t, idx, d_a)
    x_b = encode_jammer(chain, vb, d_b)

    cw_a = strip_dither(x_a, d_a, b_a, chain.coarse)
    cw_b = strip_dither(x_b, d_b, b_b, chain.m_b)
    a1, a2 = chain.coeffs
    u_r = tuple(int(a1 * p + a2 * q) for p, q in zip(cw_a, cw_b))
    va = tuple(chain.m_s * i for i in idx)
    if u_r != relay_combine(chain, t, va, vb):
        raise AssertionError("encoder inversion disagrees with the direct combination")

    u_tilde = relay_modulo(chain, u_r, mode)
    recovered = destination_recover(chain, u_tilde, vb, mode)
    expected = t if mode == CHAIN else tuple(ti + vi for ti, vi in zip(t, va))
    return SimOutcome(t, va, vb, u_r, u_tilde, recovered,
                      all(r == e for r, e in zip(recovered, expected)), d_a, d_b)


def run_chain_trials(chain: ScalarLatticeChain, trials: int, seed: int, mode: str = CHAIN,
                     dithered: bool = True) -> dict:
    """Monte Carlo identity check; trial ``i`` uses seed ``seed + i``."""
    failures = 0
    for i in range(trials):
        rng = np.random.default_rng(seed + i)
        if not simulate_trial(chain, rng, mode, dithered).exact_match:
            failures += 1
    return {"chain": chain.as_dict(), "mode": mode, "trials": trials,
            "failures": failures, "leakage_bits": None, "seed": seed}


def random_chain(rng: np.random.Generator, nested: bool = True, a_max: int = 3,
                 max_beta_den: int = 8, max_modulus: int = 8, dims: int = 1) -> ScalarLatticeChain:
    """Random chain with ``a1, a2`` in ``[1, a_max]`` and rational scalings.

    With ``nested=False`` the moduli are drawn until the nesting rule fails.
    """
    while True:
        m_s = int(rng.integers(1, max_modulus + 1))
        m_e = int(rng.integers(1, max_modulus + 1))
        coarse = m_s * m_e
        if nested:
            if rng.random() < 0.5:
                divisors = [d for d in range(1, coarse + 1) if coarse % d == 0]
                m_b = int(divisors[int(rng.integers(0, len(divisors)))])
            else:
                m_b = coarse * int(rng.integers(1, 5))
        else:
            m_b = int(rng.integers(2, 4 * coarse + 3))
            if coarse % m_b == 0 or m_b % coarse == 0:
                continue
        beta = tuple(
            Fraction(int(rng.integers(1, 4 * max_beta_den + 1)), int(rng.integers(1, max_beta_den + 1)))
            for _ in range(2)
        )
        coeffs = CoefficientPair(int(rng.integers(1, a_max + 1)), int(rng.integers(1, a_max + 1)))
        return ScalarLatticeChain(m_s, m_e, m_b, beta, coeffs, dims)
