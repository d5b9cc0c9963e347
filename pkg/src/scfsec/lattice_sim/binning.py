"""Outer random-binning code over sequences of inner lattice codewords.

Bins are labelled by length-``l`` message sequences; every length-``ceil(l')``
sequence of inner codewords picks a bin uniformly at random and is kept while
the bin has room.  Encoding picks a random member of the message's bin,
decoding reads the bin label back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .leakage import BudgetExceeded

CODE_BUDGET = 2**22


@dataclass(frozen=True)
class BinningCodeSpec:
    l: int
    l_prime: float
    bins: int
    bin_size: int
    seed: int = 0

    @classmethod
    def from_rates(cls, l: int, entropy: float, r_t: float, r_o: float, n_dims: int = 1,
                   seed: int = 0) -> BinningCodeSpec:
        """Sizes for message entropy ``entropy`` (bits/symbol), inner rate ``r_t``
        and leakage rate ``r_o`` (bits/dim).  Note the mixed rounding: the
        codeword length is ``ceil(l')`` but the bin size uses ``floor(l' N R_o)``.
        """
        if not r_t > r_o:
            raise ValueError(f"need r_t > r_o, got r_t={r_t}, r_o={r_o}")
        l_prime = l * entropy / (n_dims * (r_t - r_o))
        return cls(
            l=l,
            l_prime=l_prime,
            bins=2 ** math.floor(l * entropy),
            bin_size=2 ** math.floor(l_prime * n_dims * r_o),
            seed=seed,
        )

    @property
    def length(self) -> int:
        return math.ceil(self.l_prime)


@dataclass(frozen=True)
class BinningCode:
    spec: BinningCodeSpec
    inner_alphabet: int
    bin_of: np.ndarray  # codeword index -> bin label, -1 if unused
    members: np.ndarray  # codeword indices grouped by bin
    offsets: np.ndarray  # members[offsets[b]:offsets[b+1]] belong to bin b

    @property
    def n_codewords(self) -> int:
        return self.bin_of.size

    @property
    def length(self) -> int:
        return self.spec.length

    def bin_members(self, label: int) -> np.ndarray:
        return self.members[self.offsets[label]:self.offsets[label + 1]]

    @property
    def empty_bins(self) -> int:
        return int(np.count_nonzero(np.diff(self.offsets) == 0))

    @property
    def empty_fraction(self) -> float:
        return self.empty_bins / self.spec.bins

    def codeword_sequence(self, index: int) -> tuple[int, ...]:
        """Inner codewords of sequence ``index`` (base-``inner_alphabet`` digits)."""
        digits = []
        for _ in range(self.length):
            index, d = divmod(int(index), self.inner_alphabet)
            digits.append(d)
        return tuple(digits)

    def drop_bin(self, label: int) -> BinningCode:
        """Copy with bin ``label`` emptied."""
        keep = self.bin_of != label
        bin_of = np.where(keep, self.bin_of, -1)
        return _from_assignment(self.spec, self.inner_alphabet, bin_of)


def _from_assignment(spec: BinningCodeSpec, inner_alphabet: int, bin_of: np.ndarray) -> BinningCode:
    used = np.nonzero(bin_of >= 0)[0]
    order = used[np.argsort(bin_of[used], kind="stable")]
    counts = np.bincount(bin_of[used], minlength=spec.bins)
    offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return BinningCode(spec, inner_alphabet, bin_of, order, offsets)


def build_binning_code(spec: BinningCodeSpec, inner_alphabet: int) -> BinningCode:
    if inner_alphabet < 2:
        raise ValueError(f"inner_alphabet must be >= 2, got {inner_alphabet}")
    n_codewords = inner_alphabet ** spec.length
    if spec.bins * spec.bin_size > CODE_BUDGET or n_codewords > CODE_BUDGET:
        raise BudgetExceeded(
            f"code of {n_codewords} codewords / {spec.bins}x{spec.bin_size} slots exceeds {CODE_BUDGET}"
        )
    rng = np.random.default_rng(spec.seed)
    choice = rng.integers(0, spec.bins, size=n_codewords)
    # keep the first bin_size codewords (in index order) that landed in each bin
    order = np.argsort(choice, kind="stable")
    counts = np.bincount(choice, minlength=spec.bins)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    rank = np.empty(n_codewords, dtype=np.int64)
    rank[order] = np.arange(n_codewords) - np.repeat(starts, counts)
    bin_of = np.where(rank < spec.bin_size, choice, -1).astype(np.int64)
    return _from_assignment(spec, inner_alphabet, bin_of)


@dataclass(frozen=True)
class RoundTrip:
    sent: np.ndarray
    decoded: np.ndarray  # -1 where the codeword is in no bin
    empty_bin_events: int

    @property
    def mismatches(self) -> int:
        return int(np.count_nonzero(self.sent != self.decoded))

    @property
    def success_rate(self) -> float:
        return 1.0 - self.mismatches / max(self.sent.size, 1)


def binning_roundtrip(code: BinningCode, messages, seed: int = 0) -> RoundTrip:
    """Encode each message label with a random member of its bin and decode.

    An empty bin is flagged and a uniformly random codeword sequence is sent
    in its place.
    """
    messages = np.asarray(messages, dtype=np.int64)
    if messages.size and (messages.min() < 0 or messages.max() >= code.spec.bins):
        raise ValueError(f"messages must be bin labels in [0, {code.spec.bins})")
    rng = np.random.default_rng(seed)
    sizes = np.diff(code.offsets)[messages]
    empty = sizes == 0
    pick = code.offsets[messages] + (rng.random(messages.size) * np.maximum(sizes, 1)).astype(np.int64)
    sent_cw = code.members[np.minimum(pick, max(code.members.size - 1, 0))] if code.members.size else np.zeros(messages.size, dtype=np.int64)
    fallback = rng.integers(0, code.n_codewords, size=messages.size)
    sent_cw = np.where(empty, fallback, sent_cw)
    return RoundTrip(messages, code.bin_of[sent_cw], int(np.count_nonzero(empty)))


def binning_report(spec: BinningCodeSpec, inner_alphabet: int, trials: int) -> dict:
    code = build_binning_code(spec, inner_alphabet)
    rng = np.random.default_rng(spec.seed + 1)
    messages = rng.integers(0, spec.bins, size=trials)
    rt = binning_roundtrip(code, messages, spec.seed + 2)
    return {
        "code": {"l": spec.l, "l_prime": spec.l_prime, "length": spec.length,
                 "bins": spec.bins, "bin_size": spec.bin_size, "inner_alphabet": inner_alphabet},
        "mode": "binning", "trials": trials, "failures": rt.mismatches,
        "empty_bins": code.empty_bins, "empty_bin_events": rt.empty_bin_events,
        "leakage_bits": None, "seed": spec.seed,
    }
