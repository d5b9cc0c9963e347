import numpy as np
import pytest

from scfsec.lattice_sim import (
    BinningCodeSpec, BudgetExceeded, binning_report, binning_roundtrip, build_binning_code,
)

SPEC = BinningCodeSpec.from_rates(8, 1.0, 2.0, 1.0)


def test_sizes_from_rates():
    assert SPEC.l_prime == 8.0 and SPEC.length == 8
    assert SPEC.bins == 2**8 and SPEC.bin_size == 2**8
    odd = BinningCodeSpec.from_rates(5, 1.0, 2.5, 1.0)
    assert odd.l_prime == pytest.approx(10 / 3)
    assert odd.length == 4
    assert odd.bin_size == 2**3  # floor(10/3)
    with pytest.raises(ValueError):
        BinningCodeSpec.from_rates(8, 1.0, 1.0, 1.0)


def test_bins_never_empty_over_seeds():
    fracs = []
    for seed in range(100):
        code = build_binning_code(BinningCodeSpec.from_rates(8, 1.0, 2.0, 1.0, seed=seed), 4)
        fracs.append(code.empty_fraction)
    assert max(fracs) < 1e-3


def test_bin_structure():
    code = build_binning_code(SPEC, 4)
    sizes = np.diff(code.offsets)
    assert sizes.size == SPEC.bins
    assert sizes.max() <= SPEC.bin_size
    assert set(np.unique(code.bin_of[code.bin_of >= 0])) == set(range(SPEC.bins))
    for label in (0, 17, 255):
        assert np.all(code.bin_of[code.bin_members(label)] == label)
    assert code.codeword_sequence(4**8 - 1) == (3,) * 8
    assert code.codeword_sequence(1) == (1,) + (0,) * 7


def test_roundtrip_identity():
    code = build_binning_code(SPEC, 4)
    msgs = np.arange(SPEC.bins).repeat(4)
    rt = binning_roundtrip(code, msgs, 3)
    assert rt.mismatches == 0 and rt.success_rate == 1.0 and rt.empty_bin_events == 0
    with pytest.raises(ValueError):
        binning_roundtrip(code, [SPEC.bins])


def test_dropped_bin_is_flagged():
    code = build_binning_code(SPEC, 4).drop_bin(5)
    assert code.empty_bins == 1 and code.bin_members(5).size == 0
    rt = binning_roundtrip(code, [5] * 50 + [6] * 50, 1)
    assert rt.empty_bin_events == 50
    assert rt.mismatches == 50
    assert np.all(rt.decoded[50:] == 6)


def test_report_success_rate_and_determinism():
    a = binning_report(SPEC, 4, 5000)
    assert 1 - a["failures"] / a["trials"] >= 1 - 1e-3
    assert a == binning_report(SPEC, 4, 5000)
    c1 = build_binning_code(SPEC, 4)
    c2 = build_binning_code(SPEC, 4)
    assert np.array_equal(c1.bin_of, c2.bin_of)
    other = build_binning_code(BinningCodeSpec.from_rates(8, 1.0, 2.0, 1.0, seed=9), 4)
    assert not np.array_equal(c1.bin_of, other.bin_of)


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_binning_code(BinningCodeSpec.from_rates(16, 1.0, 2.0, 1.0), 4)
    with pytest.raises(ValueError):
        build_binning_code(SPEC, 1)
