"""Desk-scale exact simulation of the lattice relaying process."""

from .binning import (
    BinningCode,
    BinningCodeSpec,
    RoundTrip,
    binning_report,
    binning_roundtrip,
    build_binning_code,
)
from .chain import (
    CHAIN,
    PLAIN,
    IndexOutOfRange,
    NestingViolation,
    ScalarLatticeChain,
    SimOutcome,
    ZeroModulus,
    destination_recover,
    encode_jammer,
    encode_source,
    mod_lattice,
    random_chain,
    relay_combine,
    relay_modulo,
    run_chain_trials,
    simulate_trial,
    strip_dither,
)
from .leakage import (
    MOD_COARSE,
    NONE,
    BudgetExceeded,
    exhaustive_leakage,
    joint_counts,
    joint_distribution,
    leakage_report,
    mutual_information_from_counts,
)
