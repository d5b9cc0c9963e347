"""Secrecy rates for the two-hop untrusted-relay channel with cooperative
jamming under scaled compute-and-forward."""

from ._accel import BACKEND, HAS_NUMBA
from .baseline_rates import (
    C,
    af_rate_sun,
    cf_rate_he,
    cnf_rate_he2,
    gaussian_capacity,
    mf_rate_zhang,
    no_secrecy_capacity,
    perfect_rate_vatedka,
    secrecy_upper_bound,
)
from .core import (
    ChannelConfig,
    CoefficientPair,
    ConfigError,
    EveChannelConfig,
    ScalingPair,
    SCFDesign,
    SweepResult,
    db_to_linear,
    linear_to_db,
    validate,
)
from .optimizer import (
    Objective,
    closed_form_optimum,
    optimize_beta,
    search_coefficients,
)
from .scf_rates import (
    computation_rate,
    leakage_bound,
    noise_term,
    scf_objective,
    sigma_threshold,
)
from .schemes import (
    combined_lower_bound,
    corollary_collocated,
    corollary_symmetric,
    eve_rb_rate,
    lc_rate,
    rb_rate,
)

__version__ = "0.1.0"
