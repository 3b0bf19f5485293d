"""QPP interleaver toolkit for LTE turbo codes: exact truncated distance
spectra, union-bound pruned class search, and FER simulation."""

from .qpp import (
    ALL_QPP,
    D_TARGET_MAX_ZETA,
    LS_QPP,
    ClassSelector,
    EmptyClass,
    NotAPermutation,
    Permutation,
    Qpp,
    QppGroup,
    SpreadMetrics,
    enumerate_class,
    evaluate,
    group_candidates,
    invert,
    is_lpp_reducible,
    is_valid,
    lee_distance,
    nonlinearity,
    permutation_of,
    spread,
)
from .turbo import RscSpec, TurboCodeword, code_rate, rsc_encode, turbo_encode
from .spectrum import (
    BudgetExceeded,
    DistanceSpectrum,
    SpectrumEvent,
    SpectrumRun,
    SpectrumTerm,
    brute_force_spectrum,
    exact_spectrum,
    record_codeword,
)
from .bounds import TubParams, optimistic_updates, should_abort, tub_ber, tub_fer
from .search import (
    GroupReport,
    SearchConfig,
    SearchRecord,
    compare_to_baseline,
    search,
)
from .simulate import FerPoint, SimConfig, channel_pass, log_map_decode, monte_carlo_fer
from .lte import DEFAULTS, LENGTHS, defaults_for

__version__ = "0.1.0"
