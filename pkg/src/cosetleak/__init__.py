"""Conditional information leakage for wiretap channels with coset coding.

The eavesdropper sees the codeword through a binary-input discrete memoryless
channel; the legitimate channel is noiseless.  ``L(z) = m - H(S | Z = z)``
is computed exactly in ``O(n 2^m)`` for any such channel, and in polynomial
time from a rank for erasure channels.
"""

__version__ = "0.1.0"

from .bec import BecPosteriorSummary, bec_leakage_rank, bec_leakage_ranks, bec_posterior_summary
from .channel import (
    BinaryInputChannel,
    backward_posterior,
    bec,
    bsc,
    general,
    parse_channel_spec,
    sample,
)
from .coset import CosetEncoder
from .ensemble import LeakagePMF, average_leakage_pmf, log2_full_rank_count, rank_probability
from .errors import (
    CosetLeakError,
    InputError,
    InvariantError,
    ParseError,
    ResourceError,
    UnreachableSymbolError,
)
from .gf2 import (
    GF2Matrix,
    GF2Vector,
    matvec,
    random_matrix,
    random_systematic,
    rank,
    submatrix_columns,
    systematic,
)
from .montecarlo import (
    Histogram,
    SimulationConfig,
    compare_histogram_to_pmf,
    simulate_leakage_histogram,
    simulate_leakages,
)
from .observation import Observation
from .pgf import (
    LeakageResult,
    PosteriorTable,
    bsc_average_leakage,
    conditional_leakage,
    noise_syndrome_distribution,
    posterior_given_observation,
)
