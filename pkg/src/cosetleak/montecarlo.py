"""Monte Carlo distribution of the conditional leakage.

Every sample ``i`` draws from its own generator seeded by ``(seed, i)``, so a
run is reproducible bit for bit whatever the number of workers or the chunk
boundaries.  The matrix, when generated, uses a separate stream.

For an erasure channel only the erasure pattern affects the leakage, so the
default BEC path draws i.i.d. Bernoulli(eps) masks and ranks them; the full
encode-and-transmit path is kept for other channels and for cross-checking.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from ._kernels import masked_ranks, masked_ranks_per_matrix
from .channel import BinaryInputChannel, inverse_cdf_indices
from .ensemble import LeakagePMF
from .errors import InputError, ResourceError
from .gf2 import GF2Matrix, random_systematic
from .pgf import DEFAULT_MAX_M, posterior_tables

__all__ = [
    "SimulationConfig",
    "Histogram",
    "ComparisonReport",
    "sample_rng",
    "simulation_matrix",
    "simulate_leakages",
    "simulate_leakage_histogram",
    "compare_histogram_to_pmf",
]

log = logging.getLogger(__name__)

# entries of 2^m tables processed together on the generic path
_TABLE_BUDGET = 1 << 20


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of one run.

    ``matrix=None`` means a random systematic matrix drawn once from the
    seed.  ``resample=True`` instead draws a fresh uniformly random ``m x n``
    matrix for each sample (BEC only); that is the ensemble the averaged PMF
    describes.  ``shortcut=False`` forces full encode-and-transmit sampling
    on a BEC.
    """

    m: int
    n: int
    channel: BinaryInputChannel
    samples: int
    seed: int = 0
    matrix: GF2Matrix | None = None
    resample: bool = False
    workers: int = 1
    shortcut: bool = True
    max_m: int = DEFAULT_MAX_M

    def __post_init__(self):
        if self.samples < 1:
            raise InputError(f"sample count must be positive, got {self.samples}")
        if not 0 < self.m < self.n:
            raise InputError(f"need 0 < m < n, got m={self.m}, n={self.n}")
        if self.workers < 1:
            raise InputError(f"worker count must be positive, got {self.workers}")
        if self.matrix is not None and self.matrix.shape != (self.m, self.n):
            raise InputError(f"matrix is {self.matrix.m}x{self.matrix.n}, expected {self.m}x{self.n}")
        if self.resample and self.matrix is not None:
            raise InputError("an explicit matrix cannot be combined with per-sample resampling")
        if self.resample and self.channel.kind != "bec":
            raise InputError("per-sample matrix resampling is only defined for BEC channels")
        if not self.uses_rank_path and self.m > self.max_m:
            raise ResourceError(
                f"m={self.m} exceeds the table cap max_m={self.max_m} for a non-erasure channel"
            )

    @property
    def uses_rank_path(self) -> bool:
        return self.channel.kind == "bec" and (self.shortcut or self.resample)


@dataclass(frozen=True, eq=False)
class Histogram:
    """Counts of leakage values ``0..m``; ``values`` keeps the raw per-sample leakage.

    Non-integer leakage (general channels) is binned to the nearest integer.
    """

    m: int
    counts: np.ndarray
    values: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_values(cls, m: int, values) -> Histogram:
        values = np.asarray(values, dtype=float)
        bins = np.clip(np.rint(values), 0, m).astype(np.int64)
        return cls(m, np.bincount(bins, minlength=m + 1), values)

    @property
    def N(self) -> int:
        return int(self.counts.sum())

    def frequencies(self) -> np.ndarray:
        return self.counts / self.N

    def as_dict(self) -> dict[int, int]:
        return {ell: int(c) for ell, c in enumerate(self.counts)}

    def merge(self, other: Histogram) -> Histogram:
        if other.m != self.m:
            raise InputError("cannot merge histograms with different m")
        values = None
        if self.values is not None and other.values is not None:
            values = np.concatenate([self.values, other.values])
        return Histogram(self.m, self.counts + other.counts, values)


@dataclass(frozen=True)
class ComparisonReport:
    total_variation: float
    residuals: np.ndarray


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, index)))


def _matrix_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))


def simulation_matrix(cfg: SimulationConfig) -> GF2Matrix | None:
    """The fixed matrix used by ``cfg``; ``None`` in resampling mode."""
    if cfg.resample:
        return None
    if cfg.matrix is not None:
        return cfg.matrix
    return random_systematic(cfg.m, cfg.n, _matrix_rng(cfg.seed))


def _pack_columns(bits: np.ndarray) -> np.ndarray:
    """``(m, n)`` 0/1 array to ``(n, words)`` uint64 column words."""
    m, n = bits.shape
    words = max(1, (m + 63) // 64)
    packed = np.packbits(bits, axis=0, bitorder="little")
    buf = np.zeros((8 * words, n), dtype=np.uint8)
    buf[: packed.shape[0]] = packed
    return np.ascontiguousarray(buf.T).view("<u8").astype(np.uint64)


def _rank_chunk(cfg: SimulationConfig, A: GF2Matrix | None, start: int, stop: int) -> np.ndarray:
    eps = cfg.channel.param
    count = stop - start
    masks = np.empty((count, cfg.n), dtype=np.bool_)
    if cfg.resample:
        words = max(1, (cfg.m + 63) // 64)
        cols = np.empty((count, cfg.n, words), dtype=np.uint64)
        for k in range(count):
            rng = sample_rng(cfg.seed, start + k)
            cols[k] = _pack_columns(rng.integers(0, 2, size=(cfg.m, cfg.n), dtype=np.uint8))
            masks[k] = rng.random(cfg.n) < eps
        ranks = masked_ranks_per_matrix(cols, cfg.m, masks)
    else:
        for k in range(count):
            masks[k] = sample_rng(cfg.seed, start + k).random(cfg.n) < eps
        ranks = masked_ranks(A.column_words(), cfg.m, masks)
    return (cfg.m - ranks).astype(float)


def _transmit_chunk(cfg: SimulationConfig, A: GF2Matrix, start: int, stop: int) -> np.ndarray:
    count, m, n = stop - start, cfg.m, cfg.n
    bits = np.empty((count, n), dtype=np.uint8)
    unif = np.empty((count, n))
    for k in range(count):
        rng = sample_rng(cfg.seed, start + k)
        # s is bits[:m], u is bits[m:]
        bits[k] = rng.integers(0, 2, size=n, dtype=np.uint8)
        unif[k] = rng.random(n)
    A2 = A.to_array()[:, m:].astype(np.int64)
    x = bits.copy()
    x[:, :m] ^= ((bits[:, m:].astype(np.int64) @ A2.T) & 1).astype(np.uint8)
    idx = inverse_cdf_indices(cfg.channel, x, unif)
    out = np.empty(count)
    step = max(1, _TABLE_BUDGET >> m)
    for lo in range(0, count, step):
        tables = posterior_tables(A, cfg.channel, idx[lo:lo + step], cfg.max_m)
        out[lo:lo + step] = m + xlogy(tables, tables).sum(axis=1) / np.log(2.0)
    # rounding can push the entropy a hair past m
    return np.clip(out, 0.0, m)


def _chunks(total: int, workers: int) -> list[tuple[int, int]]:
    size = max(1, -(-total // (4 * workers)))
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def simulate_leakages(cfg: SimulationConfig) -> np.ndarray:
    """Per-sample conditional leakage, in sample order."""
    A = simulation_matrix(cfg)
    work = _rank_chunk if cfg.uses_rank_path else _transmit_chunk
    chunks = _chunks(cfg.samples, cfg.workers)
    log.debug("simulating %d samples in %d chunks", cfg.samples, len(chunks))
    if cfg.workers == 1:
        parts = [work(cfg, A, lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda c: work(cfg, A, *c), chunks))
    return np.concatenate(parts)


def simulate_leakage_histogram(cfg: SimulationConfig) -> Histogram:
    return Histogram.from_values(cfg.m, simulate_leakages(cfg))


def compare_histogram_to_pmf(h: Histogram, p: LeakagePMF) -> ComparisonReport:
    """Total-variation distance and per-``l`` residuals ``freq - p``."""
    if h.m != p.m:
        raise InputError(f"histogram has m={h.m}, PMF has m={p.m}")
    residuals = h.frequencies() - p.probs
    return ComparisonReport(float(0.5 * np.abs(residuals).sum()), residuals)
