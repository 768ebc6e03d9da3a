"""Exhaustive reference computations.

These enumerate codewords, observations, erasure patterns or whole matrix
ensembles directly from the definitions.  They are exponential and guarded
by hard size limits; they exist to check the fast paths, never to replace
them.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .channel import BinaryInputChannel
from .coset import CosetEncoder
from .ensemble import LeakagePMF
from .errors import InputError, ResourceError
from .gf2 import GF2Matrix, GF2Vector, rank, submatrix_columns
from .observation import Observation
from .pgf import PosteriorTable, entropy_bits

__all__ = [
    "naive_rank",
    "brute_posterior",
    "brute_mutual_information",
    "exact_leakage_pmf",
    "brute_ensemble_pmf",
]

MAX_CODEWORD_BITS = 20
MAX_JOINT_CELLS = 1 << 26
MAX_ENSEMBLE_BITS = 20


def naive_rank(rows) -> int:
    """Row reduction mod 2 on an unpacked integer array."""
    M = np.array(rows, dtype=np.int64) % 2
    if M.ndim != 2 or M.size == 0:
        return 0
    r = 0
    nrows, ncols = M.shape
    for c in range(ncols):
        below = np.flatnonzero(M[r:, c])
        if below.size == 0:
            continue
        pivot = r + int(below[0])
        M[[r, pivot]] = M[[pivot, r]]
        hits = np.flatnonzero(M[:, c])
        hits = hits[hits != r]
        M[hits] = (M[hits] + M[r]) % 2
        r += 1
        if r == nrows:
            break
    return r


@lru_cache(maxsize=64)
def _codebook(A: GF2Matrix) -> np.ndarray:
    """Codeword bits ``x(s, u)`` as a ``(2^m, 2^(n-m), n)`` uint8 array."""
    if A.n > MAX_CODEWORD_BITS:
        raise ResourceError(f"n={A.n} exceeds the enumeration limit {MAX_CODEWORD_BITS}")
    enc = CosetEncoder(A)
    m, k = A.m, A.n - A.m
    out = np.empty((1 << m, 1 << k, A.n), dtype=np.uint8)
    for s in range(1 << m):
        sv = GF2Vector(m, s)
        for u in range(1 << k):
            out[s, u] = enc.encode(sv, GF2Vector(k, u)).to_array()
    out.setflags(write=False)
    return out


def _joint(A: GF2Matrix, ch: BinaryInputChannel, zidx: np.ndarray) -> np.ndarray:
    """Unnormalized ``sum_u prod_i W(z_i | x_i(s, u))`` for a batch of observations.

    ``zidx`` has shape ``(B, n)``; result has shape ``(B, 2^m)``.
    """
    X = _codebook(A)
    W = np.stack([ch.w0, ch.w1])  # W[x, z]
    lik = np.ones((zidx.shape[0],) + X.shape[:2])
    for i in range(A.n):
        lik *= W[X[None, :, :, i], zidx[:, i, None, None]]
    return lik.sum(axis=2)


def brute_posterior(A: GF2Matrix, ch: BinaryInputChannel, z) -> PosteriorTable:
    """``p(s | z)`` by summing the channel likelihood over every codeword."""
    symbols = (z if isinstance(z, Observation) else Observation(z)).symbols
    if len(symbols) != A.n:
        raise InputError(f"observation has {len(symbols)} symbols, matrix has {A.n} columns")
    zidx = np.array([[ch.symbol_index(s) for s in symbols]], dtype=np.intp)
    joint = _joint(A, ch, zidx)[0]
    total = joint.sum()
    if total == 0:
        raise InputError("observation has zero probability under this code and channel")
    return PosteriorTable(A.m, joint / total)


def brute_mutual_information(A: GF2Matrix, ch: BinaryInputChannel) -> float:
    """``I(S; Z) = sum_z P(z) L(z)`` over every observation, in bits."""
    k = len(ch.alphabet)
    n_obs = k**A.n
    if n_obs * (1 << A.n) > MAX_JOINT_CELLS:
        raise ResourceError(
            f"{k}^{A.n} observations x 2^{A.n} codewords exceeds the enumeration limit"
        )
    total = 0.0
    batch = max(1, MAX_JOINT_CELLS // (16 * (1 << A.n)))
    obs_iter = itertools.product(range(k), repeat=A.n)
    while True:
        chunk = list(itertools.islice(obs_iter, batch))
        if not chunk:
            break
        # P(s, z) = 2^-n * sum_u prod_i W(z_i | x_i)
        joint = _joint(A, ch, np.array(chunk, dtype=np.intp)) / (1 << A.n)
        pz = joint.sum(axis=1)
        for row, p in zip(joint, pz):
            if p > 0:
                total += p * (A.m - entropy_bits(row / p))
    return total


def exact_leakage_pmf(A: GF2Matrix, epsilon: float) -> LeakagePMF:
    """Leakage PMF of a fixed matrix over a BEC by enumerating all erasure patterns."""
    if A.n > MAX_ENSEMBLE_BITS:
        raise ResourceError(f"n={A.n} exceeds the enumeration limit {MAX_ENSEMBLE_BITS}")
    probs = np.zeros(A.m + 1)
    for pattern in range(1 << A.n):
        erased = [j for j in range(A.n) if (pattern >> j) & 1]
        weight = epsilon ** len(erased) * (1 - epsilon) ** (A.n - len(erased))
        probs[A.m - rank(submatrix_columns(A, erased))] += weight
    return LeakagePMF(A.m, probs)


def brute_ensemble_pmf(m: int, n: int, epsilon: float) -> LeakagePMF:
    """Leakage PMF averaged over all ``2^(mn)`` matrices and all erasure patterns."""
    if m < 1 or n < 1:
        raise InputError(f"need m, n >= 1, got ({m}, {n})")
    if m * n > 16 or m * n + n > MAX_ENSEMBLE_BITS:
        raise ResourceError(f"({m}, {n}) is too large to enumerate every matrix")
    if not 0.0 <= epsilon <= 1.0:
        raise InputError(f"erasure probability {epsilon} outside [0, 1]")
    probs = np.zeros(m + 1)
    for flat in range(1 << (m * n)):
        cols = tuple((flat >> (m * j)) & ((1 << m) - 1) for j in range(n))
        probs += exact_leakage_pmf(GF2Matrix(m, n, cols), epsilon).probs
    return LeakagePMF(m, probs / (1 << (m * n)))
