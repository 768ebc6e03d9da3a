"""Leakage distribution averaged over uniformly random parity-check matrices.

For an erasure eavesdropper the number of erased positions ``K`` is
Binomial(n, eps), and a uniformly random ``m x K`` matrix has rank ``r`` with
probability

    Q(r | m, K) = 2^{-mK} F(m, r) F(K, r) / F(r, r),
    F(m, r) = prod_{i<r} (2^m - 2^i).

Hence ``pbar(l) = E_K[ Q(m - l | m, K) ]``.  Everything is evaluated in the
log2 domain: ``F(100, 100)`` does not fit any machine integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import InputError

__all__ = [
    "LeakagePMF",
    "log2_full_rank_count",
    "rank_probability",
    "rank_probability_table",
    "average_leakage_pmf",
]

_LN2 = np.log(2.0)


@dataclass(frozen=True, eq=False)
class LeakagePMF:
    """Probability of each leakage value ``l = 0..m``; ``probs[l]``."""

    m: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float).ravel()
        if probs.size != self.m + 1:
            raise InputError(f"PMF for m={self.m} needs {self.m + 1} entries, got {probs.size}")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
            raise InputError("PMF entries must be nonnegative and sum to 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, ell: int) -> float:
        return float(self.probs[ell]) if 0 <= ell <= self.m else 0.0

    def as_dict(self) -> dict[int, float]:
        return {ell: float(p) for ell, p in enumerate(self.probs)}

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.probs)

    def mean(self) -> float:
        return float(np.dot(np.arange(self.m + 1), self.probs))


def _log2_one_minus_pow2(e):
    # log2(1 - 2^e) for integer e < 0
    return np.log1p(-np.exp2(e)) / _LN2


def log2_full_rank_count(m: int, n: int) -> float:
    """``log2 F(m, n)``, the number of full-column-rank ``m x n`` matrices."""
    if n < 0 or m < 0:
        raise InputError(f"dimensions must be nonnegative, got ({m}, {n})")
    if n > m:
        raise InputError(f"full-rank count needs n <= m, got ({m}, {n})")
    i = np.arange(n, dtype=float)
    # 2^m - 2^i = 2^m (1 - 2^(i - m))
    return float(n * m + _log2_one_minus_pow2(i - m).sum())


def _log2_partial_products(size: int, r_max: int) -> np.ndarray:
    """``S[r] = sum_{i<r} log2(1 - 2^(i - size))`` for ``r = 0..r_max``."""
    out = np.zeros(r_max + 1)
    if r_max > 0:
        out[1:] = np.cumsum(_log2_one_minus_pow2(np.arange(r_max, dtype=float) - size))
    return out


def rank_probability(r: int, m: int, n: int) -> float:
    """``Q(r | m, n)``: probability a uniform ``m x n`` binary matrix has rank ``r``."""
    if m < 0 or n < 0:
        raise InputError(f"dimensions must be nonnegative, got ({m}, {n})")
    if r < 0 or r > min(m, n):
        return 0.0
    return float(rank_probability_table(m, n)[r])


def rank_probability_table(m: int, n: int) -> np.ndarray:
    """``Q(r | m, n)`` for ``r = 0..min(m, n)``."""
    if m < 0 or n < 0:
        raise InputError(f"dimensions must be nonnegative, got ({m}, {n})")
    k = min(m, n)
    r = np.arange(k + 1, dtype=float)
    # log2 Q = -(m - r)(n - r) + S_m[r] + S_n[r] - S_r[r]
    s_m = _log2_partial_products(m, k)
    s_n = _log2_partial_products(n, k)
    s_r = np.array([_log2_partial_products(int(j), int(j))[-1] for j in r])
    log2q = -(m - r) * (n - r) + s_m + s_n - s_r
    return _exp2_flush(log2q)


def _exp2_flush(log2p):
    log2p = np.asarray(log2p, dtype=float)
    return np.where(log2p < -1074, 0.0, np.exp2(np.maximum(log2p, -1075)))


def _rank_log2_matrix(m: int, n: int) -> np.ndarray:
    """``log2 Q(r | m, k)`` as an ``(m+1, n+1)`` array over ``r`` and ``k``.

    Entries with ``r > min(m, k)`` are ``-inf``.
    """
    r = np.arange(m + 1, dtype=float)[:, None]
    k = np.arange(n + 1, dtype=float)[None, :]
    s_m = _log2_partial_products(m, m)[:, None]
    # S_k[r] = sum_{i<r} log2(1 - 2^(i-k)); valid for r <= k
    i = np.arange(m, dtype=float)[:, None]
    terms = _log2_one_minus_pow2(np.minimum(i - k, -1.0))
    s_k = np.vstack([np.zeros((1, n + 1)), np.cumsum(terms, axis=0)])
    s_r = np.array([_log2_partial_products(j, j)[-1] for j in range(m + 1)])[:, None]
    out = -(m - r) * (k - r) + s_m + s_k - s_r
    out[r > np.minimum(m, k)] = -np.inf
    return out


def _log_binomial_weights(n: int, eps: float) -> np.ndarray:
    """Natural-log Binomial(n, eps) probabilities for ``k = 0..n``."""
    k = np.arange(n + 1, dtype=float)
    log_comb = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    with np.errstate(divide="ignore"):
        return log_comb + xlogy(k, eps) + xlogy(n - k, 1.0 - eps)


def average_leakage_pmf(m: int, n: int, epsilon: float) -> LeakagePMF:
    """Leakage PMF averaged over uniform ``m x n`` matrices for a BEC(``epsilon``)."""
    if m < 1 or n < 0:
        raise InputError(f"need m >= 1 and n >= 0, got ({m}, {n})")
    eps = float(epsilon)
    if not 0.0 <= eps <= 1.0:
        raise InputError(f"erasure probability {eps} outside [0, 1]")
    log2_w = _log_binomial_weights(n, eps) / _LN2
    log2_q = _rank_log2_matrix(m, n)
    # rank r = m - ell, so row ell of the result uses row (m - ell) of Q
    terms = _exp2_flush(log2_q[::-1] + log2_w[None, :])
    return LeakagePMF(m, terms.sum(axis=1))
