"""Conditional information leakage through generating functions over GF(2)^m.

For a received word ``z`` the posterior of the secret is the coefficient
table of

    prod_i ( Phi(0|z_i) + Phi(1|z_i) t^{a_i} )

where ``a_i`` is column ``i`` of the parity-check matrix and ``t^x t^y =
t^{x xor y}``.  Multiplying in one factor at a time gives the update

    beta'[s] = Phi(0|z_i) beta[s] + Phi(1|z_i) beta[s xor a_i]

which costs ``O(2^m)`` per column, so ``O(n 2^m)`` overall.  Replacing the
backward probabilities with ``(1 - delta, delta)`` yields the distribution of
``A V`` for BSC noise ``V`` and hence the average leakage ``m - H(A V)``.

Tables are indexed by the integer encoding of ``s`` (bit ``i`` is ``s_i``).
Internally a table is viewed as an ``m``-dimensional ``2 x ... x 2`` array so
that ``s -> s xor a`` is a flip along the axes of the set bits of ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import BinaryInputChannel, bsc
from .errors import InputError, InvariantError, ResourceError, UnreachableSymbolError
from .gf2 import GF2Matrix, GF2Vector
from .observation import Observation

__all__ = [
    "DEFAULT_MAX_M",
    "PosteriorTable",
    "LeakageResult",
    "entropy_bits",
    "posterior_given_observation",
    "conditional_leakage",
    "noise_syndrome_distribution",
    "bsc_average_leakage",
    "xor_convolve",
]

DEFAULT_MAX_M = 24

_RENORM_TOL = 1e-12
_DRIFT_TOL = 1e-9


def entropy_bits(probs) -> float:
    """Shannon entropy in bits with ``0 log 0 = 0``."""
    p = np.asarray(probs, dtype=float).ravel()
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True, eq=False)
class PosteriorTable:
    """A probability vector over GF(2)^m indexed by the integer encoding of ``s``."""

    m: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float).ravel()
        if probs.size != 1 << self.m:
            raise InputError(f"table for m={self.m} needs {1 << self.m} entries, got {probs.size}")
        if np.any(probs < 0):
            raise InputError("table has negative entries")
        if abs(probs.sum() - 1.0) > _DRIFT_TOL:
            raise InputError(f"table sums to {probs.sum()!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, s) -> float:
        if isinstance(s, GF2Vector):
            if s.length != self.m:
                raise InputError(f"index vector has length {s.length}, expected {self.m}")
            s = s.bits
        return float(self.probs[s])

    def __len__(self):
        return self.probs.size

    def entropy(self) -> float:
        return entropy_bits(self.probs)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.probs)

    def as_dict(self, tol: float = 0.0) -> dict[int, float]:
        return {int(i): float(p) for i, p in enumerate(self.probs) if p > tol}

    def leakage(self) -> LeakageResult:
        return LeakageResult.from_entropy(self.m, self.entropy())


@dataclass(frozen=True)
class LeakageResult:
    """Leakage ``m - H(S | Z = z)`` in bits under a uniform secret."""

    leakage_bits: float
    entropy_bits: float
    m: int

    @classmethod
    def from_entropy(cls, m: int, h: float) -> LeakageResult:
        if h < -_DRIFT_TOL or h > m + _DRIFT_TOL:
            raise InvariantError(f"entropy {h} outside [0, {m}]")
        h = min(max(h, 0.0), float(m))
        return cls(leakage_bits=m - h, entropy_bits=h, m=m)


def _check_m(m: int, max_m: int) -> None:
    if m < 1:
        raise InputError("m must be at least 1")
    if m > max_m:
        raise ResourceError(
            f"m={m} exceeds the table cap max_m={max_m} (2^m entries); raise max_m explicitly"
        )


def _flip_axes(a: int, m: int) -> tuple[int, ...]:
    # bit i of the index is axis (m - 1 - i) of the C-ordered 2x...x2 view,
    # offset by one for the leading batch axis
    return tuple(1 + m - 1 - i for i in range(m) if (a >> i) & 1)


def _xor_recursion(cols, m: int, phi0: np.ndarray, phi1: np.ndarray) -> np.ndarray:
    """Run the update over all columns for a batch of weight sequences.

    ``phi0``/``phi1`` have shape ``(B, n)``.  Returns ``(B, 2^m)`` tables.
    """
    batch = phi0.shape[0]
    shape = (batch,) + (2,) * m
    beta = np.zeros(shape)
    beta[(slice(None),) + (0,) * m] = 1.0
    buf = np.empty(shape)
    bshape = (batch,) + (1,) * m
    for r, a in enumerate(cols):
        axes = _flip_axes(a, m)
        if not axes:
            # zero column: beta' = (phi0 + phi1) beta = beta
            continue
        p0 = phi0[:, r].reshape(bshape)
        p1 = phi1[:, r].reshape(bshape)
        np.multiply(np.flip(beta, axis=axes), p1, out=buf)
        beta *= p0
        beta += buf
    out = beta.reshape(batch, 1 << m)
    return _normalize(out)


def _normalize(tables: np.ndarray) -> np.ndarray:
    totals = tables.sum(axis=1)
    drift = np.abs(totals - 1.0)
    if np.any(drift > _DRIFT_TOL):
        raise InvariantError(f"posterior normalization drifted by {drift.max():.3e}")
    fix = drift > _RENORM_TOL
    if np.any(fix):
        tables[fix] /= totals[fix, None]
    return tables


def _backward_weights(ch: BinaryInputChannel, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    phi0, phi1 = ch.backward_table()
    p0, p1 = phi0[idx], phi1[idx]
    if np.isnan(p0).any():
        bad = np.argwhere(np.isnan(p0))[0]
        sym = ch.alphabet[idx[tuple(bad)]]
        raise UnreachableSymbolError(
            f"symbol {sym!r} at position {bad[-1] + 1} has zero probability under both inputs"
        )
    return p0, p1


def _symbol_indices(ch: BinaryInputChannel, z, n: int) -> np.ndarray:
    symbols = (z if isinstance(z, Observation) else Observation(z)).symbols
    if len(symbols) != n:
        raise InputError(f"observation has {len(symbols)} symbols, matrix has {n} columns")
    out = np.empty(n, dtype=np.intp)
    for pos, s in enumerate(symbols):
        try:
            out[pos] = ch.symbol_index(s)
        except InputError:
            raise InputError(
                f"symbol {s!r} at position {pos + 1} not in alphabet {ch.alphabet}"
            ) from None
    return out


def posterior_tables(A: GF2Matrix, ch: BinaryInputChannel, symbol_indices,
                     max_m: int = DEFAULT_MAX_M) -> np.ndarray:
    """Posterior tables for a batch of observations given as symbol indices.

    ``symbol_indices`` has shape ``(B, n)``; the result has shape ``(B, 2^m)``.
    """
    _check_m(A.m, max_m)
    idx = np.atleast_2d(np.asarray(symbol_indices, dtype=np.intp))
    if idx.shape[1] != A.n:
        raise InputError(f"observations have {idx.shape[1]} symbols, matrix has {A.n} columns")
    p0, p1 = _backward_weights(ch, idx)
    return _xor_recursion(A.cols, A.m, p0, p1)


def posterior_given_observation(A: GF2Matrix, ch: BinaryInputChannel, z,
                                max_m: int = DEFAULT_MAX_M) -> PosteriorTable:
    """``p(s | z)`` for a coset code with parity-check matrix ``A``."""
    _check_m(A.m, max_m)
    idx = _symbol_indices(ch, z, A.n)
    return PosteriorTable(A.m, posterior_tables(A, ch, idx[None, :], max_m)[0])


def conditional_leakage(A: GF2Matrix, ch: BinaryInputChannel, z,
                        max_m: int = DEFAULT_MAX_M) -> LeakageResult:
    """``L(z) = m - H(S | Z = z)`` in bits."""
    return posterior_given_observation(A, ch, z, max_m).leakage()


def noise_syndrome_distribution(A: GF2Matrix, delta: float,
                                max_m: int = DEFAULT_MAX_M) -> PosteriorTable:
    """Distribution of ``A V`` where ``V`` has i.i.d. Bernoulli(``delta``) entries."""
    delta = bsc(delta).param
    _check_m(A.m, max_m)
    p0 = np.full((1, A.n), 1.0 - delta)
    p1 = np.full((1, A.n), delta)
    return PosteriorTable(A.m, _xor_recursion(A.cols, A.m, p0, p1)[0])


def bsc_average_leakage(A: GF2Matrix, delta: float,
                        max_m: int = DEFAULT_MAX_M) -> LeakageResult:
    """Average leakage ``I(S; Z) = m - H(A V)`` over a BSC(``delta``)."""
    return noise_syndrome_distribution(A, delta, max_m).leakage()


def _walsh_hadamard(x: np.ndarray) -> np.ndarray:
    x = np.array(x, dtype=float)
    n = x.size
    h = 1
    while h < n:
        x = x.reshape(-1, 2, h)
        x = np.stack([x[:, 0] + x[:, 1], x[:, 0] - x[:, 1]], axis=1)
        h *= 2
    return x.reshape(n)


def xor_convolve(p, q) -> np.ndarray:
    """Distribution of ``X xor Y`` for independent ``X ~ p`` and ``Y ~ q``.

    Product of generating functions, evaluated through the Walsh-Hadamard
    transform.
    """
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.size != q.size or p.size & (p.size - 1):
        raise InputError("tables must have equal power-of-two length")
    out = _walsh_hadamard(_walsh_hadamard(p) * _walsh_hadamard(q)) / p.size
    return np.clip(out, 0.0, None)
