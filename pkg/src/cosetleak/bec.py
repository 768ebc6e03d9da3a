"""Exact leakage for erasure eavesdroppers from a rank computation.

Over a BEC the posterior of the secret is uniform on an affine subspace of
dimension ``w = rank[a_j : z_j = e]``, so ``L(z) = m - w`` bits.  Only the
erasure positions matter; the received values of the other symbols just
translate the subspace.  Nothing here allocates a ``2^m`` table, which is
what makes ``m = 100`` tractable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import masked_ranks, masked_ranks_per_matrix
from .channel import ERASURE, bec
from .errors import InputError, InvariantError
from .gf2 import GF2Matrix, rank, submatrix_columns
from .observation import Observation
from .pgf import DEFAULT_MAX_M, posterior_given_observation

__all__ = [
    "BecPosteriorSummary",
    "erasure_positions",
    "bec_leakage_rank",
    "bec_posterior_summary",
    "bec_leakage_ranks",
]

_BEC_SYMBOLS = frozenset(("0", "1", ERASURE))


@dataclass(frozen=True)
class BecPosteriorSummary:
    w: int
    m: int

    @property
    def support_size(self) -> int:
        return 1 << self.w

    @property
    def leakage_bits(self) -> int:
        return self.m - self.w


def erasure_positions(z, n: int | None = None) -> tuple[int, ...]:
    """0-based erased positions of a BEC observation, validating its symbols."""
    obs = z if isinstance(z, Observation) else Observation(z)
    if n is not None and obs.n != n:
        raise InputError(f"observation has {obs.n} symbols, matrix has {n} columns")
    for pos, s in enumerate(obs.symbols, start=1):
        if s not in _BEC_SYMBOLS:
            raise InputError(f"symbol {s!r} at position {pos} is not 0, 1 or e")
    return obs.erased


def bec_leakage_rank(A: GF2Matrix, z) -> int:
    """``m - rank`` of the columns of ``A`` at erased positions of ``z``."""
    return A.m - rank(submatrix_columns(A, erasure_positions(z, A.n)))


def bec_posterior_summary(A: GF2Matrix, z, check: bool = False,
                          max_m: int = DEFAULT_MAX_M) -> BecPosteriorSummary:
    """Rank ``w`` of the erased columns; the posterior is uniform on ``2^w`` points.

    With ``check=True`` (and ``m <= max_m``) the full posterior is computed
    and verified to have exactly that shape.
    """
    w = rank(submatrix_columns(A, erasure_positions(z, A.n)))
    summary = BecPosteriorSummary(w=w, m=A.m)
    if check and A.m <= max_m:
        # erasure probability is irrelevant to the posterior; any value in (0, 1) works
        table = posterior_given_observation(A, bec(0.5), z, max_m)
        support = table.support()
        if support.size != summary.support_size or not np.allclose(
            table.probs[support], 2.0**-w, rtol=0, atol=1e-12
        ):
            raise InvariantError(
                f"posterior is not uniform on 2^{w} points (support {support.size})"
            )
    return summary


def bec_leakage_ranks(A: GF2Matrix, erasure_masks, per_sample_columns=None) -> np.ndarray:
    """Leakage ``m - w`` for each row of a boolean ``(N, n)`` erasure mask.

    ``per_sample_columns`` optionally supplies an ``(N, n, words)`` array of
    column words, one matrix per sample; ``A`` then only fixes the shape.
    """
    masks = np.ascontiguousarray(np.atleast_2d(erasure_masks), dtype=np.bool_)
    if masks.shape[1] != A.n:
        raise InputError(f"masks have {masks.shape[1]} columns, matrix has {A.n}")
    if per_sample_columns is None:
        ranks = masked_ranks(A.column_words(), A.m, masks)
    else:
        ranks = masked_ranks_per_matrix(per_sample_columns, A.m, masks)
    return A.m - ranks
