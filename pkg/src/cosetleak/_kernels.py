"""Compiled rank kernels for batches of column subsets.

Columns are ``uint64`` words (low word first, see ``GF2Matrix.column_words``).
The Monte Carlo harness evaluates thousands of erasure patterns against the
same matrix, which is too slow with Python integers.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True, nogil=True)
def _leading_bit(v):
    for w in range(v.shape[0] - 1, -1, -1):
        x = v[w]
        if x != 0:
            b = 63
            while (x >> np.uint64(b)) == 0:
                b -= 1
            return 64 * w + b
    return -1


@nb.njit(cache=True, nogil=True)
def _rank_selected(cols, mask, basis, filled, v):
    # basis[h] holds the reduced vector whose leading bit is h
    filled[:] = False
    r = 0
    max_rank = min(basis.shape[0], cols.shape[0])
    for j in range(cols.shape[0]):
        if not mask[j]:
            continue
        v[:] = cols[j]
        while True:
            h = _leading_bit(v)
            if h < 0:
                break
            if filled[h]:
                for w in range(v.shape[0]):
                    v[w] ^= basis[h, w]
            else:
                basis[h, :] = v
                filled[h] = True
                r += 1
                break
        if r == max_rank:
            break
    return r


@nb.njit(cache=True, nogil=True)
def masked_ranks(cols, m, masks):
    """Rank of the columns selected by each row of ``masks`` (fixed matrix)."""
    out = np.empty(masks.shape[0], dtype=np.int64)
    words = cols.shape[1]
    basis = np.zeros((max(m, 1), words), dtype=np.uint64)
    filled = np.zeros(max(m, 1), dtype=np.bool_)
    v = np.zeros(words, dtype=np.uint64)
    for i in range(masks.shape[0]):
        out[i] = _rank_selected(cols, masks[i], basis[:m], filled[:m], v)
    return out


@nb.njit(cache=True, nogil=True)
def masked_ranks_per_matrix(cols, m, masks):
    """Like ``masked_ranks`` but ``cols[i]`` is a separate matrix for sample ``i``."""
    out = np.empty(masks.shape[0], dtype=np.int64)
    words = cols.shape[2]
    basis = np.zeros((max(m, 1), words), dtype=np.uint64)
    filled = np.zeros(max(m, 1), dtype=np.bool_)
    v = np.zeros(words, dtype=np.uint64)
    for i in range(masks.shape[0]):
        out[i] = _rank_selected(cols[i], masks[i], basis[:m], filled[:m], v)
    return out
