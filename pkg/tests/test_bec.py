import numpy as np
import pytest

from cosetleak.bec import (
    bec_leakage_rank,
    bec_leakage_ranks,
    bec_posterior_summary,
    erasure_positions,
)
from cosetleak.channel import bec
from cosetleak.errors import InputError
from cosetleak.gf2 import GF2Matrix, rank, random_matrix, random_systematic, submatrix_columns
from cosetleak.pgf import conditional_leakage


def test_worked_example(example_A):
    assert bec_leakage_rank(example_A, "1 0 e") == 1
    assert bec_leakage_rank(example_A, "1 e e") == 0
    summary = bec_posterior_summary(example_A, "1 0 e", check=True)
    assert (summary.w, summary.support_size, summary.leakage_bits) == (1, 2, 1)


def test_no_erasures_leaks_everything():
    for seed in range(5):
        A = random_systematic(6, 13, seed)
        assert bec_leakage_rank(A, ["0"] * 13) == 6
        assert bec_leakage_rank(A, ["e"] * 13) == 0


def test_summary_check_matches_table():
    rng = np.random.default_rng(3)
    for _ in range(200):
        A = random_systematic(4, 9, rng)
        z = list(rng.choice(["0", "1", "e"], size=9))
        summary = bec_posterior_summary(A, z, check=True)
        assert summary.leakage_bits == pytest.approx(
            conditional_leakage(A, bec(0.2), z).leakage_bits, abs=1e-10
        )


def test_only_erasure_pattern_matters():
    rng = np.random.default_rng(4)
    for _ in range(100):
        A = random_systematic(5, 11, rng)
        mask = rng.random(11) < 0.5
        z1 = np.where(mask, "e", rng.choice(["0", "1"], size=11))
        z2 = np.where(mask, "e", rng.choice(["0", "1"], size=11))
        assert bec_leakage_rank(A, list(z1)) == bec_leakage_rank(A, list(z2))


def test_more_erasures_never_leak_more():
    rng = np.random.default_rng(5)
    for _ in range(100):
        A = random_systematic(5, 12, rng)
        z = list(rng.choice(["0", "1", "e"], size=12))
        known = [i for i, s in enumerate(z) if s != "e"]
        if not known:
            continue
        more = list(z)
        more[int(rng.choice(known))] = "e"
        assert bec_leakage_rank(A, more) <= bec_leakage_rank(A, z)


def test_batch_ranks_match_scalar():
    rng = np.random.default_rng(6)
    for m, n in [(3, 7), (64, 100), (65, 130), (100, 200)]:
        A = random_systematic(m, n, rng)
        masks = rng.random((50, n)) < 0.55
        want = [m - rank(submatrix_columns(A, np.flatnonzero(row))) for row in masks]
        np.testing.assert_array_equal(bec_leakage_ranks(A, masks), want)


def test_batch_ranks_per_sample_matrices():
    from cosetleak.montecarlo import _pack_columns

    rng = np.random.default_rng(7)
    m, n = 70, 90
    mats = [random_matrix(m, n, rng) for _ in range(20)]
    cols = np.stack([_pack_columns(M.to_array()) for M in mats])
    masks = rng.random((20, n)) < 0.3
    got = bec_leakage_ranks(mats[0], masks, per_sample_columns=cols)
    want = [m - rank(submatrix_columns(M, np.flatnonzero(mk))) for M, mk in zip(mats, masks)]
    np.testing.assert_array_equal(got, want)


def test_bad_symbols():
    with pytest.raises(InputError, match="position 2"):
        erasure_positions(["0", "?", "1"])
    with pytest.raises(InputError):
        bec_leakage_rank(GF2Matrix.from_rows([[1, 0, 1]]), ["0", "1"])
