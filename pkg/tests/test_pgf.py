import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetleak.channel import bec, bsc, general
from cosetleak.coset import CosetEncoder
from cosetleak.errors import InputError, ResourceError, UnreachableSymbolError
from cosetleak.gf2 import GF2Matrix, GF2Vector, matvec, random_matrix, random_systematic
from cosetleak.observation import Observation
from cosetleak.oracle import brute_mutual_information, brute_posterior
from cosetleak.pgf import (
    LeakageResult,
    PosteriorTable,
    bsc_average_leakage,
    conditional_leakage,
    entropy_bits,
    noise_syndrome_distribution,
    posterior_given_observation,
    posterior_tables,
    xor_convolve,
)


def h2(p):
    return -p * np.log2(p) - (1 - p) * np.log2(1 - p)


ASYMMETRIC = general(["a", "b", "c"], [0.7, 0.2, 0.1], [0.1, 0.3, 0.6])


def test_worked_example_posterior(example_A):
    for eps in (0.1, 0.5, 0.9):
        table = posterior_given_observation(example_A, bec(eps), ["1", "0", "e"])
        # index 1 is s = (1, 0), index 2 is s = (0, 1)
        np.testing.assert_allclose(table.probs, [0, 0.5, 0.5, 0], atol=1e-15)
        assert table[GF2Vector.from_bits([1, 0])] == 0.5


def test_worked_example_leakage(example_A):
    res = conditional_leakage(example_A, bec(0.5), Observation("1 0 e"))
    assert res.leakage_bits == pytest.approx(1.0, abs=1e-12)
    assert res.entropy_bits == pytest.approx(1.0, abs=1e-12)


def test_noiseless_bsc_gives_point_mass():
    rng = np.random.default_rng(1)
    A = random_systematic(5, 11, rng)
    enc = CosetEncoder(A)
    for _ in range(20):
        s = GF2Vector.random(5, rng)
        x = enc.encode_random(s, rng)
        table = posterior_given_observation(A, bsc(0.0), [str(b) for b in x])
        assert table.probs[s.bits] == 1.0
        assert conditional_leakage(A, bsc(0.0), [str(b) for b in x]).leakage_bits == 5.0


def test_matches_brute_posterior_asymmetric_dmc():
    rng = np.random.default_rng(2)
    for _ in range(50):
        A = random_systematic(3, 6, rng)
        z = list(rng.choice(["a", "b", "c"], size=6))
        fast = posterior_given_observation(A, ASYMMETRIC, z).probs
        slow = brute_posterior(A, ASYMMETRIC, z).probs
        np.testing.assert_allclose(fast, slow, rtol=0, atol=1e-10)


def test_bec_extremes():
    A = random_systematic(4, 9, 3)
    assert conditional_leakage(A, bec(0.5), ["e"] * 9).leakage_bits == pytest.approx(0, abs=1e-12)
    assert conditional_leakage(A, bec(0.5), list("101100111")).leakage_bits == pytest.approx(4)


def test_normalization_drift_over_long_recursion():
    rng = np.random.default_rng(4)
    A = random_systematic(8, 3000, rng)
    z = list(rng.choice(["a", "b", "c"], size=3000))
    tables = posterior_tables(A, ASYMMETRIC, [[ASYMMETRIC.symbol_index(s) for s in z]])
    assert abs(tables.sum() - 1) < 1e-9
    assert np.all(tables >= 0)


def test_noise_syndrome_examples():
    A = GF2Matrix.from_rows([[1, 1]])
    assert noise_syndrome_distribution(A, 0.0).probs.tolist() == [1.0, 0.0]
    for delta in (0.1, 0.25, 0.4):
        # enumerate the four noise patterns: A v = v1 + v2
        want = 2 * delta * (1 - delta)
        assert noise_syndrome_distribution(A, delta).probs[1] == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize("m, n", [(2, 5), (3, 7), (4, 10)])
def test_half_noise_is_uniform_on_image(m, n):
    rng = np.random.default_rng(m + n)
    for A in (random_matrix(m, n, rng), random_systematic(m, n, rng), GF2Matrix(m, n, (1,) * n)):
        # oracle: every noise pattern has probability 2^-n
        brute = np.zeros(1 << m)
        for v in range(1 << n):
            brute[matvec(A, GF2Vector(n, v)).bits] += 2.0**-n
        np.testing.assert_allclose(noise_syndrome_distribution(A, 0.5).probs, brute, atol=1e-14)
    full = noise_syndrome_distribution(random_systematic(m, n, rng), 0.5).probs
    np.testing.assert_allclose(full, np.full(1 << m, 2.0**-m), atol=1e-15)


def test_bsc_average_leakage_examples():
    A = GF2Matrix.from_rows([[1, 1]])
    assert bsc_average_leakage(A, 0.25).leakage_bits == pytest.approx(1 - h2(0.375), abs=1e-14)
    full = random_systematic(5, 12, 1)
    assert bsc_average_leakage(full, 0.5).leakage_bits == pytest.approx(0, abs=1e-12)
    rng = np.random.default_rng(6)
    for _ in range(10):
        A = random_systematic(2, 4, rng)
        for delta in (0.1, 0.3):
            brute = brute_mutual_information(A, bsc(delta))
            assert bsc_average_leakage(A, delta).leakage_bits == pytest.approx(brute, abs=1e-10)


def test_bsc_leakage_constant_over_observations():
    rng = np.random.default_rng(7)
    A = random_systematic(3, 8, rng)
    for delta in (0.05, 0.2):
        avg = bsc_average_leakage(A, delta).leakage_bits
        values = [
            conditional_leakage(A, bsc(delta), [str((z >> i) & 1) for i in range(8)]).leakage_bits
            for z in range(256)
        ]
        assert max(values) - min(values) <= 1e-10
        assert abs(values[0] - avg) <= 1e-10


def _xor_brute(p, q):
    out = np.zeros_like(p)
    for x in range(p.size):
        for y in range(q.size):
            out[x ^ y] += p[x] * q[y]
    return out


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_xor_convolution_is_product_of_generating_functions(m, seed):
    rng = np.random.default_rng(seed)
    p, q = rng.dirichlet(np.ones(1 << m)), rng.dirichlet(np.ones(1 << m))
    np.testing.assert_allclose(xor_convolve(p, q), _xor_brute(p, q), atol=1e-14)


def test_recursion_step_is_xor_convolution():
    # multiplying in one factor equals xor-convolving with a two-point distribution
    rng = np.random.default_rng(8)
    A = random_systematic(4, 7, rng)
    z = list("01e1e0e")
    table = np.zeros(16)
    table[0] = 1.0
    for a, zi in zip(A.cols, z):
        factor = np.zeros(16)
        w = 0.5 if zi == "e" else 1.0
        factor[0] += w if zi != "1" else 0.0
        factor[a] += (1 - w) if zi == "0" else (w if zi != "e" else 0.5)
        table = xor_convolve(table, factor)
    fast = posterior_given_observation(A, bec(0.3), z).probs
    np.testing.assert_allclose(fast, table, atol=1e-14)


def test_flipping_known_symbol_permutes_posterior():
    rng = np.random.default_rng(9)
    for _ in range(50):
        A = random_systematic(4, 9, rng)
        z = list(rng.choice(["0", "1", "e"], size=9))
        known = [i for i, s in enumerate(z) if s != "e"]
        if not known:
            continue
        i = int(rng.choice(known))
        flipped = list(z)
        flipped[i] = "1" if z[i] == "0" else "0"
        p = posterior_given_observation(A, bec(0.4), z).probs
        q = posterior_given_observation(A, bec(0.4), flipped).probs
        # flipping z_i translates s by a_i
        idx = np.arange(16) ^ A.cols[i]
        np.testing.assert_array_equal(q, p[idx])
        assert abs(entropy_bits(p) - entropy_bits(q)) <= 1e-12


def test_errors():
    A = random_systematic(3, 5, 1)
    with pytest.raises(InputError, match="position 2"):
        posterior_given_observation(A, bsc(0.1), ["0", "x", "1", "0", "1"])
    with pytest.raises(InputError):
        posterior_given_observation(A, bsc(0.1), ["0", "1"])
    ch = general(["a", "b", "c"], [0.5, 0.5, 0.0], [0.5, 0.5, 0.0])
    with pytest.raises(UnreachableSymbolError, match="position 3"):
        posterior_given_observation(A, ch, ["a", "b", "c", "a", "a"])
    big = random_systematic(30, 31, 1)
    with pytest.raises(ResourceError, match="max_m=24"):
        posterior_given_observation(big, bsc(0.1), ["0"] * 31)
    with pytest.raises(ResourceError):
        bsc_average_leakage(random_systematic(6, 8, 1), 0.1, max_m=5)


def test_table_and_result_invariants():
    with pytest.raises(InputError):
        PosteriorTable(2, [0.5, 0.5, 0.5, 0.0])
    with pytest.raises(InputError):
        PosteriorTable(2, [0.5, 0.5])
    table = PosteriorTable(2, [0.25] * 4)
    res = table.leakage()
    assert res == LeakageResult(leakage_bits=0.0, entropy_bits=2.0, m=2)
    assert entropy_bits([1.0, 0.0]) == 0.0
