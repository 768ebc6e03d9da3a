import numpy as np
import pytest
from scipy.stats import chi2_contingency

from cosetleak.channel import bec, bsc, general
from cosetleak.ensemble import LeakagePMF, average_leakage_pmf
from cosetleak.errors import InputError, ResourceError
from cosetleak.gf2 import random_systematic
from cosetleak.montecarlo import (
    Histogram,
    SimulationConfig,
    compare_histogram_to_pmf,
    simulate_leakage_histogram,
    simulate_leakages,
    simulation_matrix,
)
from cosetleak.oracle import exact_leakage_pmf


def test_degenerate_erasure_rates():
    for eps, ell in ((0.0, 5), (1.0, 0)):
        for shortcut in (True, False):
            cfg = SimulationConfig(5, 11, bec(eps), 200, seed=1, shortcut=shortcut)
            h = simulate_leakage_histogram(cfg)
            assert h.counts[ell] == 200


def test_deterministic_across_runs_and_workers():
    base = dict(m=20, n=50, channel=bec(0.6), samples=3001, seed=11)
    ref = simulate_leakages(SimulationConfig(**base))
    assert np.array_equal(ref, simulate_leakages(SimulationConfig(**base)))
    for workers in (2, 3, 8):
        assert np.array_equal(ref, simulate_leakages(SimulationConfig(**base, workers=workers)))
    other = simulate_leakages(SimulationConfig(**{**base, "seed": 12}))
    assert not np.array_equal(ref, other)


def test_full_transmit_deterministic_across_workers():
    ch = general(list("abc"), [0.6, 0.3, 0.1], [0.1, 0.3, 0.6])
    base = dict(m=3, n=7, channel=ch, samples=500, seed=5)
    ref = simulate_leakages(SimulationConfig(**base))
    assert np.array_equal(ref, simulate_leakages(SimulationConfig(**base, workers=4)))


@pytest.mark.parametrize("m, n, eps", [(2, 5, 0.4), (3, 7, 0.5), (4, 8, 0.6)])
def test_shortcut_agrees_with_full_transmission(m, n, eps):
    N = 100_000 if m <= 3 else 50_000
    A = random_systematic(m, n, m + n)
    quick = simulate_leakage_histogram(SimulationConfig(m, n, bec(eps), N, seed=1, matrix=A))
    full = simulate_leakage_histogram(
        SimulationConfig(m, n, bec(eps), N, seed=2, matrix=A, shortcut=False))
    keep = (quick.counts + full.counts) > 0
    assert chi2_contingency(np.stack([quick.counts[keep], full.counts[keep]])).pvalue > 0.001
    # both should also match the exact fixed-matrix law
    exact = exact_leakage_pmf(A, eps)
    assert compare_histogram_to_pmf(quick, exact).total_variation < 0.01


def test_fixed_matrix_histogram_matches_exact_law():
    A = random_systematic(5, 12, 3)
    h = simulate_leakage_histogram(SimulationConfig(5, 12, bec(0.5), 40_000, seed=4, matrix=A))
    assert compare_histogram_to_pmf(h, exact_leakage_pmf(A, 0.5)).total_variation < 0.015


def test_resample_mode_matches_ensemble():
    m, n, eps = 6, 12, 0.5
    h = simulate_leakage_histogram(SimulationConfig(m, n, bec(eps), 40_000, seed=9, resample=True))
    assert compare_histogram_to_pmf(h, average_leakage_pmf(m, n, eps)).total_variation < 0.015


def test_bsc_leakage_is_constant():
    m, n, delta = 3, 9, 0.15
    A = random_systematic(m, n, 8)
    vals = simulate_leakages(SimulationConfig(m, n, bsc(delta), 300, seed=2, matrix=A))
    assert np.ptp(vals) <= 1e-10


def test_total_variation_bounds():
    pmf = average_leakage_pmf(4, 9, 0.5)
    h = Histogram.from_values(4, np.repeat(np.arange(5), np.rint(pmf.probs * 1000).astype(int)))
    # rounding each of m+1 cells moves at most 1/(2N) each
    assert compare_histogram_to_pmf(h, pmf).total_variation <= 5 / (2 * h.N) + 1e-12
    a = simulate_leakage_histogram(SimulationConfig(4, 9, bec(0.5), 1000, seed=3))
    b = simulate_leakage_histogram(SimulationConfig(4, 9, bec(0.5), 1000, seed=3))
    same = LeakagePMF(4, b.frequencies())
    assert compare_histogram_to_pmf(a, same).total_variation == 0.0
    with pytest.raises(InputError):
        compare_histogram_to_pmf(a, average_leakage_pmf(3, 9, 0.5))


def test_histogram_binning_and_merge():
    h = Histogram.from_values(2, [0.0, 0.4, 0.6, 1.49, 2.0])
    assert h.counts.tolist() == [2, 2, 1]
    merged = h.merge(h)
    assert merged.N == 10 and merged.values.size == 10


def test_matrix_drawn_from_seed():
    cfg = SimulationConfig(4, 9, bec(0.5), 10, seed=21)
    A = simulation_matrix(cfg)
    assert A == simulation_matrix(SimulationConfig(4, 9, bec(0.5), 10, seed=21))
    assert A.is_systematic()


def test_config_errors():
    with pytest.raises(ResourceError):
        SimulationConfig(30, 40, bsc(0.1), 10)
    with pytest.raises(InputError):
        SimulationConfig(3, 6, bsc(0.1), 10, resample=True)
    with pytest.raises(InputError):
        SimulationConfig(3, 6, bec(0.1), 10, resample=True, matrix=random_systematic(3, 6, 1))
    with pytest.raises(InputError):
        SimulationConfig(3, 6, bec(0.1), 0)
    with pytest.raises(InputError):
        SimulationConfig(3, 6, bec(0.1), 10, matrix=random_systematic(3, 7, 1))
    # BEC at large m stays on the rank path
    SimulationConfig(100, 200, bec(0.5), 10)
