"""
Distribution of the leakage over an erasure channel
===================================================

A fixed random systematic 100 x 200 matrix, 10^4 transmissions.  The
leakage of each one is m minus the rank of the erased columns, so it is an
integer between 0 and 100.  The histogram is set against the average over
all matrices, which has a closed form.
"""

import numpy as np

from cosetleak import (SimulationConfig, average_leakage_pmf, bec,
                       compare_histogram_to_pmf, random_systematic,
                       simulate_leakage_histogram)

m, n, N = 100, 200, 10_000
A = random_systematic(m, n, np.random.default_rng(7))

for eps in (0.46, 0.5, 0.54, 0.58):
    cfg = SimulationConfig(m, n, bec(eps), N, seed=1, matrix=A)
    hist = simulate_leakage_histogram(cfg)
    pmf = average_leakage_pmf(m, n, eps)
    report = compare_histogram_to_pmf(hist, pmf)
    freq = hist.frequencies()
    print(f"\neps = {eps}: mean leakage {freq @ np.arange(m + 1):.3f} bits, "
          f"ensemble mean {pmf.mean():.3f}, TV {report.total_variation:.4f}")
    print("  l   simulated   ensemble")
    for ell in np.flatnonzero((hist.counts > 0) | (pmf.probs > 1e-3)):
        print(f"{ell:3d}   {freq[ell]:9.4f}   {pmf[ell]:8.4f}")

# a small average leakage can hide rare, large conditional leakage
pmf = average_leakage_pmf(m, n, 0.54)
print("\nP(L >= 5) at eps=0.54:", pmf.probs[5:].sum())
