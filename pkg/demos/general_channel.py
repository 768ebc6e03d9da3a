"""
A channel with three outputs
============================

Any binary-input channel works as long as both rows of W are given.  Here
the leakage is no longer an integer, and it varies with the received word.
"""

import numpy as np

from cosetleak import (SimulationConfig, general, posterior_given_observation,
                       random_systematic, simulate_leakages)
from cosetleak.oracle import brute_mutual_information, brute_posterior

ch = general(["a", "b", "c"], [0.6, 0.3, 0.1], [0.2, 0.3, 0.5])
A = random_systematic(3, 7, np.random.default_rng(3))

z = "a b c c a b a"
fast = posterior_given_observation(A, ch, z)
slow = brute_posterior(A, ch, z)
print("posterior:", np.round(fast.probs, 4))
print("max difference to enumeration:", np.abs(fast.probs - slow.probs).max())
print("leakage of this word:", fast.leakage().leakage_bits)

vals = simulate_leakages(SimulationConfig(3, 7, ch, 20_000, seed=5, matrix=A))
print(f"\nsimulated leakage: mean {vals.mean():.4f}, min {vals.min():.4f}, max {vals.max():.4f}")
print(f"I(S;Z) by enumeration: {brute_mutual_information(A, ch):.4f}")
print("quantiles:", np.round(np.quantile(vals, [0.1, 0.5, 0.9]), 4))
