"""
On a BSC the leakage does not depend on what Eve receives
=========================================================

Every received word gives the same posterior entropy, so the conditional
leakage equals its average m - H(AV), where V is the channel noise.
"""

import numpy as np

from cosetleak import bsc, bsc_average_leakage, conditional_leakage, random_systematic
from cosetleak.oracle import brute_mutual_information

rng = np.random.default_rng(42)
A = random_systematic(3, 8, rng)
print(A.to_array())

for delta in (0.02, 0.1, 0.25, 0.45):
    ch = bsc(delta)
    L = [conditional_leakage(A, ch, [str((z >> i) & 1) for i in range(8)]).leakage_bits
         for z in range(256)]
    print(f"delta={delta:<5} min L {min(L):.6f}  max L {max(L):.6f}  "
          f"m - H(AV) {bsc_average_leakage(A, delta).leakage_bits:.6f}  "
          f"I(S;Z) by enumeration {brute_mutual_information(A, ch):.6f}")

# larger codes: the noise-syndrome table costs O(n 2^m)
for n in (50, 100, 200, 400):
    A = random_systematic(12, n, rng)
    print(f"m=12 n={n:<4} average leakage at delta=0.05: "
          f"{bsc_average_leakage(A, 0.05).leakage_bits:.3e}")
