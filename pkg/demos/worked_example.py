"""
Leakage of a single received word
=================================

A two-bit secret is hidden in a three-bit codeword with the parity-check
matrix [[1,0,1],[0,1,1]].  Eve sees the word through an erasure channel.
"""

import numpy as np

from cosetleak import (CosetEncoder, GF2Matrix, GF2Vector, bec, bec_leakage_rank,
                       conditional_leakage, posterior_given_observation)

A = GF2Matrix.from_rows([[1, 0, 1], [0, 1, 1]])
enc = CosetEncoder(A)

# the secret s = (1, 0) with random bit u = 1 becomes x = (0, 1, 1)
x = enc.encode(GF2Vector.from_bits([1, 0]), GF2Vector.from_bits([1]))
print("codeword", x.tolist(), "decodes to", enc.decode(x).tolist())

# Eve receives z = (1, 0, e).  Two secrets remain possible.
z = "1 0 e"
table = posterior_given_observation(A, bec(0.5), z)
for s, p in table.as_dict().items():
    bits = [(s >> i) & 1 for i in range(A.m)]
    print("P(s =", bits, "| z) =", p)

print("leakage (posterior table):", conditional_leakage(A, bec(0.5), z).leakage_bits)
print("leakage (m - rank):       ", bec_leakage_rank(A, z))

# one more erasure and nothing is learned
print("z = (1, e, e):", bec_leakage_rank(A, "1 e e"), "bits")

# every erasure pattern, with the received bits chosen at random
rng = np.random.default_rng(0)
for mask in range(8):
    zz = ["e" if (mask >> j) & 1 else str(rng.integers(0, 2)) for j in range(3)]
    print(" ".join(zz), "->", bec_leakage_rank(A, zz))
