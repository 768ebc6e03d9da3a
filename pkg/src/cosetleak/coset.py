"""Coset (syndrome) encoding with a systematic parity-check matrix.

The secret ``s`` of length ``m`` is sent as a uniformly random member of the
coset ``{x : A x = s}``.  With ``A = [I_m | A2]`` a codeword is
``x = (s + A2 u, u)`` for a uniform ``u`` of length ``n - m``.  The main
channel is noiseless, so the legitimate receiver recovers ``s = A y``.
"""

from __future__ import annotations

from .gf2 import GF2Matrix, GF2Vector, _as_rng, matvec, submatrix_columns
from .errors import InputError

__all__ = ["CosetEncoder"]


class CosetEncoder:
    def __init__(self, A: GF2Matrix):
        if not A.m < A.n:
            raise InputError(f"coset encoder needs m < n, got {A.m}x{A.n}")
        if not A.is_systematic():
            raise InputError("coset encoder needs a systematic matrix [I_m | A2]")
        self.A = A
        self.A2 = submatrix_columns(A, range(A.m, A.n))

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def n(self) -> int:
        return self.A.n

    def encode(self, s: GF2Vector, u: GF2Vector) -> GF2Vector:
        if s.length != self.m:
            raise InputError(f"secret has length {s.length}, expected {self.m}")
        if u.length != self.n - self.m:
            raise InputError(f"randomness has length {u.length}, expected {self.n - self.m}")
        head = s.bits ^ matvec(self.A2, u).bits
        return GF2Vector(self.n, head | (u.bits << self.m))

    def encode_random(self, s: GF2Vector, rng=None) -> GF2Vector:
        rng = _as_rng(rng)
        return self.encode(s, GF2Vector.random(self.n - self.m, rng))

    def decode(self, y: GF2Vector) -> GF2Vector:
        if y.length != self.n:
            raise InputError(f"received word has length {y.length}, expected {self.n}")
        return matvec(self.A, y)

    def __repr__(self):
        return f"CosetEncoder(m={self.m}, n={self.n})"
