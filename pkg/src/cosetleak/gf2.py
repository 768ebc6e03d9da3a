"""Bit-packed vectors and matrices over GF(2).

Coordinate ``i`` (0-based) of a vector is bit ``i`` of its integer payload.
The same convention maps a syndrome ``s`` to the integer index used by
posterior tables, so ``s = (1, 0)`` is index 1 and ``s = (0, 1)`` is index 2.

Matrices are stored column-major: column ``j`` is an integer whose bit ``i``
is entry ``(i, j)``.  Python integers are arbitrary precision, so any number
of rows is supported without a separate word layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, ParseError

__all__ = [
    "GF2Vector",
    "GF2Matrix",
    "rank",
    "submatrix_columns",
    "systematic",
    "identity",
    "random_matrix",
    "random_systematic",
    "matvec",
    "parse_matrix",
    "format_matrix",
    "read_matrix",
    "write_matrix",
]


def _as_rng(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _pack_bits(bits) -> int:
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise InputError("GF(2) entries must be 0 or 1")
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def _unpack_bits(value: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros(0, dtype=np.uint8)
    raw = value.to_bytes((length + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length]


@dataclass(frozen=True)
class GF2Vector:
    """A vector in GF(2)^length packed into a Python integer."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise InputError(f"vector length must be nonnegative, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise InputError(f"payload has bits set beyond length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> GF2Vector:
        return cls(length, 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> GF2Vector:
        arr = np.asarray(list(bits), dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise InputError("GF(2) entries must be 0 or 1")
        return cls(int(arr.size), _pack_bits(arr))

    @classmethod
    def random(cls, length: int, rng=None) -> GF2Vector:
        rng = _as_rng(rng)
        return cls.from_bits(rng.integers(0, 2, size=length))

    def to_array(self) -> np.ndarray:
        return _unpack_bits(self.bits, self.length)

    def tolist(self) -> list[int]:
        return [int(b) for b in self.to_array()]

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __len__(self):
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (i % self.length)) & 1

    def __iter__(self):
        return iter(self.tolist())

    def __xor__(self, other: GF2Vector) -> GF2Vector:
        if not isinstance(other, GF2Vector):
            return NotImplemented
        if other.length != self.length:
            raise InputError(f"length mismatch: {self.length} vs {other.length}")
        return GF2Vector(self.length, self.bits ^ other.bits)

    def __repr__(self):
        return f"GF2Vector({''.join(map(str, self.tolist()))})"


@dataclass(frozen=True)
class GF2Matrix:
    """An ``m x n`` matrix over GF(2), stored as a tuple of packed columns."""

    m: int
    n: int
    cols: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise InputError(f"invalid shape {self.m}x{self.n}")
        if len(self.cols) != self.n:
            raise InputError(f"expected {self.n} columns, got {len(self.cols)}")
        limit = 1 << self.m
        for j, c in enumerate(self.cols):
            if c < 0 or c >= limit:
                raise InputError(f"column {j} has bits beyond row {self.m}")

    @classmethod
    def from_rows(cls, rows) -> GF2Matrix:
        """Build from an ``m x n`` array-like of 0/1 entries."""
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim != 2:
            raise InputError("expected a two-dimensional array")
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise InputError("GF(2) entries must be 0 or 1")
        m, n = arr.shape
        return cls(m, n, tuple(_pack_bits(arr[:, j]) for j in range(n)))

    @classmethod
    def from_columns(cls, m: int, columns: Sequence) -> GF2Matrix:
        cols = tuple(c.bits if isinstance(c, GF2Vector) else int(c) for c in columns)
        return cls(m, len(cols), cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.m, self.n), dtype=np.uint8)
        for j, c in enumerate(self.cols):
            out[:, j] = _unpack_bits(c, self.m)
        return out

    def column(self, j: int) -> GF2Vector:
        return GF2Vector(self.m, self.cols[j])

    def column_words(self) -> np.ndarray:
        """Columns as an ``(n, ceil(m/64))`` uint64 array, low word first."""
        words = max(1, (self.m + 63) // 64)
        out = np.zeros((self.n, words), dtype=np.uint64)
        mask = (1 << 64) - 1
        for j, c in enumerate(self.cols):
            for w in range(words):
                out[j, w] = (c >> (64 * w)) & mask
        return out

    def is_systematic(self) -> bool:
        return self.m <= self.n and all(self.cols[i] == 1 << i for i in range(self.m))

    def rank(self) -> int:
        return rank(self)

    def __matmul__(self, x):
        if isinstance(x, GF2Vector):
            return matvec(self, x)
        return NotImplemented

    def __repr__(self):
        return f"GF2Matrix({self.m}x{self.n})"


def _rank_of_ints(vectors: Iterable[int]) -> int:
    # XOR basis keyed by leading bit; each insertion is one elimination pass.
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def rank(M: GF2Matrix) -> int:
    """Dimension of the column space of ``M`` over GF(2)."""
    return _rank_of_ints(M.cols)


def submatrix_columns(M: GF2Matrix, indices: Iterable[int]) -> GF2Matrix:
    """Columns of ``M`` at the given 0-based ``indices``, in order."""
    idx = list(indices)
    for j in idx:
        if not 0 <= j < M.n:
            raise InputError(f"column index {j} out of range for {M.n} columns")
    return GF2Matrix(M.m, len(idx), tuple(M.cols[j] for j in idx))


def identity(m: int) -> GF2Matrix:
    return GF2Matrix(m, m, tuple(1 << i for i in range(m)))


def systematic(A2: GF2Matrix) -> GF2Matrix:
    """Return ``[I_m | A2]``."""
    return GF2Matrix(A2.m, A2.m + A2.n, identity(A2.m).cols + A2.cols)


def random_matrix(m: int, n: int, rng=None) -> GF2Matrix:
    """Uniformly random ``m x n`` matrix; every entry is a fair bit from ``rng``."""
    if m < 1 or n < 1:
        raise InputError(f"dimensions must be positive, got {m}x{n}")
    rng = _as_rng(rng)
    return GF2Matrix.from_rows(rng.integers(0, 2, size=(m, n), dtype=np.uint8))


def random_systematic(m: int, n: int, rng=None) -> GF2Matrix:
    """``[I_m | A2]`` with a uniformly random ``m x (n-m)`` block ``A2``."""
    if not 0 < m < n:
        raise InputError(f"need 0 < m < n, got m={m}, n={n}")
    return systematic(random_matrix(m, n - m, rng))


def matvec(M: GF2Matrix, x: GF2Vector) -> GF2Vector:
    """``M x`` over GF(2)."""
    if x.length != M.n:
        raise InputError(f"vector length {x.length} does not match {M.n} columns")
    acc = 0
    bits = x.bits
    j = 0
    while bits:
        if bits & 1:
            acc ^= M.cols[j]
        bits >>= 1
        j += 1
    return GF2Vector(M.m, acc)


def parse_matrix(text: str, source: str | None = None) -> GF2Matrix:
    """Parse the ``m n`` header plus ``m`` rows of ``n`` 0/1 characters."""
    lines = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines())]
    lines = [(k, ln) for k, ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix file", source)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'm n'", source, lineno)
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"non-integer dimensions {header!r}", source, lineno) from None
    if m < 1 or n < 1:
        raise ParseError(f"dimensions must be positive, got {m}x{n}", source, lineno)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}", source)
    rows = np.zeros((m, n), dtype=np.uint8)
    for i, (lineno, row) in enumerate(body):
        if len(row) != n:
            raise ParseError(f"expected {n} entries, found {len(row)}", source, lineno)
        for j, ch in enumerate(row):
            if ch not in "01":
                raise ParseError(f"invalid entry {ch!r}", source, lineno, j + 1)
            rows[i, j] = ch == "1"
    return GF2Matrix.from_rows(rows)


def format_matrix(M: GF2Matrix) -> str:
    arr = M.to_array()
    lines = [f"{M.m} {M.n}"]
    lines += ["".join("1" if b else "0" for b in row) for row in arr]
    return "\n".join(lines) + "\n"


def read_matrix(path) -> GF2Matrix:
    path = Path(path)
    return parse_matrix(path.read_text(), source=str(path))


def write_matrix(M: GF2Matrix, path) -> None:
    Path(path).write_text(format_matrix(M))
