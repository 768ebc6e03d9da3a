"""Binary-input discrete memoryless channels.

A channel is a pair of rows ``W(z|0)`` and ``W(z|1)`` over a finite alphabet
of opaque string symbols.  The erasure symbol is spelled ``e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError, ParseError, UnreachableSymbolError

__all__ = [
    "ERASURE",
    "BinaryInputChannel",
    "bsc",
    "bec",
    "general",
    "backward_posterior",
    "sample",
    "inverse_cdf_indices",
    "parse_channel_spec",
    "parse_dmc",
]

ERASURE = "e"
ROW_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class BinaryInputChannel:
    """``W(z|x)`` for ``x`` in {0, 1} and ``z`` in ``alphabet``.

    ``kind`` is ``"bsc"``, ``"bec"`` or ``"general"``; ``param`` holds the
    crossover or erasure probability for the first two.
    """

    alphabet: tuple[str, ...]
    w0: np.ndarray
    w1: np.ndarray
    kind: str = "general"
    param: float | None = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alphabet = tuple(str(a) for a in self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise InputError(f"duplicate symbols in alphabet {alphabet}")
        w0 = np.array(self.w0, dtype=float)
        w1 = np.array(self.w1, dtype=float)
        for name, row in (("W(z|0)", w0), ("W(z|1)", w1)):
            if row.shape != (len(alphabet),):
                raise InputError(f"{name} has {row.size} entries for {len(alphabet)} symbols")
            if not np.all(np.isfinite(row)) or np.any(row < 0) or np.any(row > 1):
                raise InputError(f"{name} entries must lie in [0, 1]")
            if abs(row.sum() - 1.0) > ROW_TOLERANCE:
                raise InputError(f"{name} sums to {row.sum()!r}, not 1")
        w0.setflags(write=False)
        w1.setflags(write=False)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "w0", w0)
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(alphabet)})

    def symbol_index(self, z) -> int:
        try:
            return self._index[str(z)]
        except KeyError:
            raise InputError(f"symbol {z!r} not in alphabet {self.alphabet}") from None

    def backward_table(self) -> tuple[np.ndarray, np.ndarray]:
        """``Phi(0|z)`` and ``Phi(1|z)`` for every symbol; NaN where unreachable."""
        total = self.w0 + self.w1
        with np.errstate(invalid="ignore", divide="ignore"):
            phi0 = np.where(total > 0, self.w0 / total, np.nan)
            phi1 = np.where(total > 0, self.w1 / total, np.nan)
        return phi0, phi1

    @property
    def spec(self) -> str:
        if self.kind in ("bsc", "bec"):
            return f"{self.kind}:{self.param!r}"
        return "dmc"

    def __repr__(self):
        if self.kind in ("bsc", "bec"):
            return f"{self.kind.upper()}({self.param})"
        return f"BinaryInputChannel({self.alphabet})"


def _check_probability(p, name) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise InputError(f"{name} must lie in [0, 1], got {p}")
    return p


def bsc(delta: float) -> BinaryInputChannel:
    delta = _check_probability(delta, "crossover probability")
    return BinaryInputChannel(("0", "1"), [1 - delta, delta], [delta, 1 - delta], "bsc", delta)


def bec(epsilon: float) -> BinaryInputChannel:
    eps = _check_probability(epsilon, "erasure probability")
    return BinaryInputChannel(
        ("0", "1", ERASURE), [1 - eps, 0.0, eps], [0.0, 1 - eps, eps], "bec", eps
    )


def general(alphabet, w0, w1) -> BinaryInputChannel:
    return BinaryInputChannel(tuple(alphabet), w0, w1)


def backward_posterior(ch: BinaryInputChannel, z) -> tuple[float, float]:
    """Posterior ``(Phi(0|z), Phi(1|z))`` of the input under a uniform prior."""
    k = ch.symbol_index(z)
    a, b = float(ch.w0[k]), float(ch.w1[k])
    if a + b == 0:
        raise UnreachableSymbolError(f"symbol {z!r} has zero probability under both inputs")
    phi0 = a / (a + b)
    return phi0, 1.0 - phi0


def sample(ch: BinaryInputChannel, x: int, rng) -> str:
    """Draw one output symbol for input bit ``x``."""
    return ch.alphabet[sample_indices(ch, np.array([x]), rng)[0]]


def sample_indices(ch: BinaryInputChannel, x, rng) -> np.ndarray:
    """Output symbol indices for an array of input bits, by inverse CDF."""
    x = np.asarray(x)
    return inverse_cdf_indices(ch, x, rng.random(x.shape))


def inverse_cdf_indices(ch: BinaryInputChannel, x, u) -> np.ndarray:
    """Symbol indices for input bits ``x`` given uniforms ``u`` of the same shape."""
    x = np.asarray(x, dtype=np.intp)
    if x.size and (x.min() < 0 or x.max() > 1):
        raise InputError("channel inputs must be 0 or 1")
    w = np.stack([ch.w0, ch.w1])
    rows = np.cumsum(w, axis=1)[x]
    # count of cdf entries <= u; clip guards the top end against rounding
    idx = (rows <= np.asarray(u)[..., None]).sum(axis=-1)
    idx = np.minimum(idx, len(ch.alphabet) - 1)
    # never land on a zero-probability symbol through rounding at the boundary
    bad = w[x, idx] == 0
    while np.any(bad):
        idx[bad] -= 1
        bad = w[x, idx] == 0
    return idx


def parse_dmc(text: str, source: str | None = None) -> BinaryInputChannel:
    """Parse the three-line DMC file: alphabet, ``W(z|0)`` row, ``W(z|1)`` row."""
    lines = [(k + 1, ln.split()) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if len(lines) != 3:
        raise ParseError(f"expected 3 non-empty lines, found {len(lines)}", source)
    (_, alphabet), *rows = lines
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("duplicate alphabet symbols", source, lines[0][0])
    parsed = []
    for (lineno, row), name in zip(rows, ("W(z|0)", "W(z|1)")):
        if len(row) != len(alphabet):
            raise ParseError(
                f"{name} row has {len(row)} entries for {len(alphabet)} symbols", source, lineno
            )
        vals = []
        for pos, tok in enumerate(row, start=1):
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(f"{name}: invalid number {tok!r}", source, lineno, pos) from None
            if not 0.0 <= v <= 1.0:
                raise ParseError(f"{name}: probability {tok} outside [0, 1]", source, lineno, pos)
            vals.append(v)
        total = math.fsum(vals)
        if abs(total - 1.0) > ROW_TOLERANCE:
            raise ParseError(f"{name} row sums to {total!r}, not 1", source, lineno)
        parsed.append(vals)
    return general(alphabet, parsed[0], parsed[1])


def parse_channel_spec(text: str) -> BinaryInputChannel:
    """Parse ``bsc:<delta>``, ``bec:<epsilon>`` or ``dmc:<path>``."""
    kind, sep, arg = text.strip().partition(":")
    kind = kind.lower()
    if not sep or not arg:
        raise ParseError(f"channel spec {text!r} must look like 'bsc:0.1', 'bec:0.5' or 'dmc:<path>'",
                         "channel")
    if kind in ("bsc", "bec"):
        field_name = "delta" if kind == "bsc" else "epsilon"
        try:
            p = float(arg)
        except ValueError:
            raise ParseError(f"{field_name} {arg!r} is not a number", "channel") from None
        if not 0.0 <= p <= 1.0:
            raise ParseError(f"{field_name} {p} outside [0, 1]", "channel")
        return bsc(p) if kind == "bsc" else bec(p)
    if kind == "dmc":
        path = Path(arg)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read DMC file: {exc.strerror}", str(path)) from None
        return parse_dmc(text, source=str(path))
    raise ParseError(f"unknown channel kind {kind!r}", "channel")
