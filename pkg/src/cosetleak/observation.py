"""Eavesdropper observations: sequences of output symbols."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .channel import ERASURE
from .errors import ParseError

__all__ = ["Observation", "parse_observation", "read_observation"]


@dataclass(frozen=True)
class Observation:
    """A received sequence ``z^n``.  Symbols are kept as strings."""

    symbols: tuple[str, ...]

    def __init__(self, symbols):
        if isinstance(symbols, str):
            symbols = symbols.split()
        object.__setattr__(self, "symbols", tuple(str(s) for s in symbols))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def erased(self) -> tuple[int, ...]:
        """0-based positions holding the erasure symbol."""
        return tuple(i for i, z in enumerate(self.symbols) if z == ERASURE)

    @property
    def ones(self) -> tuple[int, ...]:
        return tuple(i for i, z in enumerate(self.symbols) if z == "1")

    def __str__(self):
        return " ".join(self.symbols)


def parse_observation(text: str, source: str | None = None, alphabet=None) -> Observation:
    """Whitespace-separated symbols; ``alphabet`` restricts the accepted set."""
    symbols = text.split()
    if not symbols:
        raise ParseError("empty observation", source)
    if alphabet is not None:
        allowed = set(alphabet)
        for pos, z in enumerate(symbols, start=1):
            if z not in allowed:
                raise ParseError(f"symbol {z!r} not in alphabet {tuple(alphabet)}", source,
                                 position=pos)
    return Observation(symbols)


def read_observation(path, alphabet=None) -> Observation:
    path = Path(path)
    return parse_observation(path.read_text(), source=str(path), alphabet=alphabet)
