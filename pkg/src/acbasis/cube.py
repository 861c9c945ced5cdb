"""Vertices of the boolean cube under the coordinate-wise order.

Coordinates are 1-based in every public API (``x_1`` is the leftmost bit of the
text form).  Internally a tuple of width ``w`` is also addressed by its *code*,
the integer obtained by reading the bitstring as binary, so ``x_1`` is the most
significant bit and lexicographic order on bitstrings equals numeric order on
codes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DimensionError

MAX_WIDTH = 24  # cap on circuit input count / cube dimension


class BitTuple(tuple):
    """Immutable 0/1 vector. Behaves as a plain ``tuple`` of ints."""

    __slots__ = ()

    def __new__(cls, bits: Iterable[int] = ()):
        bits = tuple(int(b) for b in bits)
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b}")
        return super().__new__(cls, bits)

    @classmethod
    def from_string(cls, text: str) -> "BitTuple":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bitstring: {text!r}")
        return super().__new__(cls, tuple(1 if ch == "1" else 0 for ch in text))

    @classmethod
    def from_code(cls, code: int, width: int) -> "BitTuple":
        if code < 0 or code >> width:
            raise ValueError(f"code {code} does not fit in {width} bits")
        return super().__new__(cls, tuple((code >> (width - 1 - j)) & 1 for j in range(width)))

    @classmethod
    def from_set(cls, ones: Iterable[int], width: int) -> "BitTuple":
        """The tuple x^P: coordinate k is 1 iff k is in ``ones`` (1-based)."""
        ones = set(ones)
        if any(k < 1 or k > width for k in ones):
            raise DimensionError(f"index set {sorted(ones)} outside 1..{width}")
        return super().__new__(cls, tuple(1 if k in ones else 0 for k in range(1, width + 1)))

    @property
    def width(self) -> int:
        return len(self)

    @property
    def code(self) -> int:
        c = 0
        for b in self:
            c = (c << 1) | b
        return c

    @property
    def weight(self) -> int:
        return sum(self)

    def ones(self) -> frozenset[int]:
        return frozenset(k for k, b in enumerate(self, start=1) if b)

    def flip(self, k: int) -> "BitTuple":
        bits = list(self)
        bits[k - 1] ^= 1
        return BitTuple(bits)

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self)

    def __repr__(self) -> str:
        return f"BitTuple('{self}')"


def _check_widths(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionError(f"width mismatch: {len(a)} vs {len(b)}")


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    _check_widths(a, b)
    return all(x <= y for x, y in zip(a, b))


def comparable(a: Sequence[int], b: Sequence[int]) -> bool:
    return leq(a, b) or leq(b, a)


def weight(a: Sequence[int]) -> int:
    return sum(a)


def is_chain(tuples: Sequence[Sequence[int]]) -> bool:
    tuples = list(tuples)
    if tuples:
        w = len(tuples[0])
        for t in tuples:
            if len(t) != w:
                raise DimensionError(f"width mismatch: {w} vs {len(t)}")
    return all(comparable(tuples[i], tuples[j])
               for i in range(len(tuples)) for j in range(i + 1, len(tuples)))


@dataclass(frozen=True)
class Subcube:
    """Subcube of the ``width``-cube with coordinates in ``F`` fixed to 0 and ``T`` fixed to 1."""

    width: int
    F: frozenset[int] = frozenset()
    T: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "F", frozenset(self.F))
        object.__setattr__(self, "T", frozenset(self.T))
        if self.width < 1:
            raise ValueError("width must be positive")
        if self.F & self.T:
            raise ValueError(f"coordinates fixed both ways: {sorted(self.F & self.T)}")
        if any(k < 1 or k > self.width for k in self.F | self.T):
            raise DimensionError(f"fixed coordinates outside 1..{self.width}")

    @property
    def free(self) -> frozenset[int]:
        return frozenset(range(1, self.width + 1)) - self.F - self.T

    @property
    def dimension(self) -> int:
        return self.width - len(self.F) - len(self.T)

    @property
    def top(self) -> BitTuple:
        return BitTuple.from_set(set(range(1, self.width + 1)) - self.F, self.width)

    @property
    def bottom(self) -> BitTuple:
        return BitTuple.from_set(self.T, self.width)

    def __contains__(self, a) -> bool:
        if len(a) != self.width:
            return False
        return all(a[k - 1] == 0 for k in self.F) and all(a[k - 1] == 1 for k in self.T)


def extremes(s: Subcube) -> tuple[BitTuple, BitTuple]:
    """(top, bottom) of a subcube."""
    return s.top, s.bottom


def check_width(n: int, limit: int = MAX_WIDTH) -> None:
    if n < 1:
        raise ValueError(f"number of inputs must be positive, got {n}")
    if n > limit:
        raise CapacityError(f"{n} inputs exceeds the limit of {limit}")


def all_tuples(n: int) -> list[BitTuple]:
    """Every n-tuple in lexicographic order (the truth-table row order)."""
    return [BitTuple.from_code(c, n) for c in range(1 << n)]


def row_weights(n: int) -> np.ndarray:
    """Hamming weight of each truth-table row."""
    idx = np.arange(1 << n, dtype=np.int64)
    w = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        w += (idx >> j) & 1
    return w


def parity_table(n: int) -> np.ndarray:
    return (row_weights(n) % 2).astype(np.uint8)


def majority_table(n: int) -> np.ndarray:
    return (row_weights(n) >= (n + 1) // 2).astype(np.uint8)


def layers_table(n: int, layers: Iterable[int]) -> np.ndarray:
    """Indicator of the union of the given weight layers."""
    return np.isin(row_weights(n), list(layers)).astype(np.uint8)


def target_table(name: str, n: int) -> np.ndarray:
    if name == "parity":
        return parity_table(n)
    if name == "majority":
        return majority_table(n)
    raise ValueError(f"unknown target function {name!r}")


def table_to_string(table) -> str:
    return "".join("1" if b else "0" for b in table)


def table_from_string(text: str) -> np.ndarray:
    text = text.strip()
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a bitstring: {text!r}")
    n = len(text).bit_length() - 1
    if 1 << n != len(text):
        raise DimensionError(f"truth table length {len(text)} is not a power of two")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")
