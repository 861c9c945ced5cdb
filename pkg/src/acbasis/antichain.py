"""Antichains of the k-cube and their characteristic functions."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .cube import BitTuple, leq
from .errors import CapacityError, DimensionError, NotAntichainError

MAX_ENUM_ARITY = 5
_PAIRWISE_CUTOFF = 48


def _pairwise_comparable(a: Sequence[int], b: Sequence[int], mask: int) -> bool:
    for u in a:
        for v in b:
            if u & ~v & mask == 0:
                return True
    return False


def _cross(a: list[int], b: list[int], bit: int) -> bool:
    """Is some u in ``a`` below-or-equal some v in ``b`` on bits 0..bit?

    Callers guarantee that on the higher bits every element of ``a`` is below the
    elements of ``b``, so equality on the low bits still means a strict pair.
    """
    if not a or not b:
        return False
    if bit < 0:
        return True
    mask = (1 << (bit + 1)) - 1
    if min((u & mask).bit_count() for u in a) > max((v & mask).bit_count() for v in b):
        return False
    if len(a) * len(b) <= _PAIRWISE_CUTOFF:
        return _pairwise_comparable(a, b, mask)
    a0 = [u for u in a if not (u >> bit) & 1]
    a1 = [u for u in a if (u >> bit) & 1]
    b0 = [v for v in b if not (v >> bit) & 1]
    b1 = [v for v in b if (v >> bit) & 1]
    return _cross(a0, b0, bit - 1) or _cross(a0, b1, bit - 1) or _cross(a1, b1, bit - 1)


def _within(codes: list[int], bit: int) -> bool:
    """Does ``codes`` (distinct, equal above ``bit``) contain a comparable pair?"""
    if len(codes) < 2 or bit < 0:
        return False
    mask = (1 << (bit + 1)) - 1
    weights = {(c & mask).bit_count() for c in codes}
    if len(weights) == 1:
        return False
    lo = [c for c in codes if not (c >> bit) & 1]
    hi = [c for c in codes if (c >> bit) & 1]
    return _within(lo, bit - 1) or _within(hi, bit - 1) or _cross(lo, hi, bit - 1)


def codes_form_antichain(codes: Iterable[int], width: int) -> bool:
    """Antichain test on integer-coded tuples of a common width.

    Divide-and-conquer on coordinates with weight pruning; runs in roughly
    linear time on layered supports with hundreds of thousands of tuples.
    """
    codes = list(set(codes))
    return not _within(codes, width - 1)


def is_antichain(tuples: Iterable[Sequence[int]]) -> bool:
    tuples = [tuple(t) for t in tuples]
    if not tuples:
        return True
    width = len(tuples[0])
    for t in tuples:
        if len(t) != width:
            raise DimensionError(f"width mismatch: {width} vs {len(t)}")
    return codes_form_antichain((BitTuple(t).code for t in tuples), width)


class AntichainFunction:
    """Characteristic function of an antichain over the ``arity``-cube.

    The support is held as a sorted tuple of codes (see :mod:`acbasis.cube`);
    :attr:`support` materialises it as :class:`BitTuple` objects.  Arity 0 is
    allowed: the 0-cube has the single vertex ``()``, so both constants are
    antichain functions there.
    """

    __slots__ = ("arity", "codes", "_members", "_support")

    def __init__(self, arity: int, codes: Iterable[int], *, check: bool = True):
        if arity < 0:
            raise ValueError(f"arity must be nonnegative, got {arity}")
        codes = tuple(sorted(set(codes)))
        if codes and (codes[0] < 0 or codes[-1] >> arity):
            raise DimensionError(f"support code outside the {arity}-cube")
        if check and not codes_form_antichain(codes, arity):
            raise NotAntichainError("support contains a comparable pair")
        self.arity = arity
        self.codes = codes
        self._members = frozenset(codes)
        self._support = None

    @classmethod
    def from_support(cls, arity: int, tuples: Iterable[Sequence[int]], *, check: bool = True):
        codes = []
        for t in tuples:
            if len(t) != arity:
                raise DimensionError(f"support tuple of width {len(t)} for arity {arity}")
            codes.append(BitTuple(t).code)
        return cls(arity, codes, check=check)

    @classmethod
    def from_strings(cls, arity: int, lines: Iterable[str], *, check: bool = True):
        return cls.from_support(arity, (BitTuple.from_string(s) for s in lines), check=check)

    @property
    def support(self) -> tuple[BitTuple, ...]:
        if self._support is None:
            self._support = tuple(BitTuple.from_code(c, self.arity) for c in self.codes)
        return self._support

    def __len__(self) -> int:
        return len(self.codes)

    def contains_code(self, code: int) -> bool:
        return code in self._members

    def __call__(self, a: Sequence[int]) -> int:
        if len(a) != self.arity:
            raise DimensionError(f"expected {self.arity} arguments, got {len(a)}")
        return int(BitTuple(a).code in self._members)

    def is_antichain(self) -> bool:
        return codes_form_antichain(self.codes, self.arity)

    def lines(self) -> list[str]:
        """Serialized support: one bitstring per tuple, lexicographic order."""
        return [str(t) for t in self.support]

    def __eq__(self, other):
        if not isinstance(other, AntichainFunction):
            return NotImplemented
        return self.arity == other.arity and self.codes == other.codes

    def __hash__(self):
        return hash((self.arity, self.codes))

    def __repr__(self):
        shown = ",".join(self.lines()[:4])
        more = ",..." if len(self.codes) > 4 else ""
        return f"AntichainFunction(arity={self.arity}, support={{{shown}{more}}})"


def evaluate(f: AntichainFunction, a: Sequence[int]) -> int:
    return f(a)


def layer_codes(n: int, t: int) -> list[int]:
    return [sum(1 << (n - 1 - j) for j in ones) for ones in combinations(range(n), t)]


def layer_function(n: int, t: int) -> AntichainFunction:
    """h_t: indicator of the n-tuples of weight t."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0 <= t <= n:
        raise ValueError(f"layer {t} outside 0..{n}")
    # a single layer is an antichain by construction
    return AntichainFunction(n, layer_codes(n, t), check=False)


def dependent_coordinates(f: AntichainFunction) -> frozenset[int]:
    """Essential variables (1-based) of ``f``.

    Coordinate i is essential iff some support tuple leaves the support when
    coordinate i is flipped; every differing pair has one end in the support.
    """
    out = set()
    for i in range(1, f.arity + 1):
        bit = 1 << (f.arity - i)
        if any(not f.contains_code(c ^ bit) for c in f.codes):
            out.add(i)
    return frozenset(out)


def _check_enum_arity(k: int) -> None:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > MAX_ENUM_ARITY:
        raise CapacityError(f"antichain enumeration is limited to k <= {MAX_ENUM_ARITY}")


@lru_cache(maxsize=None)
def antichain_codes(k: int) -> tuple[tuple[int, ...], ...]:
    """All antichains of the k-cube as sorted code tuples, by recursive growth.

    Points are visited in (weight, code) order; a point may join only if it is
    incomparable with everything chosen so far.
    """
    _check_enum_arity(k)
    points = sorted(range(1 << k), key=lambda p: (p.bit_count(), p))
    pos = {p: i for i, p in enumerate(points)}
    blocks = []
    for p in points:
        m = 0
        for q in points:
            if q & ~p == 0 or p & ~q == 0:
                m |= 1 << pos[q]
        blocks.append(m)

    found: list[tuple[int, ...]] = []

    def grow(start: int, blocked: int, chosen: tuple[int, ...]):
        found.append(tuple(sorted(chosen)))
        for j in range(start, len(points)):
            if not (blocked >> j) & 1:
                grow(j + 1, blocked | blocks[j], chosen + (points[j],))

    grow(0, 0, ())
    return tuple(found)


def enumerate_antichains(k: int) -> Iterator[frozenset[BitTuple]]:
    """Yield every antichain of the k-cube exactly once, the empty one first."""
    for codes in antichain_codes(k):
        yield frozenset(BitTuple.from_code(c, k) for c in codes)


def count_antichains_by_filtering(k: int) -> int:
    """Count antichains by testing every subset of the k-cube (k <= 4).

    Independent of :func:`antichain_codes`; used to cross-check it.
    """
    _check_enum_arity(k)
    if k > 4:
        raise CapacityError("subset filtering is limited to k <= 4")
    points = [BitTuple.from_code(c, k) for c in range(1 << k)]
    bad_pairs = [(1 << i) | (1 << j)
                 for i in range(len(points)) for j in range(i + 1, len(points))
                 if leq(points[i], points[j]) or leq(points[j], points[i])]
    count = 0
    for subset in range(1 << len(points)):
        if all(subset & pair != pair for pair in bad_pairs):
            count += 1
    return count


@lru_cache(maxsize=None)
def membership_matrix(k: int) -> np.ndarray:
    """Boolean matrix: row r marks the points of antichain r of :func:`antichain_codes`."""
    acs = antichain_codes(k)
    mat = np.zeros((len(acs), 1 << k), dtype=bool)
    for r, codes in enumerate(acs):
        mat[r, list(codes)] = True
    mat.setflags(write=False)
    return mat
