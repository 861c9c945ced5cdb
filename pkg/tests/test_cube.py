from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from acbasis.cube import (BitTuple, Subcube, comparable, extremes, is_chain, leq, majority_table,
                          parity_table, table_from_string, table_to_string, weight)
from acbasis.errors import DimensionError


def bt(s):
    return BitTuple.from_string(s)


def bit_tuples(width):
    return st.lists(st.integers(0, 1), min_size=width, max_size=width).map(BitTuple)


@pytest.mark.parametrize("a,b,expected", [("00", "00", True), ("01", "11", True), ("01", "10", False)])
def test_leq_examples(a, b, expected):
    assert leq(bt(a), bt(b)) is expected


def test_comparable_examples():
    assert comparable(bt("111"), bt("000"))
    assert not comparable(bt("01"), bt("10"))
    assert comparable(bt("0110"), bt("0110"))


def test_width_mismatch():
    with pytest.raises(DimensionError):
        leq(bt("01"), bt("011"))
    with pytest.raises(DimensionError):
        is_chain([bt("01"), bt("011")])


@pytest.mark.parametrize("s,w", [("000", 0), ("1111", 4), ("101", 2)])
def test_weight(s, w):
    assert weight(bt(s)) == w == bt(s).weight


def test_extremes():
    assert extremes(Subcube(3)) == (bt("111"), bt("000"))
    assert extremes(Subcube(3, {1}, {3})) == (bt("011"), bt("001"))
    assert extremes(Subcube(2, {1}, {2})) == (bt("01"), bt("01"))


def test_subcube_rejects_overlap():
    with pytest.raises(ValueError):
        Subcube(3, {1}, {1, 2})
    with pytest.raises(DimensionError):
        Subcube(3, {4}, set())


def test_is_chain_examples():
    assert is_chain([bt("00"), bt("01"), bt("11")])
    assert not is_chain([bt("01"), bt("10")])
    assert is_chain([]) and is_chain([bt("10")])


def test_text_round_trip():
    t = bt("0100110")
    assert str(t) == "0100110"
    assert BitTuple.from_code(t.code, 7) == t
    assert t.code == int("0100110", 2)
    assert BitTuple.from_set({2, 5, 6}, 7) == t


@pytest.mark.parametrize("n", [1, 2, 3])
def test_leq_is_partial_order_exhaustive(n):
    pts = [BitTuple(p) for p in product((0, 1), repeat=n)]
    for a in pts:
        assert leq(a, a)
        for b in pts:
            if leq(a, b) and leq(b, a):
                assert a == b
            for c in pts:
                if leq(a, b) and leq(b, c):
                    assert leq(a, c)


@given(st.integers(1, 10).flatmap(lambda w: st.tuples(st.just(w), st.sets(st.integers(1, w)),
                                                       st.sets(st.integers(1, w)))))
def test_subcube_bottom_below_top(args):
    w, F, T = args
    T = T - F
    s = Subcube(w, F, T)
    top, bottom = extremes(s)
    assert leq(bottom, top)
    assert top in s and bottom in s
    assert top.weight - bottom.weight == s.dimension


@given(st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_maximal_chain_has_one_tuple_per_weight(perm):
    n = len(perm)
    chain = [BitTuple.from_set(perm[:k], n) for k in range(n + 1)]
    assert is_chain(chain)
    assert sorted(t.weight for t in chain) == list(range(n + 1))


def test_targets_match_definitions():
    for n in range(1, 9):
        for code in range(1 << n):
            w = bin(code).count("1")
            assert parity_table(n)[code] == w % 2
            assert majority_table(n)[code] == (w >= -(-n // 2))


def test_table_strings():
    t = table_from_string("0110")
    assert table_to_string(t) == "0110"
    assert np.array_equal(t, parity_table(2))
    with pytest.raises(DimensionError):
        table_from_string("011")
