from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import naive
from finitary import hfcore as h
from finitary.errors import CapExceededError
from finitary.hfcore import EQ, GT, INF, LT

E = h.empty()
ONE = h.singleton(E)
TWO = h.make([E, ONE])

nested = st.recursive(st.just(frozenset()), lambda c: st.frozensets(c, max_size=3), max_leaves=10)
hf_sets = nested.map(h.from_nested)


def test_empty_is_shared():
    assert h.members(E) == []
    assert h.empty() is E
    assert h.empty().handle == E.handle
    assert h.depth(E) == 0


def test_make_dedups_and_ignores_order():
    assert h.make([E, E]) is ONE
    assert h.make([E, ONE]) is h.make([ONE, E])
    assert h.to_text(h.make([h.make([E])])) == "{{{}}}"


def test_membership_and_depth():
    assert h.is_member(E, ONE)
    assert not h.is_member(ONE, ONE)
    assert E in ONE
    assert h.depth(TWO) == 2


def test_compare_examples():
    assert h.compare(E, ONE) == LT
    assert h.compare(ONE, h.singleton(ONE)) == LT
    assert h.compare(TWO, TWO) == EQ
    assert h.compare(ONE, E) == GT


def test_trunc_examples():
    assert h.trunc(1, h.singleton(ONE)) is ONE
    assert h.trunc(2, h.make([E, ONE, h.singleton(ONE)])) is TWO
    assert h.trunc(0, TWO) is E


def test_level_examples():
    assert h.level(E, ONE) == 1
    assert h.level(ONE, TWO) == 2
    assert h.level(h.singleton(ONE), ONE) == 2
    assert h.level(TWO, TWO) == INF


def test_distance_values_are_exact():
    assert h.distance(1) == Fraction(1, 2)
    assert h.distance(2) == Fraction(1, 4)
    assert h.distance(INF) == 0
    assert h.distance_text(1) == "1/2"
    assert h.distance_text(3) == "1/8"
    assert h.distance_text(INF) == "0"


def test_hausdorff_examples():
    assert h.dist_hausdorff(E, ONE) == 1
    assert h.dist_hausdorff(ONE, TWO) == 2
    assert h.dist_hausdorff(TWO, TWO) == INF


def test_set_algebra_examples():
    assert h.bigunion(h.make([ONE, h.singleton(ONE)])) is TWO
    p = h.powerset(TWO)
    assert len(p.members) == 4
    assert set(p.members) == {E, ONE, h.singleton(ONE), TWO}
    assert h.union(TWO, E) is TWO
    assert h.pair(E, ONE) is TWO


def test_von_neumann_numerals():
    assert h.von_neumann(0) is E
    assert h.von_neumann(2) is TWO
    assert len(h.von_neumann(5).members) == 5


def test_powerset_cap():
    big = h.make(h.von_neumann(i) for i in range(h.POWERSET_CAP + 1))
    with pytest.raises(CapExceededError):
        h.powerset(big)


@given(hf_sets)
def test_extensionality(s):
    assert h.make(h.members(s)) is s
    assert h.make(reversed(s.members)) is s


@given(nested, nested)
def test_equality_is_identity(a, b):
    assert (h.from_nested(a) is h.from_nested(b)) == (a == b)


@given(hf_sets, hf_sets)
def test_compare_matches_ackermann_order(s, t):
    a, b = naive.ackermann(naive.fs(s)), naive.ackermann(naive.fs(t))
    expected = LT if a < b else GT if a > b else EQ
    assert h.compare(s, t) == expected


@given(hf_sets, hf_sets, hf_sets)
def test_compare_is_a_total_order(s, t, u):
    assert h.compare(s, t) == -h.compare(t, s)
    assert (h.compare(s, t) == EQ) == (s is t)
    if h.compare(s, t) <= 0 and h.compare(t, u) <= 0:
        assert h.compare(s, u) <= 0


@given(hf_sets)
def test_members_are_sorted(s):
    ms = s.members
    assert all(h.compare(a, b) == LT for a, b in zip(ms, ms[1:]))


@given(hf_sets, hf_sets)
def test_level_matches_oracle(s, t):
    expected = naive.level(naive.fs(s), naive.fs(t))
    assert h.level(s, t) == (INF if expected is None else expected)


@given(hf_sets, hf_sets)
def test_level_equals_hausdorff(s, t):
    assert h.level(s, t) == h.dist_hausdorff(s, t)


@given(hf_sets, hf_sets, hf_sets)
def test_ultrametric(s, t, u):
    assert h.level(s, t) >= min(h.level(s, u), h.level(u, t))


@given(hf_sets, hf_sets, st.integers(0, 6))
def test_strat_eq_iff_equal_truncations(s, t, k):
    assert h.strat_eq(k, s, t) == (h.trunc(k, s) is h.trunc(k, t))


@given(hf_sets, st.integers(0, 6), st.integers(0, 6))
def test_truncation_composes(s, j, k):
    assert h.trunc(j, h.trunc(k, s)) is h.trunc(min(j, k), s)
    assert h.depth(h.trunc(k, s)) <= k
    assert naive.fs(h.trunc(k, s)) == naive.trunc(k, naive.fs(s))


@settings(max_examples=50)
@given(hf_sets, hf_sets)
def test_union_and_bigunion_match_frozensets(s, t):
    a, b = naive.fs(s), naive.fs(t)
    assert naive.fs(h.union(s, t)) == a | b
    assert naive.fs(h.bigunion(s)) == frozenset().union(*a)
    assert naive.fs(h.powerset(s)) == frozenset(naive.subsets(a))


@given(hf_sets)
def test_text_is_stable(s):
    assert h.to_text(s) == h.to_text(h.from_nested(naive.fs(s)))
