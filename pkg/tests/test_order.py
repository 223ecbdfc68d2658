from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import nested_domains, values_of
from indisym.literals import parse_value
from indisym.order import (EQ, GT, LT, IncomparableError, cmp, lex_cmp, leq, occurrence_vector,
                           sort_key)
from indisym.values import MSetDom, MSetV, enumerate_values


def v(text):
    return parse_value(text)


@pytest.mark.parametrize("a,b,want", [
    ("mset{1}", "mset{}", LT),
    ("mset{}", "mset{1}", GT),
    ("mset{1, 1, 2}", "mset{1, 2, 2}", LT),
    ("(1, 2)", "(1, 3)", LT),
    ("[false, true]", "[true, false]", LT),
    ("2_T", "1_T", GT),
    ("set{1_T, 3_T}", "set{1_T, 3_T}", EQ),
    ("function{1_T-->4}", "function{1_T-->5}", LT),
])
def test_cmp_examples(a, b, want):
    assert cmp(v(a), v(b)) == want
    assert leq(v(a), v(b)) == (want != GT)


@pytest.mark.parametrize("a,b", [("1_T", "1_U"), ("true", "1"), ("(1, 2)", "(1, 2, 3)"),
                                 ("[1, 2]", "[1, 2; index:T]"), ("mset{}", "1")])
def test_incomparable(a, b):
    with pytest.raises(IncomparableError):
        cmp(v(a), v(b))


def test_occurrence_vector_examples():
    assert occurrence_vector(v("mset{1, 1, 3}"), [1, 2, 3]).entries == (-2, 0, -1)
    assert occurrence_vector(v("mset{}"), [1, 2]).entries == (0, 0)
    assert occurrence_vector(v("mset{2_T}"), [v("1_T"), v("2_T")]).entries == (0, -1)
    with pytest.raises(ValueError):
        occurrence_vector(v("mset{4}"), [1, 2])
    with pytest.raises(ValueError):
        occurrence_vector(v("mset{}"), [2, 1])


def test_lex_cmp_examples():
    assert lex_cmp([1, 2, 3], [1, 2, 3]) == EQ
    assert lex_cmp([1, 2], [1, 3]) == LT
    assert lex_cmp([2, 0], [1, 9]) == GT
    with pytest.raises(ValueError):
        lex_cmp([1], [1, 2])


def reference_mset_cmp(xs: list, ys: list) -> int:
    """The min-removal rule: the empty multiset is the largest; otherwise compare
    minima, and on a tie remove one copy from each side and recurse."""
    if not xs and not ys:
        return EQ
    if not ys:
        return LT
    if not xs:
        return GT
    mx = min(xs, key=sort_key)
    my = min(ys, key=sort_key)
    c = cmp(mx, my)
    if c != EQ:
        return c
    xs, ys = list(xs), list(ys)
    xs.remove(mx)
    ys.remove(my)
    return reference_mset_cmp(xs, ys)


@st.composite
def mset_pairs(draw):
    d = draw(nested_domains(60))
    md = MSetDom(d, 2)
    return draw(values_of(md)), draw(values_of(md))


@settings(max_examples=300)
@given(mset_pairs())
def test_mset_order_matches_min_removal_rule(pair):
    a, b = pair
    assert cmp(a, b) == reference_mset_cmp(list(a.items), list(b.items))


@st.composite
def value_pairs(draw):
    d = draw(nested_domains(2000))
    return draw(values_of(d)), draw(values_of(d))


@settings(max_examples=300)
@given(value_pairs())
def test_sort_key_agrees_with_cmp(pair):
    a, b = pair
    ka, kb = sort_key(a), sort_key(b)
    want = (ka > kb) - (ka < kb)
    assert cmp(a, b) == want
    assert cmp(b, a) == -want


@settings(max_examples=100)
@given(nested_domains(300))
def test_enumeration_strictly_increasing(d):
    vals = list(enumerate_values(d))
    assert all(cmp(x, y) == LT for x, y in zip(vals, vals[1:]))


def test_mset_items_stay_sorted():
    m = MSetV((3, 1, 2, 1))
    assert m.items == (1, 1, 2, 3)
