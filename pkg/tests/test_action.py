from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import domain_and_value, nested_domains, tag_sizes
from indisym.action import transform, transform_dp
from indisym.literals import parse_value
from indisym.perm import DirectProductElem, Permutation, parse_cycles
from indisym.values import (BoolDom, MatrixDom, MatrixV, MSetV, TupleV, UnnamedDom,
                            check_value, enumerate_values)


def test_function_image_under_swap():
    x = parse_value("function{1_T-->4, 2_T-->5, 3_T-->4}")
    g = parse_cycles("(1_T, 2_T)", "T", 3)
    assert transform(g, x) == parse_value("function{2_T-->4, 1_T-->5, 3_T-->4}")


def test_matrix_entry_pulled_from_preimage():
    m = MatrixV(((parse_value("1_T"), parse_value("2_T"), parse_value("3_T")),), ("a", "b", "c"))
    assert transform(parse_cycles("(1 2 3)", "T", 3), m).entries == ("c", "a", "b")
    assert transform(Permutation.identity("T", 3), m) == m


def test_direct_product_example_and_order_independence():
    m = parse_value("[[1_U, 2_U, 3_U], [2_U, 3_U, 4_U]; index:T, int(1..3)]")
    g = parse_cycles("(1 2)", "T", 2)
    h = parse_cycles("(1 3)(2 4)", "U", 4)
    want = parse_value("[[4_U, 1_U, 2_U], [3_U, 4_U, 1_U]; index:T, int(1..3)]")
    assert transform_dp(DirectProductElem([g, h]), m) == want
    assert transform(h, transform(g, m)) == want
    assert transform(g, transform(h, m)) == want
    assert transform_dp(DirectProductElem(), m) == m


def test_other_types_fixed():
    v = parse_value("(1_U, 2_T, 3, true)")
    assert transform(parse_cycles("(1 2)", "U", 2), v) == parse_value("(2_U, 2_T, 3, true)")


def test_multiset_image_is_canonical():
    v = parse_value("mset{1_T, 1_T, 3_T}")
    img = transform(parse_cycles("(1 3)", "T", 3), v)
    assert img == parse_value("mset{3_T, 1_T, 3_T}")
    assert img.items == tuple(sorted(img.items, key=lambda a: a.index))


def _perm_for(d, data):
    sizes = tag_sizes(d)
    if not sizes:
        return None
    tag = data.draw(st.sampled_from(sorted(sizes)))
    return Permutation(tag, data.draw(st.permutations(range(1, sizes[tag] + 1))))


@settings(max_examples=200)
@given(domain_and_value(2000), st.data())
def test_domain_preserved(dv, data):
    d, v = dv
    p = _perm_for(d, data)
    if p is not None:
        assert check_value(d, transform(p, v))


@settings(max_examples=60)
@given(nested_domains(150), st.data())
def test_transform_is_a_bijection_on_each_domain(d, data):
    p = _perm_for(d, data)
    if p is None:
        return
    vals = list(enumerate_values(d))
    images = [transform(p, v) for v in vals]
    assert set(images) == set(vals)


@settings(max_examples=100)
@given(st.integers(1, 4), st.data())
def test_matrix_and_its_pair_set_transform_alike(n, data):
    # A matrix indexed by T of bool, read as the set of (index, entry) pairs.
    T = UnnamedDom("T", n)
    d = MatrixDom((T,), BoolDom())
    vals = list(enumerate_values(d))
    m = data.draw(st.sampled_from(vals))
    p = Permutation("T", data.draw(st.permutations(range(1, n + 1))))

    def as_pairs(x):
        return MSetV(tuple(TupleV((i, e)) for i, e in zip(x.index_lists[0], x.entries)),
                     kind="relation")

    assert as_pairs(transform(p, m)) == transform(p, as_pairs(m))
