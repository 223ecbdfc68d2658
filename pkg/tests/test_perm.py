from __future__ import annotations

import math
import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indisym.perm import (DirectProductElem, GeneratorFlag, Mode, Permutation, PermutationError,
                          compose, dp_elements, generator_set, inverse, moved_points,
                          parse_cycles, print_cycles)


def perms(tag="T", max_size=6):
    return st.integers(1, max_size).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda f: Permutation(tag, f)))


def same_size_triples(tag="T"):
    return st.integers(1, 6).flatmap(lambda n: st.tuples(
        *[st.permutations(range(1, n + 1)).map(lambda f: Permutation(tag, f))] * 3))


def test_parse_cycles_examples():
    assert parse_cycles("(1 2 3)", "T", 3).forward == (2, 3, 1)
    assert parse_cycles("()", "T", 4).is_identity()
    assert parse_cycles(" ( 1_T , 2_T ) ( 3 4 )", "T", 4).forward == (2, 1, 4, 3)


@pytest.mark.parametrize("text", ["(1 2)(3 1)", "(1 5)", "(0 1)", "1 2", "(1 2", "(1_U 2)", ""])
def test_parse_cycles_errors(text):
    with pytest.raises(PermutationError):
        parse_cycles(text, "T", 4)


def test_compose_examples():
    p, q = parse_cycles("(1 2 3)", "T", 3), parse_cycles("(1 2)", "T", 3)
    assert compose(p, q) == parse_cycles("(2 3)", "T", 3)
    assert compose(p, Permutation.identity("T", 3)) == p
    assert compose(p, inverse(p)).is_identity()
    with pytest.raises(PermutationError):
        compose(p, parse_cycles("(1 2)", "U", 3))


def test_inverse_examples():
    p = parse_cycles("(1 2 3)", "T", 3)
    assert inverse(p) == parse_cycles("(1 3 2)", "T", 3)
    assert inverse(inverse(p)) is p
    assert inverse(Permutation.identity("T", 2)).is_identity()
    swap = parse_cycles("(1 2)", "T", 2)
    assert inverse(swap) == swap


def test_moved_points_examples():
    assert moved_points(parse_cycles("(1 2 3)", "T", 5)) == 3
    assert moved_points(Permutation.identity("T", 4)) == 0
    assert moved_points(parse_cycles("(1 2)(3 4)", "T", 4)) == 4


def test_generator_sets():
    cons = generator_set(GeneratorFlag.CONSECUTIVE, "T", 3)
    assert [print_cycles(p) for p in cons] == ["(1 2)", "(2 3)"]
    pairs = generator_set(GeneratorFlag.ALL_PAIRS, "T", 3)
    assert [print_cycles(p) for p in pairs] == ["(1 2)", "(1 3)", "(2 3)"]
    allp = generator_set(GeneratorFlag.ALL_PERMUTATIONS, "T", 3)
    assert len(allp) == 5
    assert [p.forward for p in allp] == sorted(p.forward for p in allp)
    assert generator_set(GeneratorFlag.CONSECUTIVE, "T", 1) == []


def test_dp_element_counts():
    gens = {"T": generator_set(GeneratorFlag.CONSECUTIVE, "T", 3),
            "U": generator_set(GeneratorFlag.CONSECUTIVE, "U", 2)}
    assert len(list(dp_elements(Mode.INDEPENDENTLY, gens))) == 3
    alt = list(dp_elements(Mode.ALTOGETHER, gens))
    assert len(alt) == 5
    assert all(not e.is_identity() for e in alt)
    assert list(dp_elements(Mode.NONE, gens)) == []
    single = {"T": gens["T"]}
    assert list(dp_elements(Mode.INDEPENDENTLY, single)) == list(dp_elements(Mode.ALTOGETHER, single))


@pytest.mark.parametrize("sizes", [(2,), (3,), (2, 2), (3, 2), (2, 2, 2), (3, 3)])
def test_altogether_all_permutations_size(sizes):
    tags = [f"T{i}" for i in range(len(sizes))]
    gens = {t: generator_set(GeneratorFlag.ALL_PERMUTATIONS, t, n) for t, n in zip(tags, sizes)}
    elems = list(dp_elements(Mode.ALTOGETHER, gens))
    assert len(elems) == math.prod(math.factorial(n) for n in sizes) - 1
    assert len(set(elems)) == len(elems)


def test_direct_product_element():
    p = parse_cycles("(1 2)", "T", 2)
    e = DirectProductElem([p, Permutation.identity("U", 3)])
    assert e.tags == ("T",)
    assert e.get("U") is None
    assert str(e) == "T:(1 2)"
    assert e.inverse() == e
    assert DirectProductElem().is_identity()
    with pytest.raises(PermutationError):
        DirectProductElem([p, p])
    assert pickle.loads(pickle.dumps(e)) == e


@given(perms())
def test_print_parse_round_trip(p):
    assert parse_cycles(print_cycles(p), p.tag, p.size) == p
    assert parse_cycles(print_cycles(p, tagged=True), p.tag, p.size) == p
    assert Permutation.from_cycles(p.tag, p.size, p.cycles()) == p


@given(same_size_triples())
def test_group_laws(triple):
    p, q, r = triple
    ident = Permutation.identity(p.tag, p.size)
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(ident, p) == p == compose(p, ident)
    assert compose(p, inverse(p)) == ident
    assert all(p.inverse(p(i)) == i for i in range(1, p.size + 1))
    assert all(p.preimage(p(i)) == i for i in range(1, p.size + 1))


@given(perms())
def test_pickle_keeps_inverse_link(p):
    q = pickle.loads(pickle.dumps(p))
    assert q == p and q.inverse.inverse is q
