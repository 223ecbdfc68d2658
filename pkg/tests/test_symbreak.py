from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings

from _support import nested_domains, tag_sizes
from indisym.action import transform_dp
from indisym.engine import iter_assignments
from indisym.flat import BudgetExceeded, flatten
from indisym.literals import parse_value
from indisym.modellang import Model, parse_model
from indisym.order import GT, cmp
from indisym.perm import DirectProductElem, GeneratorFlag, Mode, parse_cycles
from indisym.symbreak import (NO_BREAKING, BreakConfig, Const, LexConstraint, Mapped, NegFreq,
                              VarRef, all_configs, compile_lex_leader, group_elements,
                              semantic_lex_leader, simplify_lex, sym_order, sym_order_image)
from indisym.values import TupleV, UnnamedDom

COMPLETE = BreakConfig(Mode.ALTOGETHER, GeneratorFlag.ALL_PERMUTATIONS)


def model(text):
    return parse_model(text)


def test_all_configs_are_distinct():
    cfgs = all_configs()
    assert len(cfgs) == len(set(cfgs)) == 7
    assert cfgs[0] == NO_BREAKING


def test_semantic_examples():
    tags = {"T": 2}
    assert not semantic_lex_leader(COMPLETE, tags, TupleV((parse_value("[true, false; index:T]"),)))
    assert semantic_lex_leader(COMPLETE, tags, TupleV((parse_value("[false, true; index:T]"),)))
    assert semantic_lex_leader(NO_BREAKING, tags, TupleV((parse_value("[true, false; index:T]"),)))


def test_two_entry_swap_constraint():
    m = model("letting T be new type of size 2\nfind X : matrix indexed by [T] of bool")
    space = flatten(m)
    (c,) = compile_lex_leader(space, COMPLETE)
    assert c == LexConstraint((VarRef(0), VarRef(1)), (VarRef(1), VarRef(0)))
    assert c.format(space) == "[X[1_T], X[2_T]] <=lex [X[2_T], X[1_T]]"


def test_rectangular_double_lex():
    m = model("letting A be new type of size 2\nletting B be new type of size 3\n"
              "find X : matrix indexed by [A, B] of int(0..2)")
    space = flatten(m)
    cons = compile_lex_leader(space, BreakConfig(Mode.INDEPENDENTLY, GeneratorFlag.CONSECUTIVE))
    assert len(cons) == 3
    # one row swap then two column swaps
    assert len(cons[0].lhs) == 6 and len(cons[1].lhs) == len(cons[2].lhs) == 4


def test_function_occurrence_constraint_matches_semantics():
    m = model("letting T be new type of size 3\nfind f : function (total) T --> int(4..5)")
    space = flatten(m)
    g = parse_cycles("(1 2)", "T", 3)
    e = DirectProductElem([g])
    root = space.roots["f"]
    lhs, rhs = sym_order(root), sym_order_image(e, root)
    assert all(isinstance(t, NegFreq) for t in lhs + rhs)
    assert len(lhs) == 6  # one entry per (argument, image) pair
    c = simplify_lex(LexConstraint(tuple(lhs), tuple(rhs)))
    checked = 0
    for cells in iter_assignments(space):
        x = space.decode(cells).tupled
        assert c.holds(cells, space) == (cmp(x, transform_dp(e, x)) != GT)
        checked += 1
    assert checked == 8


def test_unnamed_entries_use_mapped_terms():
    m = model("letting T be new type of size 2\nfind X : matrix indexed by [T] of T")
    space = flatten(m)
    (c,) = compile_lex_leader(space, COMPLETE)
    assert c.rhs == (Mapped(parse_cycles("(1 2)", "T", 2), 1),
                     Mapped(parse_cycles("(1 2)", "T", 2), 0))


def test_simplify_examples():
    a, b, c, d = (VarRef(i) for i in range(4))
    assert simplify_lex(LexConstraint((a, b, c, d), (a, d, b, d))) == LexConstraint((b, c), (d, b))
    assert simplify_lex(LexConstraint((a, b), (a, b))).trivial
    assert simplify_lex(LexConstraint((a, b), (b, a))) == LexConstraint((a, b), (b, a))
    assert simplify_lex(LexConstraint((Const(1), a), (Const(1), b))) == LexConstraint((a,), (b,))


def test_lex_constraint_lengths_must_match():
    with pytest.raises(ValueError):
        LexConstraint((VarRef(0),), ())


@pytest.mark.parametrize("sizes", [(2,), (3,), (2, 2), (2, 3), (3, 3), (1, 3)])
def test_constraint_counts(sizes):
    decls = "\n".join(f"letting T{i} be new type of size {n}" for i, n in enumerate(sizes))
    idx = ", ".join(f"T{i}" for i in range(len(sizes)))
    space = flatten(model(f"{decls}\nfind X : matrix indexed by [{idx}] of bool"))
    cons = compile_lex_leader(space, BreakConfig(Mode.INDEPENDENTLY, GeneratorFlag.CONSECUTIVE))
    assert len(cons) == sum(n - 1 for n in sizes)
    assert len(compile_lex_leader(space, COMPLETE)) == math.prod(math.factorial(n) for n in sizes) - 1
    assert compile_lex_leader(space, NO_BREAKING) == []


def test_oversized_universe_is_reported():
    m = model("letting T be new type of size 3\n"
              "find s : set of set of matrix indexed by [T, T] of T")
    with pytest.raises(BudgetExceeded, match="universe"):
        flatten(m, budget=10 ** 4)


def _single_variable_model(d) -> Model:
    return Model(unnamed={t: UnnamedDom(t, n) for t, n in tag_sizes(d).items()}, finds=[("x", d)])


@settings(max_examples=200, deadline=None)
@given(nested_domains(400))
def test_compiled_and_semantic_filters_agree(d):
    m = _single_variable_model(d)
    space = flatten(m)
    assume(space.search_space_size() <= 400)
    for cfg in all_configs():
        cons = compile_lex_leader(space, cfg)
        raw = compile_lex_leader(space, cfg, simplify=False)
        for cells in iter_assignments(space):
            x = space.decode(cells).tupled
            want = semantic_lex_leader(cfg, space.tags, x)
            assert all(c.holds(cells, space) for c in cons) == want
            assert all(c.holds(cells, space) for c in raw) == want


@settings(max_examples=40, deadline=None)
@given(nested_domains(400))
def test_group_elements_order_is_deterministic(d):
    tags = tag_sizes(d)
    for cfg in all_configs():
        assert group_elements(cfg, tags) == group_elements(cfg, tags)
