from __future__ import annotations

import pytest

from _support import ALL_MODELS, load
from indisym.engine import (budget_from_env, enumerate_solutions, ground, iter_assignments,
                            model_checks)
from indisym.flat import BudgetExceeded, flatten
from indisym.literals import format_value
from indisym.modellang import EvalError, parse_model
from indisym.oracle import orbit_oracle
from indisym.order import LT, cmp
from indisym.perm import GeneratorFlag, Mode
from indisym.symbreak import NO_BREAKING, BreakConfig, all_configs

COMPLETE = BreakConfig(Mode.ALTOGETHER, GeneratorFlag.ALL_PERMUTATIONS)


def model(text):
    return parse_model(text)


def test_flatten_examples():
    s = flatten(model("letting T be new type of size 2\nfind M : matrix indexed by [T] of bool"))
    assert [c.domain for c in s.cells] == ["bool", "bool"]
    s = flatten(model("letting T be new type of size 3\nfind s : set of T"))
    assert [(c.name, c.domain) for c in s.cells] == [("s{1_T}", "bool"), ("s{2_T}", "bool"),
                                                    ("s{3_T}", "bool")]
    s = flatten(model("letting T be new type of size 2\nletting U be new type of size 3\n"
                      "find f : function (total) T --> U"))
    assert [(c.name, c.tag) for c in s.cells] == [("f(1_T)", "U"), ("f(2_T)", "U")]
    s = flatten(model("letting T be new type of size 2\nfind f : function T --> bool"))
    assert s.cells[0].values == (False, True, None)


def test_mset_count_cells_descend():
    s = flatten(model("letting T be new type of size 2\nfind b : mset (maxOccur 3) of T"))
    assert s.cells[0].values == (3, 2, 1, 0)


@pytest.mark.parametrize("name", ALL_MODELS)
def test_decode_encode_round_trip(name):
    m = load(name)
    space = flatten(m)
    n = 0
    for cells in iter_assignments(space):
        a = space.decode(cells)
        assert space.encode(a) == cells
        n += 1
        if n == 300:
            break


def test_unconstrained_bool_vector_counts():
    m = load("matrix_bool_3")
    assert enumerate_solutions(m, COMPLETE).count == 4
    assert enumerate_solutions(m, NO_BREAKING).count == 8


@pytest.mark.parametrize("name", ALL_MODELS)
def test_solutions_strictly_ascending_and_filters_agree(name):
    m = load(name)
    for cfg in all_configs():
        syn = enumerate_solutions(m, cfg)
        keys = [a.tupled for a in syn.solutions]
        assert all(cmp(x, y) == LT for x, y in zip(keys, keys[1:]))
        sem = enumerate_solutions(m, cfg, semantic=True)
        assert keys == [a.tupled for a in sem.solutions]


@pytest.mark.parametrize("name", ["semigroup_3", "golfers", "set_mset"])
def test_parallel_matches_serial(name):
    m = load(name)
    serial = enumerate_solutions(m, COMPLETE)
    parallel = enumerate_solutions(m, COMPLETE, threads=3)
    assert [a.tupled for a in serial.solutions] == [a.tupled for a in parallel.solutions]


def test_budget_exceeded():
    m = load("square_bool_3")
    with pytest.raises(BudgetExceeded):
        enumerate_solutions(m, NO_BREAKING, budget=100)
    with pytest.raises(BudgetExceeded):
        flatten(m, budget=5)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("SYMBREAK_BUDGET", "42")
    assert budget_from_env() == 42
    monkeypatch.delenv("SYMBREAK_BUDGET")
    assert budget_from_env() == 10 ** 7


def test_ground_splits_conjunctions_and_universals():
    m = model("letting T be new type of size 3\nfind M : matrix indexed by [T] of bool\n"
              "such that forAll t : T . M[t] \\/ !M[t], true /\\ (exists t : T . M[t])")
    assert len(model_checks(m)) == 3 + 2
    assert len(ground(m.constraints[0], m.base_env())) == 3


def test_partial_function_membership():
    m = load("partial_function")
    sols = enumerate_solutions(m, NO_BREAKING).solutions
    # injective partial maps 2 -> 2: 1 empty + 4 singletons + 2 bijections
    assert len(sols) == 7
    assert format_value(sols[-1]["f"]) == "function{}"


def test_undefined_application_is_an_error():
    m = model("letting T be new type of size 2\nfind f : function T --> bool\n"
              "such that forAll t : T . f(t)")
    with pytest.raises(EvalError):
        enumerate_solutions(m, NO_BREAKING)


def test_row_slices_in_constraints():
    m = model("letting R be new type of size 3\nletting C be new type of size 2\n"
              "find M : matrix indexed by [R, C] of bool\n"
              "such that forAll a, b : R . a != b -> M[a] != M[b]")
    # three distinct rows out of four: 4*3*2 labelled; up to row and column
    # swaps the missing row is 00, 11 or one of {01, 10}
    assert enumerate_solutions(m, NO_BREAKING).count == 24
    assert enumerate_solutions(m, COMPLETE).count == 3
    assert orbit_oracle(m).count == 3


def test_models_without_variables_have_one_empty_solution():
    m = model("letting n be 3\nsuch that n = 3")
    res = enumerate_solutions(m, COMPLETE)
    assert res.count == 1 and res.solutions[0].names == ()
    assert enumerate_solutions(model("such that false"), COMPLETE).count == 0
