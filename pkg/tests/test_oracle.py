from __future__ import annotations

from functools import cmp_to_key

import pytest

from _support import ALL_MODELS, load
from indisym.action import transform_dp
from indisym.engine import enumerate_solutions
from indisym.flat import BudgetExceeded
from indisym.literals import format_value
from indisym.oracle import closure_generators, orbit_oracle, orbits
from indisym.order import cmp
from indisym.perm import GeneratorFlag, Mode
from indisym.symbreak import NO_BREAKING, BreakConfig, group_elements


def test_two_entry_vector_orbits():
    rep = orbit_oracle(load("matrix_bool_2"))
    assert rep.count == 3
    assert [format_value(a["M"]) for a in rep.representatives] == [
        "[false, false; index:T]", "[false, true; index:T]", "[true, true; index:T]"]
    assert rep.orbit_sizes == [1, 2, 1]


def test_closure_generators_are_adjacent_transpositions():
    gens = closure_generators({"T": 3, "U": 2})
    assert [str(g) for g in gens] == ["T:(1 2)", "T:(2 3)", "U:(1 2)"]


@pytest.mark.parametrize("name", ["square_bool_3", "yang_baxter_3", "set_mset", "relation",
                                  "partial_function", "template_design"])
def test_transpositions_and_full_group_agree(name):
    m = load(name)
    a, b = orbit_oracle(m), orbit_oracle(m, full_group=True)
    assert a.count == b.count
    assert [x.tupled for x in a.representatives] == [x.tupled for x in b.representatives]


@pytest.mark.parametrize("name", ALL_MODELS)
def test_orbits_partition_and_representatives_are_minimal(name):
    m = load(name)
    sols = [a.tupled for a in enumerate_solutions(m, NO_BREAKING).solutions]
    rep = orbit_oracle(m)
    assert sum(rep.orbit_sizes) == len(sols)
    full = group_elements(BreakConfig(Mode.ALTOGETHER, GeneratorFlag.ALL_PERMUTATIONS), m.tags)
    for r in rep.representatives:
        x = r.tupled
        assert all(cmp(x, transform_dp(e, x)) <= 0 for e in full)
    key = cmp_to_key(cmp)
    assert [r.tupled for r in rep.representatives] == sorted(
        (r.tupled for r in rep.representatives), key=key)


def test_orbits_of_arbitrary_closed_set():
    m = load("matrix_bool_3")
    sols = [a.tupled for a in enumerate_solutions(m, NO_BREAKING).solutions]
    assert sorted(len(o) for o in orbits(sols, m.tags)) == [1, 1, 3, 3]


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        orbit_oracle(load("square_bool_3"), budget=100)
