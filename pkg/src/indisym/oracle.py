"""Orbit counting by closure under the symmetry group.

Independent of the constraint compiler: it enumerates the unbroken solution
set and merges solutions connected by a group generator, using the value
action directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key

from .action import transform_dp
from .engine import enumerate_solutions
from .flat import BudgetExceeded
from .modellang.ast import Model
from .order import cmp
from .perm import DirectProductElem, GeneratorFlag, Mode, dp_elements, generator_set
from .symbreak import NO_BREAKING
from .values import Assignment


@dataclass
class OrbitReport:
    count: int
    representatives: list[Assignment]
    orbit_sizes: list[int]


def closure_generators(tags: dict[str, int], full_group: bool = False) -> list[DirectProductElem]:
    """Adjacent transpositions of every type; they generate the direct product."""
    if full_group:
        gens = {t: generator_set(GeneratorFlag.ALL_PERMUTATIONS, t, n) for t, n in tags.items()}
        return list(dp_elements(Mode.ALTOGETHER, gens))
    gens = {t: generator_set(GeneratorFlag.CONSECUTIVE, t, n) for t, n in tags.items()}
    return list(dp_elements(Mode.INDEPENDENTLY, gens))


def orbits(values, tags: dict[str, int], full_group: bool = False) -> list[list]:
    """Partition a symmetry-closed collection of tupled values into orbits."""
    gens = closure_generators(tags, full_group)
    remaining = set(values)
    out = []
    for v in values:
        if v not in remaining:
            continue
        remaining.discard(v)
        orbit, queue = [v], deque([v])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = transform_dp(g, x)
                if y in remaining:
                    remaining.discard(y)
                    orbit.append(y)
                    queue.append(y)
        out.append(orbit)
    return out


def orbit_oracle(model: Model, budget: int | None = None, full_group: bool = False) -> OrbitReport:
    result = enumerate_solutions(model, NO_BREAKING, budget=budget)
    if budget is not None and result.count > budget:
        raise BudgetExceeded(f"{result.count} solutions exceed budget {budget}")
    names = model.var_names
    tupled = [a.tupled for a in result.solutions]
    parts = orbits(tupled, model.tags, full_group)
    key = cmp_to_key(cmp)
    reps = sorted((min(o, key=key) for o in parts), key=key)
    sizes = {r: len(o) for r, o in zip((min(o, key=key) for o in parts), parts)}
    return OrbitReport(
        count=len(parts),
        representatives=[Assignment(names, r.items) for r in reps],
        orbit_sizes=[sizes[r] for r in reps],
    )
