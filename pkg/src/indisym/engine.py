"""Brute-force solution enumeration over a flattened model.

Cells are assigned depth-first in flattening order with values in search
order, so solutions come out ascending in the universal order of the tupled
assignment. Each check (a ground model constraint or a lex constraint) is
re-evaluated only when the cell it last blocked on receives a value.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .flat import DEFAULT_BUDGET, UNSET, BudgetExceeded, FlatSpace, Unassigned, flatten
from .modellang.ast import Binary, Model, Quant
from .modellang.evaluate import eval_expr, quant_values
from .order import sort_key
from .perm import Mode
from .symbreak import (BreakConfig, LexConstraint, NO_BREAKING, compile_lex_leader,
                       semantic_lex_leader)
from .values import Assignment, TupleV


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("SYMBREAK_BUDGET")
    return int(raw) if raw else default


# ------------------------------------------------------------------ checks


@dataclass
class GroundConstraint:
    """A model constraint with its top-level quantifiers instantiated."""

    expr: object
    env: dict

    def holds(self, cells, space: FlatSpace) -> bool:
        env = dict(self.env)
        env.update(space.roots)
        return eval_expr(self.expr, env, cells) is True


@dataclass
class LexCheck:
    constraint: LexConstraint

    def holds(self, cells, space: FlatSpace) -> bool:
        return self.constraint.holds(cells, space)


@dataclass
class SemanticCheck:
    cfg: BreakConfig

    def holds(self, cells, space: FlatSpace) -> bool:
        x = TupleV(tuple(n.decode(cells) for n in space.roots.values()))
        return semantic_lex_leader(self.cfg, space.tags, x)


def ground(expr, env: dict) -> list[GroundConstraint]:
    """Split top-level conjunctions and universal quantifiers into instances."""
    if isinstance(expr, Binary) and expr.op == "/\\":
        return ground(expr.left, env) + ground(expr.right, env)
    if isinstance(expr, Quant) and expr.kind == "forAll":
        out = []
        values = quant_values(expr.domain)

        def rec(k, local):
            if k == len(expr.names):
                out.extend(ground(expr.body, local))
                return
            for v in values:
                inner = dict(local)
                inner[expr.names[k]] = v
                rec(k + 1, inner)

        rec(0, env)
        return out
    return [GroundConstraint(expr, env)]


def model_checks(model: Model) -> list[GroundConstraint]:
    base = model.base_env()
    out = []
    for c in model.constraints:
        out.extend(ground(c, base))
    return out


# ------------------------------------------------------------------ search


class _Search:
    def __init__(self, space: FlatSpace, checks: list, budget: int):
        self.space = space
        self.checks = checks
        self.budget = budget
        self.nodes = 0
        n = len(space.cells)
        self.cells = space.empty()
        # watch[c]: checks to re-run once cell c has a value; index n = at the end.
        self.watch: list[list[int]] = [[] for _ in range(n + 1)]
        self.solutions: list[tuple] = []

    def evaluate(self, cid: int, trail: list) -> bool:
        try:
            ok = self.checks[cid].holds(self.cells, self.space)
        except Unassigned as u:
            self.watch[u.cell].append(cid)
            trail.append(u.cell)
            return True
        return ok

    def initial(self, prefix: dict) -> bool:
        for cell, v in prefix.items():
            self.cells[cell] = v
        trail: list = []
        for cid in range(len(self.checks)):
            if not self.evaluate(cid, trail):
                return False
        return True

    def run(self, depth: int = 0):
        n = len(self.space.cells)
        if depth == n:
            self.solutions.append(tuple(self.cells))
            return
        if self.cells[depth] is not UNSET:
            # Fixed by the caller's prefix.
            self._descend(depth)
            return
        for v in self.space.cells[depth].values:
            self.cells[depth] = v
            self._descend(depth)
        self.cells[depth] = UNSET

    def _descend(self, depth: int):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search visited more than {self.budget} nodes")
        trail: list = []
        ok = True
        for cid in self.watch[depth]:
            if not self.evaluate(cid, trail):
                ok = False
                break
        if ok:
            self.run(depth + 1)
        for cell in trail:
            self.watch[cell].pop()


def _search(space: FlatSpace, checks: list, budget: int, prefix: dict | None = None) -> tuple[list, int]:
    s = _Search(space, checks, budget)
    if not s.initial(prefix or {}):
        return [], 0
    s.run(0)
    return s.solutions, s.nodes


def _search_job(args):
    space, checks, budget, prefix = args
    return _search(space, checks, budget, prefix)


# ------------------------------------------------------------------ results


@dataclass
class SolveResult:
    config: BreakConfig
    solutions: list[Assignment]
    n_constraints: int
    nodes: int
    elapsed: float
    orbit_count: int | None = None
    lex_constraints: list = field(default_factory=list, repr=False)

    @property
    def count(self) -> int:
        return len(self.solutions)


def break_checks(space: FlatSpace, cfg: BreakConfig, semantic: bool = False):
    """Checks implementing the symmetry filter, plus the lex constraints used."""
    if cfg.mode is Mode.NONE:
        return [], []
    if semantic:
        return [SemanticCheck(cfg)], []
    lex = compile_lex_leader(space, cfg)
    return [LexCheck(c) for c in lex], lex


def enumerate_solutions(model: Model, cfg: BreakConfig = NO_BREAKING, *, semantic: bool = False,
                        threads: int = 1, budget: int | None = None,
                        space: FlatSpace | None = None) -> SolveResult:
    """All solutions of ``model`` that survive the configured symmetry filter."""
    budget = budget_from_env() if budget is None else budget
    start = time.perf_counter()
    space = space or flatten(model, budget)
    sym, lex = break_checks(space, cfg, semantic)
    checks = model_checks(model) + sym
    if threads > 1 and space.cells:
        first = space.cells[0]
        jobs = [(space, checks, budget, {0: v}) for v in first.values]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_search_job, jobs))
        raw = [s for sols, _ in parts for s in sols]
        nodes = sum(n for _, n in parts)
        if nodes > budget:
            raise BudgetExceeded(f"search visited more than {budget} nodes")
    else:
        raw, nodes = _search(space, checks, budget)
    solutions = [space.decode(cells) for cells in raw]
    solutions.sort(key=lambda a: sort_key(a.tupled))
    return SolveResult(cfg, solutions, len(lex) if not semantic else len(sym), nodes,
                       time.perf_counter() - start, lex_constraints=lex)


def iter_assignments(space: FlatSpace):
    """Every flat assignment of the space (model constraints ignored)."""
    for combo in itertools.product(*(c.values for c in space.cells)):
        yield list(combo)
