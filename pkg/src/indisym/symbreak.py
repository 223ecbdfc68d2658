"""Lex-leader symmetry breaking for unnamed types.

Two routes to the same predicate:

* ``semantic_lex_leader`` applies each group element to the tupled value and
  compares with the universal order;
* ``compile_lex_leader`` pushes the group element through the flattened
  structure at compile time and emits ``lhs <=lex rhs`` over atomic terms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .action import transform_dp
from .flat import AtomLeaf, FlatSpace, MatrixNode, MSetLeaf, TupleNode, Unassigned, UNSET
from .literals import format_value
from .order import GT, cmp
from .perm import (DirectProductElem, GeneratorFlag, Mode, Permutation, dp_elements,
                   generator_set, print_cycles)
from .values import atom_code


@dataclass(frozen=True)
class BreakConfig:
    mode: Mode = Mode.ALTOGETHER
    gens: GeneratorFlag = GeneratorFlag.ALL_PERMUTATIONS

    def __str__(self) -> str:
        if self.mode is Mode.NONE:
            return "none"
        return f"{self.mode.value}/{self.gens.value}"


NO_BREAKING = BreakConfig(Mode.NONE, GeneratorFlag.ALL_PERMUTATIONS)


def all_configs() -> list[BreakConfig]:
    """The seven distinct configurations: no breaking plus 2 modes x 3 generator sets."""
    out = [NO_BREAKING]
    for mode in (Mode.INDEPENDENTLY, Mode.ALTOGETHER):
        for gens in GeneratorFlag:
            out.append(BreakConfig(mode, gens))
    return out


def group_elements(cfg: BreakConfig, tags: Mapping[str, int]) -> list[DirectProductElem]:
    gens = {t: generator_set(cfg.gens, t, n) for t, n in tags.items()}
    return list(dp_elements(cfg.mode, gens))


def semantic_lex_leader(cfg: BreakConfig, tags: Mapping[str, int], x) -> bool:
    """True iff x is no larger than any of its images under the configured elements."""
    for e in group_elements(cfg, tags):
        if cmp(x, transform_dp(e, x)) == GT:
            return False
    return True


# ------------------------------------------------------------ atomic terms


@dataclass(frozen=True)
class VarRef:
    cell: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Mapped:
    """Image of a tagged cell's atom under a fixed permutation."""

    perm: Permutation
    cell: int


@dataclass(frozen=True)
class NegFreq:
    """Minus the multiplicity of ``element`` in multiset leaf ``leaf``."""

    leaf: int
    element: object


def term_value(t, cells, space: FlatSpace) -> int:
    if isinstance(t, VarRef):
        v = cells[t.cell]
        if v is UNSET:
            raise Unassigned(t.cell)
        return atom_code(v)
    if isinstance(t, Mapped):
        v = cells[t.cell]
        if v is UNSET:
            raise Unassigned(t.cell)
        return t.perm(v.index)
    if isinstance(t, NegFreq):
        return space.msets[t.leaf].neg_freq(t.element, cells)
    if isinstance(t, Const):
        return t.value
    raise TypeError(f"not an atomic term: {t!r}")


def format_term(t, space: FlatSpace) -> str:
    if isinstance(t, VarRef):
        return space.cells[t.cell].name
    if isinstance(t, Mapped):
        return f"image({t.perm.tag}:{print_cycles(t.perm)}, {space.cells[t.cell].name})"
    if isinstance(t, NegFreq):
        return f"-freq({space.msets[t.leaf].name}, {format_value(t.element)})"
    if isinstance(t, Const):
        return str(t.value)
    raise TypeError(f"not an atomic term: {t!r}")


@dataclass(frozen=True)
class LexConstraint:
    lhs: tuple
    rhs: tuple
    strict: bool = False

    def __post_init__(self):
        if len(self.lhs) != len(self.rhs):
            raise ValueError("lex constraint sides differ in length")

    @property
    def trivial(self) -> bool:
        return not self.lhs and not self.strict

    def holds(self, cells, space: FlatSpace) -> bool:
        """Decide the constraint; raises ``Unassigned`` if the prefix is unknown."""
        for a, b in zip(self.lhs, self.rhs):
            x = term_value(a, cells, space)
            y = term_value(b, cells, space)
            if x != y:
                return x < y
        return not self.strict

    def format(self, space: FlatSpace) -> str:
        lhs = ", ".join(format_term(t, space) for t in self.lhs)
        rhs = ", ".join(format_term(t, space) for t in self.rhs)
        op = "<lex" if self.strict else "<=lex"
        return f"[{lhs}] {op} [{rhs}]"


def simplify_lex(c: LexConstraint) -> LexConstraint:
    """Drop positions whose two sides are syntactically identical.

    A position with equal terms on both sides is always tied, so it never
    decides the comparison. An empty result means the constraint is
    trivially true.
    """
    keep = [(a, b) for a, b in zip(c.lhs, c.rhs) if a != b]
    return LexConstraint(tuple(a for a, _ in keep), tuple(b for _, b in keep), c.strict)


# --------------------------------------------------------------- compiler


def sym_order(node) -> list:
    """Atomic terms whose lex order is the universal order on ``node``."""
    if isinstance(node, AtomLeaf):
        return [VarRef(node.cell)]
    if isinstance(node, (TupleNode, MatrixNode)):
        return [t for c in node.children for t in sym_order(c)]
    if isinstance(node, MSetLeaf):
        return [NegFreq(node.leaf_id, u) for u in node.universe]
    raise TypeError(f"unexpected node {node!r}")


def sym_order_image(e: DirectProductElem, node, e_inv: DirectProductElem | None = None) -> list:
    """``sym_order`` of the image of ``node`` under ``e``, rewritten statically."""
    if e_inv is None:
        e_inv = e.inverse()
    if isinstance(node, AtomLeaf):
        p = e.get(node.tag) if node.tag is not None else None
        return [VarRef(node.cell) if p is None else Mapped(p, node.cell)]
    if isinstance(node, TupleNode):
        return [t for c in node.children for t in sym_order_image(e, c, e_inv)]
    if isinstance(node, MatrixNode):
        # Entry i of the image is the image of the entry at the preimage of i.
        out = []
        for target in _matrix_indices(node):
            source = tuple(transform_dp(e_inv, a) for a in target)
            child = node.children[node.flat_position(source)]
            out.extend(sym_order_image(e, child, e_inv))
        return out
    if isinstance(node, MSetLeaf):
        # freq(X^g, u) = freq(X, u^(g^-1))
        return [NegFreq(node.leaf_id, transform_dp(e_inv, u)) for u in node.universe]
    raise TypeError(f"unexpected node {node!r}")


def _matrix_indices(node: MatrixNode):
    return itertools.product(*node.index_lists)


def compile_lex_leader(space: FlatSpace, cfg: BreakConfig,
                       simplify: bool = True) -> list[LexConstraint]:
    """One lex constraint per configured group element, trivial ones dropped."""
    roots = list(space.roots.values())
    lhs = tuple(t for r in roots for t in sym_order(r))
    out = []
    for e in group_elements(cfg, space.tags):
        e_inv = e.inverse()
        rhs = tuple(t for r in roots for t in sym_order_image(e, r, e_inv))
        c = LexConstraint(lhs, rhs)
        if simplify:
            c = simplify_lex(c)
            if c.trivial:
                continue
        out.append(c)
    return out


def dump_constraints(space: FlatSpace, constraints: Sequence[LexConstraint]) -> str:
    """Textual low-level model: flattened cells, then one lex constraint per line."""
    lines = ["# cells"]
    lines.extend(space.describe())
    lines.append(f"# lex constraints ({len(constraints)})")
    lines.extend(c.format(space) for c in constraints)
    return "\n".join(lines) + "\n"
