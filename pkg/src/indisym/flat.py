"""Flattening of decision variables into atomic cells.

Each decision variable becomes a tree of nodes whose leaves own cells:

* an atomic position owns one cell holding the atom;
* a set/multiset/relation owns one count cell per element of its universe;
* a function owns one cell per argument holding the image (or ``None`` when
  a partial function is undefined there).

Cell values are listed in search order, which is ascending in the universal
order of the enclosing value (counts therefore run from high to low).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .literals import format_value
from .modellang.ast import Model
from .modellang.evaluate import EvalError, Lazy
from .values import (ATOMIC_DOMAINS, Assignment, BoolDom, IntDom, MatrixDom, MSetDom,
                     MatrixV, MSetV, TupleDom, TupleV, UnnamedDom, atoms_of, count_values,
                     enumerate_values, lower_domain)

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    pass


class Unassigned(Exception):
    """Raised when an evaluation reads a cell that has no value yet."""

    def __init__(self, cell: int):
        super().__init__(cell)
        self.cell = cell


class _Unset:
    __slots__ = ()

    def __repr__(self):
        return "UNSET"

    def __reduce__(self):
        return (_unset, ())


def _unset():
    return UNSET


UNSET = _Unset()


@dataclass
class Cell:
    id: int
    name: str
    values: tuple
    domain: str
    tag: str | None = None


class Node(Lazy):
    pass


@dataclass(eq=False)
class AtomLeaf(Node):
    cell: int
    tag: str | None

    def decode(self, cells):
        v = cells[self.cell]
        if v is UNSET:
            raise Unassigned(self.cell)
        return v

    def encode(self, v, out):
        out[self.cell] = v


@dataclass(eq=False)
class TupleNode(Node):
    children: tuple

    def decode(self, cells):
        return TupleV(tuple(_decode(c, cells) for c in self.children))

    def at(self, index, cells):
        if len(index) != 1 or not isinstance(index[0], int) or isinstance(index[0], bool):
            raise EvalError("tuple projection takes one integer")
        k = index[0]
        if not 1 <= k <= len(self.children):
            raise EvalError(f"tuple index {k} out of range")
        return _resolve(self.children[k - 1], cells)

    def encode(self, v, out):
        for c, x in zip(self.children, v.items):
            c.encode(x, out)


@dataclass(eq=False)
class MatrixNode(Node):
    index_lists: tuple
    children: tuple
    _pos: list = field(init=False, repr=False)
    _strides: list = field(init=False, repr=False)

    def __post_init__(self):
        self._pos = [{a: k for k, a in enumerate(idx)} for idx in self.index_lists]
        strides = [1] * len(self.index_lists)
        for d in range(len(self.index_lists) - 2, -1, -1):
            strides[d] = strides[d + 1] * len(self.index_lists[d + 1])
        self._strides = strides

    def flat_position(self, index) -> int:
        if len(index) != len(self.index_lists):
            raise EvalError(f"matrix needs {len(self.index_lists)} indices")
        return self._offset(index)

    def _offset(self, index) -> int:
        pos = 0
        for d, a in enumerate(index):
            k = self._pos[d].get(a)
            if k is None:
                raise EvalError(f"index {a!r} out of range")
            pos += k * self._strides[d]
        return pos

    def at(self, index, cells):
        k = len(index)
        if 0 < k < len(self.index_lists):
            rest = self.index_lists[k:]
            start = self._offset(index)
            size = len(self.children) // math.prod(len(i) for i in self.index_lists[:k])
            return MatrixNode(rest, self.children[start:start + size])
        return _resolve(self.children[self.flat_position(index)], cells)

    def decode(self, cells):
        return MatrixV(self.index_lists, tuple(_decode(c, cells) for c in self.children))

    def encode(self, v, out):
        for c, x in zip(self.children, v.entries):
            c.encode(x, out)


class MSetLeaf(Node):
    """Common interface of the two multiset encodings."""

    leaf_id: int
    name: str
    universe: tuple
    kind: str

    def neg_freq(self, element, cells) -> int:
        raise NotImplementedError


@dataclass(eq=False)
class CountLeaf(MSetLeaf):
    leaf_id: int
    name: str
    universe: tuple
    cells_: tuple
    bound: int
    kind: str
    _slot: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._slot = {u: c for u, c in zip(self.universe, self.cells_)}

    def _count(self, cell, cells):
        v = cells[cell]
        if v is UNSET:
            raise Unassigned(cell)
        return v

    def neg_freq(self, element, cells):
        return -self._count(self._slot[element], cells)

    def contains(self, x, cells):
        c = self._slot.get(x)
        return c is not None and self._count(c, cells) > 0

    def card(self, cells):
        return sum(self._count(c, cells) for c in self.cells_)

    def decode(self, cells):
        items = []
        for u, c in zip(self.universe, self.cells_):
            items.extend([u] * self._count(c, cells))
        return MSetV.trusted(tuple(items), self.kind)

    def encode(self, v, out):
        counts = {u: 0 for u in self.universe}
        for x in v.items:
            counts[x] += 1
        for u, c in zip(self.universe, self.cells_):
            out[c] = counts[u]


@dataclass(eq=False)
class FuncLeaf(MSetLeaf):
    leaf_id: int
    name: str
    universe: tuple
    args: tuple
    cells_: tuple
    total: bool
    kind: str = "function"
    _slot: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._slot = {a: c for a, c in zip(self.args, self.cells_)}

    def _image(self, cell, cells):
        v = cells[cell]
        if v is UNSET:
            raise Unassigned(cell)
        return v

    def neg_freq(self, element, cells):
        a, b = element.items
        return -1 if self._image(self._slot[a], cells) == b else 0

    def apply(self, arg, cells):
        c = self._slot.get(arg)
        if c is None:
            raise EvalError(f"argument {arg!r} outside the function's domain")
        v = self._image(c, cells)
        if v is None:
            raise EvalError(f"function {self.name} undefined at {format_value(arg)}")
        return v

    def contains(self, x, cells):
        if not isinstance(x, TupleV) or len(x.items) != 2:
            return False
        c = self._slot.get(x.items[0])
        return c is not None and self._image(c, cells) == x.items[1]

    def card(self, cells):
        return sum(1 for c in self.cells_ if self._image(c, cells) is not None)

    def decode(self, cells):
        items = []
        for a, c in zip(self.args, self.cells_):
            b = self._image(c, cells)
            if b is not None:
                items.append(TupleV((a, b)))
        return MSetV.trusted(tuple(items), self.kind)

    def encode(self, v, out):
        images = {p.items[0]: p.items[1] for p in v.items}
        for a, c in zip(self.args, self.cells_):
            out[c] = images.get(a)


def _resolve(node, cells):
    if isinstance(node, AtomLeaf):
        return node.decode(cells)
    return node


def _decode(node, cells):
    return node.decode(cells)


@dataclass
class FlatSpace:
    model: Model
    cells: list[Cell]
    roots: dict
    msets: list[MSetLeaf]

    @property
    def tags(self) -> dict[str, int]:
        return self.model.tags

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.roots)

    def search_space_size(self) -> int:
        return math.prod(len(c.values) for c in self.cells)

    def empty(self) -> list:
        return [UNSET] * len(self.cells)

    def decode(self, cells) -> Assignment:
        return Assignment(self.names, tuple(n.decode(cells) for n in self.roots.values()))

    def encode(self, a: Assignment) -> list:
        out = self.empty()
        for name, v in zip(a.names, a.values):
            self.roots[name].encode(v, out)
        return out

    def describe(self) -> list[str]:
        return [f"{c.id}: {c.name} : {c.domain}" for c in self.cells]


class _Builder:
    def __init__(self, model: Model, budget: int):
        self.model = model
        self.budget = budget
        self.cells: list[Cell] = []
        self.msets: list[MSetLeaf] = []

    def cell(self, name, values, domain, tag=None) -> int:
        if len(self.cells) >= self.budget:
            raise BudgetExceeded(f"more than {self.budget} cells")
        c = Cell(len(self.cells), name, tuple(values), domain, tag)
        self.cells.append(c)
        return c.id

    def universe(self, d) -> tuple:
        n = count_values(d)
        if n > self.budget:
            raise BudgetExceeded(f"universe of {n} values exceeds budget {self.budget}")
        return tuple(enumerate_values(d))

    def build(self, name: str, d):
        if isinstance(d, ATOMIC_DOMAINS):
            tag = d.tag if isinstance(d, UnnamedDom) else None
            return AtomLeaf(self.cell(name, atoms_of(d), str(d), tag), tag)
        if isinstance(d, TupleDom):
            return TupleNode(tuple(self.build(f"{name}[{k}]", c)
                                   for k, c in enumerate(d.components, 1)))
        if isinstance(d, MatrixDom):
            index_lists = tuple(tuple(atoms_of(i)) for i in d.indices)
            children = []
            for combo in itertools.product(*index_lists):
                label = ",".join(format_value(a) for a in combo)
                children.append(self.build(f"{name}[{label}]", d.element))
            return MatrixNode(index_lists, tuple(children))
        if isinstance(d, MSetDom):
            return self.mset(name, d)
        raise TypeError(f"unexpected lowered domain {d!r}")

    def mset(self, name: str, d: MSetDom):
        if d.bound is None:
            raise BudgetExceeded(f"{name}: multiset needs a maxOccur bound to be finite")
        universe = self.universe(d.element)
        leaf_id = len(self.msets)
        if d.functional:
            frm, to = d.element.components
            args = self.universe(frm)
            images = self.universe(to)
            values = images if d.total else images + (None,)
            dom = str(to) if d.total else f"{to} or undefined"
            cells = tuple(self.cell(f"{name}({format_value(a)})", values, dom,
                                    to.tag if isinstance(to, UnnamedDom) else None)
                          for a in args)
            leaf = FuncLeaf(leaf_id, name, universe, args, cells, d.total, d.kind)
        else:
            dom = str(BoolDom()) if d.bound == 1 else str(IntDom(0, d.bound))
            cells = tuple(self.cell(f"{name}{{{format_value(u)}}}", range(d.bound, -1, -1), dom)
                          for u in universe)
            leaf = CountLeaf(leaf_id, name, universe, cells, d.bound, d.kind)
        self.msets.append(leaf)
        return leaf


def flatten(model: Model, budget: int = DEFAULT_BUDGET) -> FlatSpace:
    b = _Builder(model, budget)
    roots = {}
    for name, d in model.finds:
        roots[name] = b.build(name, lower_domain(d))
    return FlatSpace(model, b.cells, roots, b.msets)
