"""Domains and values.

Every supported domain lowers to a small core: atoms, tuples, matrices and
multisets. Sets, functions and relations become multisets of (tuples of)
their elements, with side-conditions recorded on the lowered multiset domain.

Booleans and integers are represented by plain Python ``bool`` and ``int``.
Enumerated and unnamed atoms get their own small classes so that atoms of
different types never compare equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence, Union


class DomainError(ValueError):
    pass


class OutOfScopeError(DomainError):
    pass


class InfiniteDomainError(DomainError):
    pass


# ---------------------------------------------------------------- domains


@dataclass(frozen=True)
class BoolDom:
    def __str__(self) -> str:
        return "bool"


@dataclass(frozen=True)
class IntDom:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty integer range int({self.lo}..{self.hi})")

    def __str__(self) -> str:
        return f"int({self.lo}..{self.hi})"


@dataclass(frozen=True)
class EnumDom:
    name: str
    atoms: tuple[str, ...]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class UnnamedDom:
    tag: str
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise DomainError(f"unnamed type {self.tag} must have positive size")

    def __str__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class TupleDom:
    components: tuple

    def __str__(self) -> str:
        return "tuple (" + ", ".join(map(str, self.components)) + ")"


@dataclass(frozen=True)
class MatrixDom:
    indices: tuple
    element: object

    def __post_init__(self):
        for d in self.indices:
            if not isinstance(d, ATOMIC_DOMAINS):
                raise DomainError(f"matrix index domain must be atomic, got {d}")

    def __str__(self) -> str:
        idx = ", ".join(map(str, self.indices))
        return f"matrix indexed by [{idx}] of {self.element}"


@dataclass(frozen=True)
class MSetDom:
    """Multiset domain. ``bound`` caps each element's multiplicity.

    ``functional``/``total`` are the side-conditions of a lowered function
    (elements are pairs, first components distinct / exhaustive). ``kind``
    remembers the surface domain for printing only.
    """

    element: object
    bound: int | None
    functional: bool = False
    total: bool = False
    kind: str = "mset"

    def __str__(self) -> str:
        occ = "" if self.bound is None else f" (maxOccur {self.bound})"
        return f"mset{occ} of {self.element}"


@dataclass(frozen=True)
class SetDom:
    element: object

    def __str__(self) -> str:
        return f"set of {self.element}"


@dataclass(frozen=True)
class FunctionDom:
    frm: object
    to: object
    total: bool = False

    def __str__(self) -> str:
        attr = " (total)" if self.total else ""
        return f"function{attr} {self.frm} --> {self.to}"


@dataclass(frozen=True)
class RelationDom:
    components: tuple

    def __str__(self) -> str:
        return "relation of (" + " * ".join(map(str, self.components)) + ")"


@dataclass(frozen=True)
class UnsupportedDom:
    """Placeholder for a recognised but unimplemented domain constructor."""

    kind: str
    pos: object = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"{self.kind} of ..."


ATOMIC_DOMAINS = (BoolDom, IntDom, EnumDom, UnnamedDom)

Domain = Union[BoolDom, IntDom, EnumDom, UnnamedDom, TupleDom, MatrixDom,
               MSetDom, SetDom, FunctionDom, RelationDom, UnsupportedDom]


# ----------------------------------------------------------------- values


@dataclass(frozen=True)
class EnumV:
    enum: str
    position: int
    label: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.label or f"{self.enum}#{self.position}"


@dataclass(frozen=True)
class UnnamedV:
    tag: str
    index: int

    def __str__(self) -> str:
        return f"{self.index}_{self.tag}"


@dataclass(frozen=True)
class TupleV:
    items: tuple

    def __getitem__(self, k: int):
        return self.items[k]

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class MatrixV:
    """A matrix with explicit per-dimension index atoms.

    ``entries`` is row-major over the Cartesian product of ``index_lists``.
    A well-formed matrix has exactly one entry per index tuple; ``check_value``
    rejects anything else.
    """

    index_lists: tuple
    entries: tuple

    @cached_property
    def _positions(self):
        return [{a: k for k, a in enumerate(idx)} for idx in self.index_lists]

    @cached_property
    def _strides(self):
        strides = [1] * len(self.index_lists)
        for d in range(len(self.index_lists) - 2, -1, -1):
            strides[d] = strides[d + 1] * len(self.index_lists[d + 1])
        return strides

    def flat_position(self, index: Sequence) -> int:
        if len(index) != len(self.index_lists):
            raise IndexError(f"expected {len(self.index_lists)} indices, got {len(index)}")
        pos = 0
        for d, a in enumerate(index):
            try:
                pos += self._positions[d][a] * self._strides[d]
            except KeyError:
                raise IndexError(f"index {a} out of range in dimension {d + 1}") from None
        return pos

    def __getitem__(self, index):
        if not isinstance(index, tuple):
            index = (index,)
        return self.entries[self.flat_position(index)]

    def slice(self, prefix: Sequence) -> "MatrixV":
        """The sub-matrix obtained by fixing the leading indices."""
        k = len(prefix)
        if not 0 < k < len(self.index_lists):
            raise IndexError(f"a slice fixes 1 to {len(self.index_lists) - 1} indices, got {k}")
        rest = self.index_lists[k:]
        start = self.flat_position(tuple(prefix) + tuple(idx[0] for idx in rest))
        size = math.prod(len(idx) for idx in rest)
        return MatrixV(rest, self.entries[start:start + size])

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(idx) for idx in self.index_lists)


@dataclass(frozen=True)
class MSetV:
    """A multiset; items are kept sorted ascending so equality is structural."""

    items: tuple
    kind: str = field(default="mset", compare=False)

    def __post_init__(self):
        from .order import sort_key

        object.__setattr__(self, "items", tuple(sorted(self.items, key=sort_key)))

    @classmethod
    def trusted(cls, items: tuple, kind: str = "mset") -> "MSetV":
        """Build from items already in ascending order (skips the sort)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "items", tuple(items))
        object.__setattr__(obj, "kind", kind)
        return obj

    def __len__(self) -> int:
        return len(self.items)

    def count(self, x) -> int:
        return sum(1 for y in self.items if y == x)


Value = Union[bool, int, EnumV, UnnamedV, TupleV, MatrixV, MSetV]


def is_atom(v) -> bool:
    return isinstance(v, (bool, int, EnumV, UnnamedV))


def atom_code(v) -> int:
    """Integer carrying the atom's position in the universal order."""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, EnumV):
        return v.position
    if isinstance(v, UnnamedV):
        return v.index
    raise TypeError(f"not an atom: {v!r}")


# -------------------------------------------------------------- assignment


@dataclass(frozen=True)
class Assignment:
    """One value per decision variable, in declaration order."""

    names: tuple[str, ...]
    values: tuple

    def __getitem__(self, name: str):
        return self.values[self.names.index(name)]

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))

    @property
    def tupled(self) -> TupleV:
        return TupleV(self.values)


# --------------------------------------------------------------- lowering


def lower_domain(d) -> Domain:
    if isinstance(d, ATOMIC_DOMAINS):
        return d
    if isinstance(d, TupleDom):
        return TupleDom(tuple(lower_domain(c) for c in d.components))
    if isinstance(d, MatrixDom):
        return MatrixDom(d.indices, lower_domain(d.element))
    if isinstance(d, MSetDom):
        return MSetDom(lower_domain(d.element), d.bound, d.functional, d.total, d.kind)
    if isinstance(d, SetDom):
        return MSetDom(lower_domain(d.element), 1, kind="set")
    if isinstance(d, FunctionDom):
        pair = TupleDom((lower_domain(d.frm), lower_domain(d.to)))
        return MSetDom(pair, 1, functional=True, total=d.total, kind="function")
    if isinstance(d, RelationDom):
        row = TupleDom(tuple(lower_domain(c) for c in d.components))
        return MSetDom(row, 1, kind="relation")
    if isinstance(d, UnsupportedDom):
        raise OutOfScopeError(f"{d.kind} domains are out of scope")
    raise DomainError(f"not a domain: {d!r}")


def atoms_of(d) -> list:
    """The atoms of an atomic domain, ascending."""
    if isinstance(d, BoolDom):
        return [False, True]
    if isinstance(d, IntDom):
        return list(range(d.lo, d.hi + 1))
    if isinstance(d, EnumDom):
        return [EnumV(d.name, i, a) for i, a in enumerate(d.atoms, 1)]
    if isinstance(d, UnnamedDom):
        return [UnnamedV(d.tag, i) for i in range(1, d.size + 1)]
    raise DomainError(f"not an atomic domain: {d}")


# Counts above this are reported as COUNT_CAP + 1; callers only compare
# counts against budgets, and exact counts of nested multisets can have
# billions of digits.
COUNT_CAP = 10 ** 30


def _cap(n: int) -> int:
    return min(n, COUNT_CAP + 1)


def _pow(base: int, exp: int) -> int:
    if base <= 1 or exp == 0:
        return base ** exp
    if exp * math.log2(base) > math.log2(COUNT_CAP) + 1:
        return COUNT_CAP + 1
    return _cap(base ** exp)


def count_values(d) -> int:
    """Number of values of ``d``, saturating at ``COUNT_CAP + 1``."""
    d = lower_domain(d)
    if isinstance(d, ATOMIC_DOMAINS):
        return len(atoms_of(d))
    if isinstance(d, TupleDom):
        return _cap(math.prod(count_values(c) for c in d.components))
    if isinstance(d, MatrixDom):
        cells = math.prod(len(atoms_of(i)) for i in d.indices)
        return _pow(count_values(d.element), cells)
    if isinstance(d, MSetDom):
        if d.bound is None:
            raise InfiniteDomainError(f"multiset without maxOccur bound: {d}")
        if d.functional:
            frm, to = d.element.components
            per_arg = count_values(to) + (0 if d.total else 1)
            return _pow(per_arg, count_values(frm))
        return _pow(d.bound + 1, count_values(d.element))
    raise DomainError(f"unexpected lowered domain {d!r}")


def enumerate_values(d) -> Iterator:
    """Yield every value of ``d`` once, in ascending universal order."""
    d = lower_domain(d)
    if isinstance(d, ATOMIC_DOMAINS):
        yield from atoms_of(d)
    elif isinstance(d, TupleDom):
        parts = [list(enumerate_values(c)) for c in d.components]
        for combo in itertools.product(*parts):
            yield TupleV(combo)
    elif isinstance(d, MatrixDom):
        index_lists = tuple(tuple(atoms_of(i)) for i in d.indices)
        n = math.prod(len(i) for i in index_lists)
        elems = list(enumerate_values(d.element))
        for combo in itertools.product(elems, repeat=n):
            yield MatrixV(index_lists, combo)
    elif isinstance(d, MSetDom):
        yield from _enumerate_msets(d)
    else:
        raise DomainError(f"unexpected lowered domain {d!r}")


def _enumerate_msets(d: MSetDom) -> Iterator[MSetV]:
    # Ascending multiset order is ascending lex order of negated occurrence
    # vectors, so each element's count runs from high to low.
    if d.bound is None:
        raise InfiniteDomainError(f"multiset without maxOccur bound: {d}")
    universe = list(enumerate_values(d.element))
    if d.functional:
        groups = [list(g) for _, g in itertools.groupby(universe, key=lambda t: t.items[0])]
        choices = [g + ([] if d.total else [None]) for g in groups]
        for combo in itertools.product(*choices):
            yield MSetV.trusted(tuple(p for p in combo if p is not None), d.kind)
        return
    for counts in itertools.product(range(d.bound, -1, -1), repeat=len(universe)):
        items = []
        for u, c in zip(universe, counts):
            items.extend([u] * c)
        yield MSetV.trusted(tuple(items), d.kind)


def check_value(d, v) -> bool:
    """True iff ``v`` inhabits the lowered form of ``d``, side-conditions included."""
    try:
        d = lower_domain(d)
    except DomainError:
        return False
    if isinstance(d, BoolDom):
        return isinstance(v, bool)
    if isinstance(d, IntDom):
        return isinstance(v, int) and not isinstance(v, bool) and d.lo <= v <= d.hi
    if isinstance(d, EnumDom):
        return isinstance(v, EnumV) and v.enum == d.name and 1 <= v.position <= len(d.atoms)
    if isinstance(d, UnnamedDom):
        return isinstance(v, UnnamedV) and v.tag == d.tag and 1 <= v.index <= d.size
    if isinstance(d, TupleDom):
        return (isinstance(v, TupleV) and len(v.items) == len(d.components)
                and all(check_value(c, x) for c, x in zip(d.components, v.items)))
    if isinstance(d, MatrixDom):
        if not isinstance(v, MatrixV):
            return False
        expected = tuple(tuple(atoms_of(i)) for i in d.indices)
        if v.index_lists != expected:
            return False
        if len(v.entries) != math.prod(len(i) for i in expected):
            return False
        return all(check_value(d.element, x) for x in v.entries)
    if isinstance(d, MSetDom):
        if not isinstance(v, MSetV):
            return False
        if not all(check_value(d.element, x) for x in v.items):
            return False
        if d.bound is not None:
            for _, grp in itertools.groupby(v.items):
                if len(list(grp)) > d.bound:
                    return False
        if d.functional:
            firsts = [p.items[0] for p in v.items]
            if len(set(firsts)) != len(firsts):
                return False
            if d.total and set(firsts) != set(enumerate_values(d.element.components[0])):
                return False
        return True
    return False
