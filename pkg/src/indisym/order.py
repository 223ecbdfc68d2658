"""The universal total order on values.

Atoms compare by their natural order (false before true, enum atoms by
declaration position, unnamed atoms by index). Tuples and matrices compare
lexicographically; matrices are read row-major. Multisets use the recursive
minimum-removal rule, under which the empty multiset is the maximum; this
coincides with lex order on negated occurrence vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .values import EnumV, MatrixV, MSetV, TupleV, UnnamedV

LT, EQ, GT = -1, 0, 1


class IncomparableError(TypeError):
    pass


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def cmp(a, b) -> int:
    """Compare two values of the same lowered domain; returns LT, EQ or GT."""
    if isinstance(a, bool) or isinstance(b, bool):
        if not (isinstance(a, bool) and isinstance(b, bool)):
            raise IncomparableError(f"cannot compare {a!r} with {b!r}")
        return _sign(int(a) - int(b))
    if isinstance(a, int) and isinstance(b, int):
        return _sign(a - b)
    if isinstance(a, EnumV) and isinstance(b, EnumV) and a.enum == b.enum:
        return _sign(a.position - b.position)
    if isinstance(a, UnnamedV) and isinstance(b, UnnamedV) and a.tag == b.tag:
        return _sign(a.index - b.index)
    if isinstance(a, TupleV) and isinstance(b, TupleV) and len(a.items) == len(b.items):
        return lex_cmp(a.items, b.items)
    if isinstance(a, MatrixV) and isinstance(b, MatrixV) and a.index_lists == b.index_lists:
        return lex_cmp(a.entries, b.entries)
    if isinstance(a, MSetV) and isinstance(b, MSetV):
        return _mset_cmp(a.items, b.items)
    raise IncomparableError(f"cannot compare {a!r} with {b!r}")


def _mset_cmp(xs: tuple, ys: tuple) -> int:
    # xs, ys ascending. Repeatedly compare minima and remove them; an
    # exhausted right-hand side means left <= right.
    i = 0
    while True:
        if i == len(ys):
            return EQ if i == len(xs) else LT
        if i == len(xs):
            return GT
        c = cmp(xs[i], ys[i])
        if c != EQ:
            return c
        i += 1


def lex_cmp(xs: Sequence, ys: Sequence) -> int:
    if len(xs) != len(ys):
        raise ValueError(f"lex comparison of lengths {len(xs)} and {len(ys)}")
    for x, y in zip(xs, ys):
        c = cmp(x, y)
        if c != EQ:
            return c
    return EQ


def leq(a, b) -> bool:
    return cmp(a, b) != GT


class _Top:
    """Sorts after every key; terminates multiset keys."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Top)

    def __gt__(self, other):
        return not isinstance(other, _Top)

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return isinstance(other, _Top)

    def __hash__(self):
        return 0


_TOP = _Top()


def sort_key(v):
    """A Python sort key consistent with ``cmp`` within one domain."""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, EnumV):
        return v.position
    if isinstance(v, UnnamedV):
        return v.index
    if isinstance(v, TupleV):
        return tuple(sort_key(x) for x in v.items)
    if isinstance(v, MatrixV):
        return tuple(sort_key(x) for x in v.entries)
    if isinstance(v, MSetV):
        # A proper prefix is larger, hence the trailing top element.
        return tuple(sorted(sort_key(x) for x in v.items)) + (_TOP,)
    raise TypeError(f"no ordering for {v!r}")


@dataclass(frozen=True)
class OccurrenceVector:
    universe: tuple
    entries: tuple[int, ...]


def occurrence_vector(m: MSetV, universe: Sequence) -> OccurrenceVector:
    """Negated multiplicities of each universe element, in universe order."""
    universe = tuple(universe)
    for u, w in zip(universe, universe[1:]):
        if cmp(u, w) != LT:
            raise ValueError("universe must be strictly ascending")
    slot = {u: k for k, u in enumerate(universe)}
    entries = [0] * len(universe)
    for x in m.items:
        if x not in slot:
            raise ValueError(f"element {x!r} outside the universe")
        entries[slot[x]] -= 1
    return OccurrenceVector(universe, tuple(entries))
