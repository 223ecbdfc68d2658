"""Permutations of unnamed-type atoms and direct-product elements.

Composition follows the right-action convention: ``compose(p, q)`` applies
``p`` first and then ``q``.
"""

from __future__ import annotations

import enum
import itertools
import re
from typing import Iterable, Iterator, Mapping, Sequence


class PermutationError(ValueError):
    pass


class GeneratorFlag(enum.Enum):
    CONSECUTIVE = "consecutive"
    ALL_PAIRS = "allpairs"
    ALL_PERMUTATIONS = "allpermutations"


class Mode(enum.Enum):
    INDEPENDENTLY = "independently"
    ALTOGETHER = "altogether"
    NONE = "none"


class Permutation:
    """A bijection on ``1..size`` for the atoms of one unnamed type.

    The inverse is built once at construction and linked back, so
    ``p.inverse.inverse is p``.
    """

    __slots__ = ("tag", "forward", "inverse")

    def __init__(self, tag: str, forward: Sequence[int]):
        forward = tuple(forward)
        n = len(forward)
        if sorted(forward) != list(range(1, n + 1)):
            raise PermutationError(f"not a permutation of 1..{n}: {forward}")
        self.tag = tag
        self.forward = forward
        back = [0] * n
        for i, img in enumerate(forward, 1):
            back[img - 1] = i
        inv = object.__new__(Permutation)
        inv.tag = tag
        inv.forward = tuple(back)
        inv.inverse = self
        self.inverse = inv

    @classmethod
    def identity(cls, tag: str, size: int) -> "Permutation":
        return cls(tag, range(1, size + 1))

    @classmethod
    def from_cycles(cls, tag: str, size: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        forward = list(range(1, size + 1))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for pt in cyc:
                if not 1 <= pt <= size:
                    raise PermutationError(f"point {pt} out of range 1..{size}")
                if pt in seen:
                    raise PermutationError(f"point {pt} repeated")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                forward[a - 1] = b
        return cls(tag, forward)

    @property
    def size(self) -> int:
        return len(self.forward)

    def __call__(self, i: int) -> int:
        return self.forward[i - 1]

    def preimage(self, i: int) -> int:
        return self.inverse.forward[i - 1]

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.forward, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for start in range(1, self.size + 1):
            if start in seen or self(start) == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return (isinstance(other, Permutation) and self.tag == other.tag
                and self.forward == other.forward)

    def __hash__(self):
        return hash((self.tag, self.forward))

    def __str__(self) -> str:
        return print_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({self.tag!r}, {print_cycles(self)})"

    def __reduce__(self):
        return (Permutation, (self.tag, self.forward))


_POINT = re.compile(r"(\d+)(?:_([A-Za-z][A-Za-z0-9_]*))?")


def parse_cycles(text: str, tag: str, size: int) -> Permutation:
    """Parse cycle notation such as ``(1 2)(3 4)`` or ``(1_T, 2_T)``."""
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation text")
    cycles, pos = [], 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        if s[pos] != "(":
            raise PermutationError(f"expected '(' at column {pos + 1} in {text!r}")
        close = s.find(")", pos)
        if close < 0:
            raise PermutationError(f"unclosed cycle in {text!r}")
        body = s[pos + 1:close].replace(",", " ").split()
        pts = []
        for tok in body:
            m = _POINT.fullmatch(tok)
            if not m:
                raise PermutationError(f"bad point {tok!r} in {text!r}")
            if m.group(2) is not None and m.group(2) != tag:
                raise PermutationError(f"point {tok} is not of type {tag}")
            pts.append(int(m.group(1)))
        if pts:
            cycles.append(pts)
        pos = close + 1
    return Permutation.from_cycles(tag, size, cycles)


def print_cycles(p: Permutation, tagged: bool = False) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    if tagged:
        return "".join("(" + ", ".join(f"{x}_{p.tag}" for x in c) + ")" for c in cycles)
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """x -> q(p(x)): apply p first, then q."""
    if p.tag != q.tag:
        raise PermutationError(f"cannot compose permutations of {p.tag} and {q.tag}")
    if p.size != q.size:
        raise PermutationError("permutation sizes differ")
    return Permutation(p.tag, [q(p(i)) for i in range(1, p.size + 1)])


def inverse(p: Permutation) -> Permutation:
    return p.inverse


def moved_points(p: Permutation) -> int:
    return sum(1 for i, img in enumerate(p.forward, 1) if img != i)


def transposition(tag: str, size: int, a: int, b: int) -> Permutation:
    return Permutation.from_cycles(tag, size, [[a, b]])


def generator_set(flag: GeneratorFlag, tag: str, size: int) -> list[Permutation]:
    if flag is GeneratorFlag.CONSECUTIVE:
        return [transposition(tag, size, j, j + 1) for j in range(1, size)]
    if flag is GeneratorFlag.ALL_PAIRS:
        return [transposition(tag, size, t, u)
                for t in range(1, size + 1) for u in range(t + 1, size + 1)]
    if flag is GeneratorFlag.ALL_PERMUTATIONS:
        ident = tuple(range(1, size + 1))
        return [Permutation(tag, f) for f in itertools.permutations(ident) if f != ident]
    raise ValueError(f"unknown generator flag {flag!r}")


class DirectProductElem:
    """One permutation per unnamed type; absent tags act as the identity."""

    __slots__ = ("_perms",)

    def __init__(self, perms: Iterable[Permutation] = ()):
        by_tag: dict[str, Permutation] = {}
        for p in perms:
            if p.tag in by_tag:
                raise PermutationError(f"two components for type {p.tag}")
            if not p.is_identity():
                by_tag[p.tag] = p
        self._perms = by_tag

    @property
    def components(self) -> tuple[Permutation, ...]:
        return tuple(self._perms.values())

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(self._perms)

    def get(self, tag: str) -> Permutation | None:
        return self._perms.get(tag)

    def as_dict(self) -> Mapping[str, Permutation]:
        return dict(self._perms)

    def inverse(self) -> "DirectProductElem":
        return DirectProductElem(p.inverse for p in self._perms.values())

    def is_identity(self) -> bool:
        return not self._perms

    def __eq__(self, other):
        return isinstance(other, DirectProductElem) and self._perms == other._perms

    def __hash__(self):
        return hash(frozenset(self._perms.items()))

    def __str__(self) -> str:
        if not self._perms:
            return "id"
        return " ".join(f"{t}:{print_cycles(p)}" for t, p in self._perms.items())

    __repr__ = __str__

    def __reduce__(self):
        return (DirectProductElem, (tuple(self._perms.values()),))


def dp_elements(mode: Mode, gens: Mapping[str, Sequence[Permutation]]) -> Iterator[DirectProductElem]:
    """Group elements used by the lex-leader constraints, in a fixed order.

    INDEPENDENTLY embeds each generator alone; ALTOGETHER takes the product of
    (generators + identity) over the types, skipping the all-identity element.
    """
    if mode is Mode.NONE:
        return
    if mode is Mode.INDEPENDENTLY:
        for tag, ps in gens.items():
            for p in ps:
                yield DirectProductElem([p])
        return
    if mode is Mode.ALTOGETHER:
        options = [[None, *ps] for ps in gens.values()]
        for combo in itertools.product(*options):
            if all(p is None for p in combo):
                continue
            yield DirectProductElem(p for p in combo if p is not None)
        return
    raise ValueError(f"unknown mode {mode!r}")
