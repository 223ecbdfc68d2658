"""Expression trees and the model container."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..values import EnumDom, EnumV, UnnamedDom


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NOPOS = Pos(0, 0)


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Name(Expr):
    id: str
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "-", "!"
    operand: Expr
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Quant(Expr):
    kind: str  # "forAll", "exists", "sum"
    names: tuple[str, ...]
    domain: object
    body: Expr
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Index(Expr):
    target: Expr
    indices: tuple[Expr, ...]
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Apply(Expr):
    fn: Expr
    args: tuple[Expr, ...]
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class Card(Expr):
    operand: Expr
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class ToInt(Expr):
    operand: Expr
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class TupleLit(Expr):
    items: tuple[Expr, ...]
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass(frozen=True)
class CollectionLit(Expr):
    kind: str  # "set", "mset"
    items: tuple[Expr, ...]
    pos: Pos = field(default=NOPOS, compare=False)


@dataclass
class Model:
    unnamed: dict[str, UnnamedDom] = field(default_factory=dict)
    enums: dict[str, EnumDom] = field(default_factory=dict)
    lettings: dict[str, int] = field(default_factory=dict)
    domains: dict[str, object] = field(default_factory=dict)
    finds: list[tuple[str, object]] = field(default_factory=list)
    constraints: list[Expr] = field(default_factory=list)

    @property
    def tags(self) -> dict[str, int]:
        """Unnamed type sizes in declaration order."""
        return {t: d.size for t, d in self.unnamed.items()}

    @property
    def var_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.finds)

    def enum_atoms(self) -> dict[str, EnumV]:
        out = {}
        for d in self.enums.values():
            for i, a in enumerate(d.atoms, 1):
                out[a] = EnumV(d.name, i, a)
        return out

    def base_env(self) -> dict:
        env: dict = dict(self.lettings)
        env.update(self.enum_atoms())
        return env
