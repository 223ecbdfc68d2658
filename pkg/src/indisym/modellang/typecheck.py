"""Static checks on parsed models.

Types are small tuples: ``("bool",)``, ``("int",)``, ``("enum", name)``,
``("unnamed", tag)``, ``("tuple", items)``, ``("matrix", indices, elem)``,
``("set", t)``, ``("mset", t)``, ``("function", a, b)``, ``("relation", items)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..values import (BoolDom, EnumDom, FunctionDom, IntDom, MatrixDom, MSetDom,
                      RelationDom, SetDom, TupleDom, UnnamedDom, UnsupportedDom)
from .ast import (NOPOS, Apply, Binary, BoolLit, Card, CollectionLit, Index, IntLit, Model,
                  Name, Pos, Quant, TupleLit, ToInt, Unary)

BOOL = ("bool",)
INT = ("int",)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    pos: Pos = NOPOS

    def __str__(self) -> str:
        return f"{self.pos}: {self.message}"


class _Fail(Exception):
    pass


def type_of_domain(d):
    if isinstance(d, BoolDom):
        return BOOL
    if isinstance(d, IntDom):
        return INT
    if isinstance(d, EnumDom):
        return ("enum", d.name)
    if isinstance(d, UnnamedDom):
        return ("unnamed", d.tag)
    if isinstance(d, TupleDom):
        return ("tuple", tuple(type_of_domain(c) for c in d.components))
    if isinstance(d, MatrixDom):
        return ("matrix", tuple(type_of_domain(i) for i in d.indices), type_of_domain(d.element))
    if isinstance(d, SetDom):
        return ("set", type_of_domain(d.element))
    if isinstance(d, MSetDom):
        return ("mset", type_of_domain(d.element))
    if isinstance(d, FunctionDom):
        return ("function", type_of_domain(d.frm), type_of_domain(d.to))
    if isinstance(d, RelationDom):
        return ("relation", tuple(type_of_domain(c) for c in d.components))
    raise ValueError(f"no type for {d!r}")


def show(t) -> str:
    kind = t[0]
    if kind in ("bool", "int"):
        return kind
    if kind in ("enum", "unnamed"):
        return t[1]
    if kind == "tuple":
        return "(" + ", ".join(map(show, t[1])) + ")"
    if kind == "matrix":
        return f"matrix indexed by [{', '.join(map(show, t[1]))}] of {show(t[2])}"
    if kind in ("set", "mset"):
        return f"{kind} of {show(t[1])}"
    if kind == "function":
        return f"function {show(t[1])} --> {show(t[2])}"
    if kind == "relation":
        return "relation of (" + " * ".join(map(show, t[1])) + ")"
    return str(t)


def _element_type(t):
    """Element type of a collection-like type, viewed as a multiset."""
    if t[0] in ("set", "mset"):
        return t[1]
    if t[0] == "function":
        return ("tuple", (t[1], t[2]))
    if t[0] == "relation":
        return ("tuple", t[1])
    return None


class Checker:
    def __init__(self, model: Model):
        self.model = model
        self.diags: list[Diagnostic] = []

    def error(self, msg: str, pos: Pos):
        self.diags.append(Diagnostic(msg, pos))
        raise _Fail

    def run(self) -> list[Diagnostic]:
        for name, dom in self.model.finds:
            self.check_domain(name, dom)
        env = {n: INT for n in self.model.lettings}
        for a, v in self.model.enum_atoms().items():
            env[a] = ("enum", v.enum)
        for n, d in self.model.finds:
            try:
                env[n] = type_of_domain(d)
            except ValueError:
                pass
        for c in self.model.constraints:
            try:
                t = self.type(c, env)
                if t != BOOL:
                    self.error(f"constraint must be boolean, got {show(t)}", c.pos)
            except _Fail:
                pass
        return self.diags

    def check_domain(self, name: str, d):
        if isinstance(d, UnsupportedDom):
            self.diags.append(Diagnostic(f"{name}: {d.kind} domains are out of scope",
                                         d.pos or NOPOS))
            return
        if isinstance(d, (TupleDom, RelationDom)):
            for c in d.components:
                self.check_domain(name, c)
        elif isinstance(d, MatrixDom):
            self.check_domain(name, d.element)
        elif isinstance(d, (SetDom, MSetDom)):
            self.check_domain(name, d.element)
        elif isinstance(d, FunctionDom):
            self.check_domain(name, d.frm)
            self.check_domain(name, d.to)
        if isinstance(d, UnnamedDom) and self.model.unnamed.get(d.tag) != d:
            self.diags.append(Diagnostic(f"{name}: undeclared unnamed type {d.tag}"))

    def type(self, e, env):
        if isinstance(e, IntLit):
            return INT
        if isinstance(e, BoolLit):
            return BOOL
        if isinstance(e, Name):
            if e.id not in env:
                self.error(f"unknown name {e.id!r}", e.pos)
            return env[e.id]
        if isinstance(e, Unary):
            t = self.type(e.operand, env)
            want = INT if e.op == "-" else BOOL
            if t != want:
                self.error(f"operator {e.op} expects {show(want)}, got {show(t)}", e.pos)
            return want
        if isinstance(e, Binary):
            return self.binary(e, env)
        if isinstance(e, Quant):
            if not isinstance(e.domain, (BoolDom, IntDom, EnumDom, UnnamedDom)):
                self.error("quantifiers range over atomic domains only", e.pos)
            local = dict(env)
            for n in e.names:
                local[n] = type_of_domain(e.domain)
            body = self.type(e.body, local)
            want = INT if e.kind == "sum" else BOOL
            if body != want:
                self.error(f"{e.kind} body must be {show(want)}, got {show(body)}", e.pos)
            return want
        if isinstance(e, Index):
            return self.index(e, env)
        if isinstance(e, Apply):
            ft = self.type(e.fn, env)
            if ft[0] != "function":
                self.error(f"cannot apply a value of type {show(ft)}", e.pos)
            args = [self.type(a, env) for a in e.args]
            at = args[0] if len(args) == 1 else ("tuple", tuple(args))
            if at != ft[1]:
                self.error(f"function expects {show(ft[1])}, got {show(at)}", e.pos)
            return ft[2]
        if isinstance(e, Card):
            t = self.type(e.operand, env)
            if _element_type(t) is None:
                self.error(f"no cardinality for {show(t)}", e.pos)
            return INT
        if isinstance(e, ToInt):
            if self.type(e.operand, env) != BOOL:
                self.error("toInt expects a boolean", e.pos)
            return INT
        if isinstance(e, TupleLit):
            return ("tuple", tuple(self.type(x, env) for x in e.items))
        if isinstance(e, CollectionLit):
            ts = {self.type(x, env) for x in e.items}
            if len(ts) > 1:
                self.error("collection elements have different types", e.pos)
            if not ts:
                self.error("cannot infer the type of an empty collection", e.pos)
            return (e.kind, ts.pop())
        self.error(f"unsupported expression {type(e).__name__}", getattr(e, "pos", NOPOS))

    def binary(self, e: Binary, env):
        op = e.op
        if op in ("/\\", "\\/", "->"):
            for side in (e.left, e.right):
                t = self.type(side, env)
                if t != BOOL:
                    self.error(f"operator {op} expects bool, got {show(t)}", e.pos)
            return BOOL
        if op == "in":
            x = self.type(e.left, env)
            s = self.type(e.right, env)
            el = _element_type(s)
            if el is None:
                self.error(f"membership test on {show(s)}", e.pos)
            if el != x:
                self.error(f"cannot test {show(x)} for membership in {show(s)}", e.pos)
            return BOOL
        a = self.type(e.left, env)
        b = self.type(e.right, env)
        if op in ("=", "!="):
            if a != b:
                self.error(f"cannot compare {show(a)} with {show(b)}", e.pos)
            return BOOL
        if op in ("<", "<=", ">", ">="):
            if a[0] == "unnamed" or b[0] == "unnamed":
                self.error("unnamed atoms admit only =, !=", e.pos)
            if a != b or a[0] not in ("int", "bool", "enum"):
                self.error(f"ordering comparison needs atoms of one type, got "
                           f"{show(a)} and {show(b)}", e.pos)
            return BOOL
        if a != INT or b != INT:
            self.error(f"operator {op} expects int operands, got {show(a)} and {show(b)}", e.pos)
        return INT

    def index(self, e: Index, env):
        t = self.type(e.target, env)
        if t[0] == "tuple":
            if len(e.indices) != 1 or not isinstance(e.indices[0], IntLit):
                self.error("tuple projection needs one integer literal", e.pos)
            k = e.indices[0].value
            if not 1 <= k <= len(t[1]):
                self.error(f"tuple index {k} out of range", e.pos)
            return t[1][k - 1]
        if t[0] != "matrix":
            self.error(f"cannot index a value of type {show(t)}", e.pos)
        if not 1 <= len(e.indices) <= len(t[1]):
            self.error(f"matrix takes 1 to {len(t[1])} indices, got {len(e.indices)}", e.pos)
        for i, want in zip(e.indices, t[1]):
            got = self.type(i, env)
            if got != want:
                self.error(f"index has type {show(got)} where {show(want)} "
                           f"{'atom ' if want[0] == 'unnamed' else ''}is required",
                           getattr(i, "pos", e.pos))
        if len(e.indices) < len(t[1]):
            # a slice over the remaining dimensions
            return ("matrix", t[1][len(e.indices):], t[2])
        return t[2]


def typecheck(model: Model) -> list[Diagnostic]:
    return Checker(model).run()
