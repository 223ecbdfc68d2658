"""Finite-model evaluation of expressions.

Environments map names to values. During search, decision variables are
bound to ``Lazy`` views over a partial flat assignment instead; reading an
unassigned cell raises from inside the view and aborts the evaluation.
"""

from __future__ import annotations

from typing import Mapping

from ..values import (BoolDom, EnumDom, IntDom, MatrixV, MSetV, TupleV, UnnamedDom,
                      atoms_of)
from .ast import (Apply, Binary, BoolLit, Card, CollectionLit, Index, IntLit, Name, Quant,
                  TupleLit, ToInt, Unary)


class EvalError(Exception):
    pass


class Lazy:
    """A decision variable (or part of one) backed by flat cells."""

    def decode(self, cells):
        raise NotImplementedError

    def at(self, index: tuple, cells):
        raise EvalError(f"{type(self).__name__} cannot be indexed")

    def apply(self, arg, cells):
        raise EvalError(f"{type(self).__name__} cannot be applied")

    def contains(self, x, cells) -> bool:
        raise EvalError(f"{type(self).__name__} has no members")

    def card(self, cells) -> int:
        raise EvalError(f"{type(self).__name__} has no cardinality")


def quant_values(dom) -> list:
    if isinstance(dom, (BoolDom, IntDom, EnumDom, UnnamedDom)):
        return atoms_of(dom)
    raise EvalError(f"cannot quantify over {dom}")


def eval_expr(e, env: Mapping, cells=None):
    """Evaluate ``e``; the result is a plain value, never a lazy view."""
    v = _ev(e, env, cells)
    if isinstance(v, Lazy):
        return v.decode(cells)
    return v


def _force(v, cells):
    return v.decode(cells) if isinstance(v, Lazy) else v


def _int(v):
    if isinstance(v, bool) or not isinstance(v, int):
        raise EvalError(f"expected an integer, got {v!r}")
    return v


def _bool(v):
    if not isinstance(v, bool):
        raise EvalError(f"expected a boolean, got {v!r}")
    return v


def _ev(e, env, cells):
    if isinstance(e, IntLit):
        return e.value
    if isinstance(e, BoolLit):
        return e.value
    if isinstance(e, Name):
        try:
            return env[e.id]
        except KeyError:
            raise EvalError(f"unbound name {e.id!r}") from None
    if isinstance(e, Binary):
        return _binary(e, env, cells)
    if isinstance(e, Unary):
        v = _force(_ev(e.operand, env, cells), cells)
        return -_int(v) if e.op == "-" else not _bool(v)
    if isinstance(e, Quant):
        return _quant(e, env, cells)
    if isinstance(e, Index):
        target = _ev(e.target, env, cells)
        idx = tuple(_force(_ev(i, env, cells), cells) for i in e.indices)
        return _index(target, idx, cells)
    if isinstance(e, Apply):
        fn = _ev(e.fn, env, cells)
        args = [_force(_ev(a, env, cells), cells) for a in e.args]
        arg = args[0] if len(args) == 1 else TupleV(tuple(args))
        return _apply(fn, arg, cells)
    if isinstance(e, Card):
        v = _ev(e.operand, env, cells)
        if isinstance(v, Lazy):
            return v.card(cells)
        if isinstance(v, MSetV):
            return len(v.items)
        raise EvalError(f"no cardinality for {v!r}")
    if isinstance(e, ToInt):
        return int(_bool(_force(_ev(e.operand, env, cells), cells)))
    if isinstance(e, TupleLit):
        return TupleV(tuple(_force(_ev(x, env, cells), cells) for x in e.items))
    if isinstance(e, CollectionLit):
        items = [_force(_ev(x, env, cells), cells) for x in e.items]
        if e.kind == "set":
            items = list(dict.fromkeys(items))
        return MSetV(tuple(items), kind=e.kind)
    raise EvalError(f"cannot evaluate {e!r}")


def _binary(e: Binary, env, cells):
    op = e.op
    if op == "/\\":
        return _bool(_force(_ev(e.left, env, cells), cells)) and \
            _bool(_force(_ev(e.right, env, cells), cells))
    if op == "\\/":
        return _bool(_force(_ev(e.left, env, cells), cells)) or \
            _bool(_force(_ev(e.right, env, cells), cells))
    if op == "->":
        return (not _bool(_force(_ev(e.left, env, cells), cells))) or \
            _bool(_force(_ev(e.right, env, cells), cells))
    if op == "in":
        x = _force(_ev(e.left, env, cells), cells)
        s = _ev(e.right, env, cells)
        if isinstance(s, Lazy):
            return s.contains(x, cells)
        if isinstance(s, MSetV):
            return x in s.items
        raise EvalError(f"membership test on {s!r}")
    a = _force(_ev(e.left, env, cells), cells)
    b = _force(_ev(e.right, env, cells), cells)
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if op in ("<", "<=", ">", ">="):
        from ..order import cmp

        c = cmp(a, b)
        return {"<": c < 0, "<=": c <= 0, ">": c > 0, ">=": c >= 0}[op]
    a, b = _int(a), _int(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise EvalError("division by zero")
        return a // b
    if op == "%":
        if b == 0:
            raise EvalError("division by zero")
        return a % b
    raise EvalError(f"unknown operator {op!r}")


def _quant(e: Quant, env, cells):
    values = quant_values(e.domain)
    local = dict(env)

    def bindings(k):
        if k == len(e.names):
            yield
            return
        for v in values:
            local[e.names[k]] = v
            yield from bindings(k + 1)

    if e.kind == "forAll":
        for _ in bindings(0):
            if not _bool(_force(_ev(e.body, local, cells), cells)):
                return False
        return True
    if e.kind == "exists":
        for _ in bindings(0):
            if _bool(_force(_ev(e.body, local, cells), cells)):
                return True
        return False
    total = 0
    for _ in bindings(0):
        total += _int(_force(_ev(e.body, local, cells), cells))
    return total


def _index(target, idx: tuple, cells):
    if isinstance(target, Lazy):
        return target.at(idx, cells)
    if isinstance(target, MatrixV):
        try:
            if len(idx) < len(target.index_lists):
                return target.slice(idx)
            return target[idx]
        except IndexError as exc:
            raise EvalError(str(exc)) from None
    if isinstance(target, TupleV):
        if len(idx) != 1:
            raise EvalError("tuple projection takes one index")
        k = _int(idx[0])
        if not 1 <= k <= len(target.items):
            raise EvalError(f"tuple index {k} out of range")
        return target.items[k - 1]
    raise EvalError(f"cannot index {target!r}")


def _apply(fn, arg, cells):
    if isinstance(fn, Lazy):
        return fn.apply(arg, cells)
    if isinstance(fn, MSetV) and fn.kind == "function":
        for pair in fn.items:
            if pair.items[0] == arg:
                return pair.items[1]
        raise EvalError(f"function undefined at {arg}")
    raise EvalError(f"cannot apply {fn!r}")
