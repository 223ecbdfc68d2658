"""Print models back to source text (fully parenthesised expressions)."""

from __future__ import annotations

from ..values import (BoolDom, EnumDom, FunctionDom, IntDom, MatrixDom, MSetDom,
                      RelationDom, SetDom, TupleDom, UnnamedDom, UnsupportedDom)
from .ast import (Apply, Binary, BoolLit, Card, CollectionLit, Index, IntLit, Model, Name,
                  Quant, TupleLit, ToInt, Unary)


def format_domain(d) -> str:
    if isinstance(d, BoolDom):
        return "bool"
    if isinstance(d, IntDom):
        return f"int({d.lo}..{d.hi})"
    if isinstance(d, EnumDom):
        return d.name
    if isinstance(d, UnnamedDom):
        return d.tag
    if isinstance(d, TupleDom):
        return "tuple (" + ", ".join(format_domain(c) for c in d.components) + ")"
    if isinstance(d, MatrixDom):
        idx = ", ".join(format_domain(i) for i in d.indices)
        return f"matrix indexed by [{idx}] of {format_domain(d.element)}"
    if isinstance(d, SetDom):
        return f"set of {format_domain(d.element)}"
    if isinstance(d, MSetDom):
        occ = "" if d.bound is None else f" (maxOccur {d.bound})"
        return f"mset{occ} of {format_domain(d.element)}"
    if isinstance(d, FunctionDom):
        attr = " (total)" if d.total else ""
        return f"function{attr} {format_domain(d.frm)} --> {format_domain(d.to)}"
    if isinstance(d, RelationDom):
        return "relation of (" + " * ".join(format_domain(c) for c in d.components) + ")"
    if isinstance(d, UnsupportedDom):
        return f"{d.kind} of bool"
    raise TypeError(f"cannot format domain {d!r}")


def format_expr(e) -> str:
    if isinstance(e, IntLit):
        return str(e.value) if e.value >= 0 else f"(-{-e.value})"
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Unary):
        return f"({e.op}{format_expr(e.operand)})"
    if isinstance(e, Binary):
        return f"({format_expr(e.left)} {e.op} {format_expr(e.right)})"
    if isinstance(e, Quant):
        return (f"({e.kind} {', '.join(e.names)} : {format_domain(e.domain)} . "
                f"{format_expr(e.body)})")
    if isinstance(e, Index):
        return f"{format_expr(e.target)}[{', '.join(map(format_expr, e.indices))}]"
    if isinstance(e, Apply):
        return f"{format_expr(e.fn)}({', '.join(map(format_expr, e.args))})"
    if isinstance(e, Card):
        return f"|{format_expr(e.operand)}|"
    if isinstance(e, ToInt):
        return f"toInt({format_expr(e.operand)})"
    if isinstance(e, TupleLit):
        return "(" + ", ".join(map(format_expr, e.items)) + ")"
    if isinstance(e, CollectionLit):
        return f"{e.kind}{{" + ", ".join(map(format_expr, e.items)) + "}"
    raise TypeError(f"cannot format expression {e!r}")


def format_model(m: Model) -> str:
    lines = []
    for t, d in m.unnamed.items():
        lines.append(f"letting {t} be new type of size {d.size}")
    for name, d in m.enums.items():
        lines.append(f"letting {name} be new type enum {{{', '.join(d.atoms)}}}")
    for name, v in m.lettings.items():
        lines.append(f"letting {name} be {v}" if v >= 0 else f"letting {name} be -{-v}")
    for name, d in m.domains.items():
        lines.append(f"letting {name} be domain {format_domain(d)}")
    for name, d in m.finds:
        lines.append(f"find {name} : {format_domain(d)}")
    if m.constraints:
        lines.append("such that")
        body = [f"    {format_expr(c)}" for c in m.constraints]
        lines.append(",\n".join(body))
    return "\n".join(lines) + "\n"
