"""Canonical literal syntax for values.

    true  false  42  -3  2_T  red
    (a, b)                      tuple
    [a, b, c]                   matrix indexed by int(1..3)
    [a, b; index:T]             matrix indexed by the unnamed type T
    [[a, b], [c, d]; index:T, int(1..2)]
    mset{a, a, b}  set{a, b}  function{1_T-->4, 2_T-->5}  relation{(1_T, 2_U)}
"""

from __future__ import annotations

import re
from typing import Mapping

from .values import EnumV, MatrixV, MSetV, TupleV, UnnamedV


class LiteralError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>-->)
  | (?P<range>\.\.)
  | (?P<atom>-?\d+(?:_[A-Za-z][A-Za-z0-9_]*)?)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<sym>[()\[\]{},;:])
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", pos))
    return out


class _Parser:
    def __init__(self, text: str, enums: Mapping[str, EnumV] | None,
                 enum_domains: Mapping[str, tuple] | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.enums = dict(enums or {})
        if enum_domains is None:
            grouped: dict[str, list] = {}
            for v in self.enums.values():
                grouped.setdefault(v.enum, []).append(v)
            enum_domains = {n: tuple(sorted(vs, key=lambda v: v.position))
                            for n, vs in grouped.items()}
        self.enum_domains = dict(enum_domains)

    def peek(self, k: int = 0):
        return self.toks[self.i + k]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value:
            raise LiteralError(f"expected {value!r} at column {tok[2] + 1}, found {tok[1]!r}")
        return tok

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value:
            self.i += 1
            return True
        return False

    def parse(self):
        v = self.value()
        tok = self.peek()
        if tok[0] != "eof":
            raise LiteralError(f"trailing input at column {tok[2] + 1}")
        return v

    def value(self):
        kind, text, pos = self.peek()
        if kind == "atom":
            self.next()
            if "_" in text:
                num, tag = text.split("_", 1)
                if int(num) < 1:
                    raise LiteralError(f"unnamed atom index must be positive: {text}")
                return UnnamedV(tag, int(num))
            return int(text)
        if kind == "name":
            if text in ("mset", "set", "function", "relation") and self.peek(1)[1] == "{":
                return self.collection(text)
            self.next()
            if text == "true":
                return True
            if text == "false":
                return False
            if text in self.enums:
                return self.enums[text]
            raise LiteralError(f"unknown name {text!r} at column {pos + 1}")
        if text == "(":
            self.next()
            items = [self.value()]
            if self.accept(")"):
                return items[0]
            while self.accept(","):
                if self.peek()[1] == ")":
                    break
                items.append(self.value())
            self.expect(")")
            return TupleV(tuple(items))
        if text == "[":
            return self.matrix()
        raise LiteralError(f"unexpected {text or 'end of input'!r} at column {pos + 1}")

    def items_until(self, close: str, item) -> list:
        out = []
        if self.accept(close):
            return out
        out.append(item())
        while self.accept(","):
            out.append(item())
        self.expect(close)
        return out

    def collection(self, kind: str) -> MSetV:
        self.next()
        self.expect("{")
        if kind == "function":
            def pair():
                a = self.value()
                self.expect("-->")
                return TupleV((a, self.value()))
            items = self.items_until("}", pair)
        else:
            items = self.items_until("}", self.value)
        if kind in ("set", "relation"):
            items = list(dict.fromkeys(items))
        return MSetV(tuple(items), kind=kind)

    def raw_matrix(self) -> list:
        # Nested bracket structure; annotation handled by the caller.
        self.expect("[")
        items = []
        if self.peek()[1] in ("]", ";"):
            return items
        items.append(self.value_or_nested())
        while self.accept(","):
            items.append(self.value_or_nested())
        return items

    def value_or_nested(self):
        if self.peek()[1] == "[":
            inner = self.raw_matrix()
            if self.peek()[1] == ";":
                return self._finish_matrix(inner)
            self.expect("]")
            return ("nested", inner)
        return self.value()

    def matrix(self) -> MatrixV:
        items = self.raw_matrix()
        return self._finish_matrix(items)

    def _finish_matrix(self, items: list) -> MatrixV:
        specs = []
        if self.accept(";"):
            tok = self.next()
            if tok[1] != "index":
                raise LiteralError(f"expected 'index' at column {tok[2] + 1}")
            self.expect(":")
            specs.append(self.index_spec())
            while self.accept(","):
                specs.append(self.index_spec())
        self.expect("]")
        if not specs:
            return _plain_matrix(items)
        shape, flat = _unnest(items, len(specs))
        index_lists = []
        for spec, n in zip(specs, shape):
            index_lists.append(self.resolve_spec(spec, n))
        return MatrixV(tuple(index_lists), tuple(flat))

    def index_spec(self):
        kind, text, pos = self.next()
        if text == "int":
            self.expect("(")
            lo = int(self.next()[1])
            self.expect("..")
            hi = int(self.next()[1])
            self.expect(")")
            return ("int", lo, hi)
        if text == "bool":
            return ("bool",)
        if kind == "name":
            return ("name", text)
        raise LiteralError(f"bad index specification at column {pos + 1}")

    def resolve_spec(self, spec, n: int) -> tuple:
        if spec[0] == "int":
            atoms = tuple(range(spec[1], spec[2] + 1))
        elif spec[0] == "bool":
            atoms = (False, True)
        elif spec[1] in self.enum_domains:
            atoms = self.enum_domains[spec[1]]
        else:
            atoms = tuple(UnnamedV(spec[1], i) for i in range(1, n + 1))
        if len(atoms) != n:
            raise LiteralError(f"index {spec} has {len(atoms)} atoms but {n} entries were given")
        return atoms


def _plain_matrix(items: list) -> MatrixV:
    entries = tuple(_close(x) for x in items)
    return MatrixV((tuple(range(1, len(entries) + 1)),), entries)


def _close(x):
    if isinstance(x, tuple) and len(x) == 2 and x[0] == "nested":
        return _plain_matrix(x[1])
    return x


def _unnest(items: list, depth: int):
    if depth == 1:
        return [len(items)], [_close(x) for x in items]
    rows = []
    for x in items:
        if not (isinstance(x, tuple) and len(x) == 2 and x[0] == "nested"):
            raise LiteralError("matrix nesting does not match the number of index domains")
        rows.append(_unnest(x[1], depth - 1))
    if not rows:
        raise LiteralError("empty multi-dimensional matrix")
    inner_shape = rows[0][0]
    if any(r[0] != inner_shape for r in rows):
        raise LiteralError("ragged matrix literal")
    return [len(items), *inner_shape], [e for r in rows for e in r[1]]


def parse_value(text: str, enums: Mapping[str, EnumV] | None = None,
                enum_domains: Mapping[str, tuple] | None = None):
    """Parse a value literal.

    ``enums`` maps enum atom labels to values (``Model.enum_atoms()``).
    ``enum_domains`` maps enum names to their atoms for matrix index
    annotations; by default it is derived from ``enums``.
    """
    return _Parser(text, enums, enum_domains).parse()


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (UnnamedV, EnumV)):
        return str(v)
    if isinstance(v, TupleV):
        if len(v.items) == 1:
            return f"({format_value(v.items[0])},)"
        return "(" + ", ".join(format_value(x) for x in v.items) + ")"
    if isinstance(v, MatrixV):
        return _format_matrix(v)
    if isinstance(v, MSetV):
        if v.kind == "function":
            body = ", ".join(f"{format_value(p.items[0])}-->{format_value(p.items[1])}"
                             for p in v.items)
        else:
            body = ", ".join(format_value(x) for x in v.items)
        return f"{v.kind}{{{body}}}"
    raise TypeError(f"cannot format {v!r}")


def _format_entry(x) -> str:
    # A matrix-valued entry always carries its annotation, otherwise it would
    # read back as an extra dimension of the enclosing matrix.
    if isinstance(x, MatrixV):
        return _format_matrix(x, annotate=True)
    return format_value(x)


def _format_matrix(m: MatrixV, annotate: bool = False) -> str:
    shape = m.shape

    def nest(entries, dims):
        if len(dims) == 1:
            return "[" + ", ".join(_format_entry(x) for x in entries) + "]"
        step = len(entries) // dims[0]
        return "[" + ", ".join(nest(entries[k * step:(k + 1) * step], dims[1:])
                               for k in range(dims[0])) + "]"

    specs = [_index_spec_text(idx) for idx in m.index_lists]
    if len(shape) == 1 and specs[0] is None and not annotate:
        return nest(m.entries, shape)
    body = nest(m.entries, shape)
    ann = ", ".join(s if s is not None else f"int(1..{n})" for s, n in zip(specs, shape))
    return body[:-1] + f"; index:{ann}]"


def _index_spec_text(idx: tuple) -> str | None:
    """None means the default int(1..n)."""
    if not idx:
        return None
    first = idx[0]
    if isinstance(first, UnnamedV):
        return first.tag
    if isinstance(first, EnumV):
        return first.enum
    if isinstance(first, bool):
        return "bool"
    if isinstance(first, int):
        if first == 1:
            return None
        return f"int({first}..{idx[-1]})"
    raise TypeError(f"bad index atom {first!r}")
