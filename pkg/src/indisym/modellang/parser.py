"""Recursive-descent parser for ``.um`` model files.

    letting T be new type of size 3
    letting Colour be new type enum {red, green}
    letting n be 2
    letting Days be domain int(1..n)
    find M : matrix indexed by [T, T] of T
    such that
        forAll x, y : T . M[x, y] = M[y, x],
        ...

Comments start with ``$`` and run to the end of the line. Domain sizes are
evaluated at parse time, so lettings must precede their uses.
"""

from __future__ import annotations

import re

from ..values import (BoolDom, EnumDom, FunctionDom, IntDom, MatrixDom, MSetDom,
                      RelationDom, SetDom, TupleDom, UnnamedDom, UnsupportedDom)
from .ast import (Apply, Binary, BoolLit, Card, CollectionLit, Index, IntLit, Model,
                  Name, Pos, Quant, TupleLit, ToInt, Unary)


class ModelSyntaxError(Exception):
    def __init__(self, message: str, pos: Pos):
        super().__init__(f"{pos.line}:{pos.col}: {message}")
        self.message = message
        self.pos = pos


KEYWORDS = {
    "letting", "be", "new", "type", "of", "size", "enum", "domain", "find",
    "such", "that", "matrix", "indexed", "by", "bool", "int", "tuple", "set",
    "mset", "function", "relation", "total", "maxOccur", "forAll", "exists",
    "sum", "true", "false", "in", "toInt", "partition", "sequence", "record",
    "variant",
}
UNSUPPORTED = {"partition", "sequence", "record", "variant"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\$[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>-->|->|\.\.|/\\|\\/|!=|<=|>=|[-+*/%=<>!()\[\]{},:.|])
""", re.VERBOSE)


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: Pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def tokenize(text: str) -> list[Token]:
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ModelSyntaxError(f"unexpected character {text[pos]!r}",
                                   Pos(line, pos - line_start + 1))
        kind = m.lastgroup
        here = Pos(line, pos - line_start + 1)
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "name" and m.group() in KEYWORDS:
            toks.append(Token("kw", m.group(), here))
        elif kind not in ("ws", "comment"):
            toks.append(Token(kind, m.group(), here))
        pos = m.end()
    toks.append(Token("eof", "", Pos(line, pos - line_start + 1)))
    return toks


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.model = Model()
        self.names: set[str] = set()

    # -- token helpers

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind in ("kw", "sym")

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if not self.at(text):
            raise ModelSyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}",
                                   tok.pos)
        return self.next()

    def ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "name":
            raise ModelSyntaxError(f"expected a name, found {tok.text or 'end of input'!r}",
                                   tok.pos)
        return self.next()

    def declare(self, tok: Token):
        if tok.text in self.names:
            raise ModelSyntaxError(f"duplicate name {tok.text!r}", tok.pos)
        self.names.add(tok.text)

    # -- statements

    def parse(self) -> Model:
        while self.peek().kind != "eof":
            tok = self.peek()
            if self.accept("letting"):
                self.letting()
            elif self.accept("find"):
                self.find()
            elif self.accept("such"):
                self.expect("that")
                self.model.constraints.append(self.expr())
                while self.accept(","):
                    self.model.constraints.append(self.expr())
            else:
                raise ModelSyntaxError(f"expected a statement, found {tok.text!r}", tok.pos)
        return self.model

    def letting(self):
        name = self.ident()
        self.declare(name)
        self.expect("be")
        if self.accept("new"):
            self.expect("type")
            if self.accept("enum"):
                self.expect("{")
                atoms = [self.ident()]
                while self.accept(","):
                    atoms.append(self.ident())
                self.expect("}")
                for a in atoms:
                    self.declare(a)
                self.model.enums[name.text] = EnumDom(name.text, tuple(a.text for a in atoms))
                return
            self.expect("of")
            self.expect("size")
            size_tok = self.peek()
            size = self.const_int(self.expr())
            if size < 1:
                raise ModelSyntaxError("unnamed type size must be positive", size_tok.pos)
            self.model.unnamed[name.text] = UnnamedDom(name.text, size)
        elif self.accept("domain"):
            self.model.domains[name.text] = self.domain()
        else:
            self.model.lettings[name.text] = self.const_int(self.expr())

    def find(self):
        names = [self.ident()]
        while self.accept(","):
            names.append(self.ident())
        self.expect(":")
        dom = self.domain()
        for n in names:
            self.declare(n)
            self.model.finds.append((n.text, dom))

    def const_int(self, e) -> int:
        from .evaluate import EvalError, eval_expr

        try:
            v = eval_expr(e, self.model.lettings)
        except (EvalError, KeyError, TypeError) as exc:
            raise ModelSyntaxError(f"not a constant integer expression ({exc})",
                                   getattr(e, "pos", self.peek().pos)) from None
        if isinstance(v, bool) or not isinstance(v, int):
            raise ModelSyntaxError("expected an integer constant", getattr(e, "pos", self.peek().pos))
        return v

    # -- domains

    def domain(self):
        tok = self.peek()
        if self.accept("bool"):
            return BoolDom()
        if self.accept("int"):
            self.expect("(")
            lo = self.const_int(self.expr())
            self.expect("..")
            hi = self.const_int(self.expr())
            self.expect(")")
            if lo > hi:
                raise ModelSyntaxError(f"empty range int({lo}..{hi})", tok.pos)
            return IntDom(lo, hi)
        if self.accept("matrix"):
            self.expect("indexed")
            self.expect("by")
            self.expect("[")
            idx = [self.domain()]
            while self.accept(","):
                idx.append(self.domain())
            self.expect("]")
            self.expect("of")
            elem = self.domain()
            for d in idx:
                if not isinstance(d, (BoolDom, IntDom, EnumDom, UnnamedDom)):
                    raise ModelSyntaxError("matrix index domains must be atomic", tok.pos)
            return MatrixDom(tuple(idx), elem)
        if self.accept("tuple"):
            return self.tuple_domain()
        if self.at("("):
            return self.tuple_domain()
        if self.accept("set"):
            self.expect("of")
            return SetDom(self.domain())
        if self.accept("mset"):
            bound = None
            if self.accept("("):
                self.expect("maxOccur")
                bound = self.const_int(self.expr())
                self.expect(")")
                if bound < 1:
                    raise ModelSyntaxError("maxOccur must be positive", tok.pos)
            self.expect("of")
            return MSetDom(self.domain(), bound)
        if self.accept("function"):
            total = False
            if self.at("(") and self.peek(1).text == "total" and self.peek(2).text == ")":
                self.i += 3
                total = True
            frm = self.domain()
            self.expect("-->")
            return FunctionDom(frm, self.domain(), total)
        if self.accept("relation"):
            self.expect("of")
            self.expect("(")
            comps = [self.domain()]
            while self.accept("*"):
                comps.append(self.domain())
            self.expect(")")
            return RelationDom(tuple(comps))
        if tok.kind == "kw" and tok.text in UNSUPPORTED:
            self.next()
            self.skip_unsupported()
            return UnsupportedDom(tok.text, tok.pos)
        if tok.kind == "name":
            self.next()
            if tok.text in self.model.unnamed:
                return self.model.unnamed[tok.text]
            if tok.text in self.model.enums:
                return self.model.enums[tok.text]
            if tok.text in self.model.domains:
                return self.model.domains[tok.text]
            raise ModelSyntaxError(f"unknown domain {tok.text!r}", tok.pos)
        raise ModelSyntaxError(f"expected a domain, found {tok.text or 'end of input'!r}", tok.pos)

    def tuple_domain(self):
        self.expect("(")
        comps = [self.domain()]
        while self.accept(","):
            comps.append(self.domain())
        self.expect(")")
        return TupleDom(tuple(comps))

    def skip_unsupported(self):
        # Consume attributes/bodies of an out-of-scope constructor.
        if self.at("(") or self.at("{"):
            self.skip_balanced()
        if self.peek().text == "from" and self.peek().kind == "name":
            self.next()
            self.domain()
        elif self.accept("of"):
            self.domain()

    def skip_balanced(self):
        opener = self.next().text
        closer = {"(": ")", "{": "}", "[": "]"}[opener]
        depth = 1
        while depth:
            tok = self.next()
            if tok.kind == "eof":
                raise ModelSyntaxError(f"unbalanced {opener!r}", tok.pos)
            if tok.text == opener:
                depth += 1
            elif tok.text == closer:
                depth -= 1

    # -- expressions

    def expr(self):
        if self.peek().text in ("forAll", "exists", "sum") and self.peek().kind == "kw":
            return self.quant()
        return self.implies()

    def quant(self):
        tok = self.next()
        names = [self.ident().text]
        while self.accept(","):
            names.append(self.ident().text)
        self.expect(":")
        dom = self.domain()
        self.expect(".")
        return Quant(tok.text, tuple(names), dom, self.expr(), tok.pos)

    def implies(self):
        left = self.disj()
        if self.at("->"):
            tok = self.next()
            return Binary("->", left, self.implies_rhs(), tok.pos)
        return left

    def implies_rhs(self):
        if self.peek().text in ("forAll", "exists", "sum") and self.peek().kind == "kw":
            return self.quant()
        return self.implies()

    def disj(self):
        left = self.conj()
        while self.at("\\/"):
            tok = self.next()
            left = Binary("\\/", left, self.conj_or_quant(), tok.pos)
        return left

    def conj(self):
        left = self.comparison()
        while self.at("/\\"):
            tok = self.next()
            left = Binary("/\\", left, self.comparison_or_quant(), tok.pos)
        return left

    def conj_or_quant(self):
        if self.peek().text in ("forAll", "exists") and self.peek().kind == "kw":
            return self.quant()
        return self.conj()

    def comparison_or_quant(self):
        if self.peek().text in ("forAll", "exists") and self.peek().kind == "kw":
            return self.quant()
        return self.comparison()

    def comparison(self):
        left = self.additive()
        tok = self.peek()
        if tok.kind in ("sym", "kw") and tok.text in ("=", "!=", "<", "<=", ">", ">=", "in"):
            self.next()
            return Binary(tok.text, left, self.additive(), tok.pos)
        return left

    def additive(self):
        left = self.term()
        while self.peek().kind == "sym" and self.peek().text in ("+", "-"):
            tok = self.next()
            left = Binary(tok.text, left, self.term(), tok.pos)
        return left

    def term(self):
        left = self.unary()
        while self.peek().kind == "sym" and self.peek().text in ("*", "/", "%"):
            tok = self.next()
            left = Binary(tok.text, left, self.unary(), tok.pos)
        return left

    def unary(self):
        tok = self.peek()
        if tok.kind == "sym" and tok.text in ("-", "!"):
            self.next()
            return Unary(tok.text, self.unary(), tok.pos)
        return self.postfix()

    def postfix(self):
        e = self.primary()
        while True:
            tok = self.peek()
            if self.accept("["):
                idx = [self.expr()]
                while self.accept(","):
                    idx.append(self.expr())
                self.expect("]")
                e = Index(e, tuple(idx), tok.pos)
            elif self.at("(") and isinstance(e, Name):
                self.next()
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                e = Apply(e, tuple(args), tok.pos)
            else:
                return e

    def primary(self):
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return IntLit(int(tok.text), tok.pos)
        if self.accept("true"):
            return BoolLit(True, tok.pos)
        if self.accept("false"):
            return BoolLit(False, tok.pos)
        if tok.kind == "name":
            self.next()
            return Name(tok.text, tok.pos)
        if self.accept("("):
            if self.peek().text in ("forAll", "exists", "sum"):
                e = self.quant()
                self.expect(")")
                return e
            first = self.expr()
            if self.accept(")"):
                return first
            items = [first]
            while self.accept(","):
                items.append(self.expr())
            self.expect(")")
            return TupleLit(tuple(items), tok.pos)
        if self.accept("|"):
            e = self.expr()
            self.expect("|")
            return Card(e, tok.pos)
        if self.accept("toInt"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return ToInt(e, tok.pos)
        if tok.text in ("set", "mset") and tok.kind == "kw" and self.peek(1).text == "{":
            self.next()
            self.next()
            items = []
            if not self.accept("}"):
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
                self.expect("}")
            return CollectionLit(tok.text, tuple(items), tok.pos)
        if tok.text in ("forAll", "exists", "sum"):
            return self.quant()
        raise ModelSyntaxError(f"expected an expression, found {tok.text or 'end of input'!r}",
                               tok.pos)


def parse_model(text: str) -> Model:
    return Parser(text).parse()


def parse_expr(text: str, model: Model | None = None):
    """Parse a single expression, resolving domain names against ``model``."""
    p = Parser(text)
    if model is not None:
        p.model = model
    e = p.expr()
    if p.peek().kind != "eof":
        raise ModelSyntaxError(f"trailing input {p.peek().text!r}", p.peek().pos)
    return e
