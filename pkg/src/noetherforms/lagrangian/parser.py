"""Recursive-descent parser for the Lagrangian DSL.

Grammar::

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := rational '*' wedge | rational | wedge
    wedge  := unary ('^' unary)*
    unary  := 'd' unary | 'star' '(' expr ')' | 'kappa' '(' expr ')'
            | 'sum' '(' INDEX (',' INDEX)* ';' expr ')'
            | NAME | NAME '[' INDEX ']' | NAME '_' '[' INDEX ']' | '(' expr ')'

``d``, ``star`` and ``kappa`` bind tighter than ``^``; wedge is left-associative.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError, UnknownField
from .ast import Const, Constitutive, Contract, ExteriorD, FieldRef, Hodge, ScalarMul, Sum, Wedge

KEYWORDS = frozenset({"d", "star", "kappa", "sum"})

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        for nl in re.finditer("\n", text[pos:start]):
            line += 1
            line_start = pos + nl.end()
        col = start - line_start + 1
        if m.group(1):
            tokens.append(("num", m.group(1), (line, col)))
        elif m.group(2):
            tokens.append(("name", m.group(2), (line, col)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],;_":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(("sym", ch, (line, col)))
        pos = m.end()
    lines = text.split("\n")
    tokens.append(("eof", "", (len(lines), len(lines[-1]) + 1)))
    return tokens


class _Parser:
    def __init__(self, text: str, known):
        self.toks = _tokenize(text)
        self.i = 0
        self.known = None if known is None else set(known)

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, kind, value=None, k: int = 0) -> bool:
        t = self.peek(k)
        return t[0] == kind and (value is None or t[1] == value)

    def expect(self, kind, value=None):
        t = self.peek()
        if not self.at(kind, value):
            want = repr(value) if value else kind
            got = repr(t[1]) if t[0] != "eof" else "end of input"
            raise ParseError(f"expected {want}, found {got}", *t[2])
        return self.next()

    def error(self, msg):
        raise ParseError(msg, *self.peek()[2])

    # -- grammar -------------------------------------------------------------
    def parse(self):
        if self.at("eof"):
            self.error("empty expression")
        node = self.expr()
        if not self.at("eof"):
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        span = self.peek()[2]
        sign = 1
        if self.at("sym", "-") or self.at("sym", "+"):
            sign = -1 if self.next()[1] == "-" else 1
        terms = [self.signed(self.term(), sign)]
        while self.at("sym", "+") or self.at("sym", "-"):
            sign = -1 if self.next()[1] == "-" else 1
            terms.append(self.signed(self.term(), sign))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms), span=span)

    @staticmethod
    def signed(node, sign):
        if sign == 1:
            return node
        if isinstance(node, Const):
            return Const(-node.value, span=node.span)
        if isinstance(node, ScalarMul):
            return ScalarMul(-node.coef, node.child, span=node.span)
        return ScalarMul(Fraction(-1), node, span=node.span)

    def term(self):
        if self.at("num"):
            span = self.peek()[2]
            c = self.rational()
            if self.at("sym", "*"):
                self.next()
                return ScalarMul(c, self.wedge(), span=span)
            return Const(c, span=span)
        return self.wedge()

    def rational(self):
        num = int(self.expect("num")[1])
        if self.at("sym", "/"):
            self.next()
            den = int(self.expect("num")[1])
            if den == 0:
                raise ParseError("zero denominator", *self.toks[self.i - 1][2])
            return Fraction(num, den)
        return Fraction(num)

    def wedge(self):
        left = self.unary()
        while self.at("sym", "^"):
            span = self.next()[2]
            left = Wedge(left, self.unary(), span=span)
        return left

    def unary(self):
        t = self.peek()
        kind, val, span = t
        if kind == "name" and val == "d":
            self.next()
            return ExteriorD(self.unary(), span=span)
        if kind == "name" and val in ("star", "kappa"):
            self.next()
            self.expect("sym", "(")
            inner = self.expr()
            self.expect("sym", ")")
            return (Hodge if val == "star" else Constitutive)(inner, span=span)
        if kind == "name" and val == "sum":
            self.next()
            self.expect("sym", "(")
            idx = [self.index_name()]
            while self.at("sym", ","):
                self.next()
                idx.append(self.index_name())
            self.expect("sym", ";")
            inner = self.expr()
            self.expect("sym", ")")
            return Contract(tuple(idx), inner, span=span)
        if kind == "name":
            return self.field()
        if kind == "sym" and val == "(":
            self.next()
            inner = self.expr()
            self.expect("sym", ")")
            return inner
        if kind == "eof":
            self.error("unexpected end of input")
        self.error(f"unexpected {val!r}")

    def index_name(self):
        t = self.expect("name")
        if t[1] in KEYWORDS:
            raise ParseError(f"{t[1]!r} cannot be an index name", *t[2])
        return t[1]

    def field(self):
        name, span = self.next()[1:]
        if self.known is not None and name not in self.known:
            raise UnknownField(name)
        if self.at("sym", "_") and self.at("sym", "[", 1):
            self.next()
            self.next()
            idx = self.index_name()
            self.expect("sym", "]")
            return FieldRef(name, idx, True, span=span)
        if self.at("sym", "["):
            self.next()
            idx = self.index_name()
            self.expect("sym", "]")
            return FieldRef(name, idx, False, span=span)
        return FieldRef(name, span=span)


def parse_lagrangian(text: str, fields=None):
    """Parse DSL source into an expression tree.

    ``fields`` optionally lists the declared field names (names or
    :class:`FieldDecl` objects); references to anything else raise
    :class:`UnknownField`.
    """
    if fields is not None:
        fields = [getattr(f, "name", f) for f in fields]
    return _Parser(text, fields).parse()
