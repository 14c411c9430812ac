"""Recursive-descent parser and printer for field element expressions.

Grammar (whitespace insignificant)::

    elem   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' uint)?
    base   := variable | uint | '(' elem ')'

The documented ``1/(elem)`` base is the special case ``1 / (elem)`` of the
division operator.  Printing only emits the ``*`` and ``1/(...)`` forms, so
printed expressions also parse under the narrower grammar.
"""

from __future__ import annotations

import re

from .poly import Polynomial

__all__ = ["ParseError", "parse_elem", "format_elem", "format_poly", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, cfg):
        self.cfg = cfg
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self):
        value = self.elem()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return value

    def elem(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1:]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", pos)
                value = value / rhs
        return value

    def factor(self):
        value = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be an unsigned integer", pos)
            value = value ** int(val)
        return value

    def base(self):
        kind, val, pos = self.take()
        if kind == "num":
            return self.cfg.const(int(val))
        if kind == "name":
            if val not in self.cfg.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.cfg.var(val)
        if val == "(":
            value = self.elem()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {val or 'end of input'!r}", pos)


def parse_elem(text, cfg):
    """Parse an expression into a reduced FieldElement of ``cfg``."""
    return _Parser(text, cfg).parse()


def _format_monomial(e, names):
    parts = []
    # outermost variable first
    for i in reversed(range(len(e))):
        if e[i] == 1:
            parts.append(names[i])
        elif e[i] > 1:
            parts.append(f"{names[i]}^{e[i]}")
    return "*".join(parts)


def format_poly(poly: Polynomial, names) -> str:
    if poly.is_zero():
        return "0"
    out = []
    for e, c in poly.sorted_terms():
        mono = _format_monomial(e, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return "+".join(out)


def format_elem(f) -> str:
    names = f.cfg.variables
    num = format_poly(f.num, names)
    if f.den.is_one():
        return num
    den = format_poly(f.den, names)
    if f.num.is_one():
        return f"1/({den})"
    if len(f.num.terms) > 1:
        num = f"({num})"
    return f"{num}*1/({den})"
