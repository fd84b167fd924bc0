"""Recursive-descent parser for polynomial expressions in two variables.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power ('*' power)*
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'

A ``/`` is only accepted between two integer literals, so every coefficient
is an exact rational and implicit multiplication is rejected.
"""

from __future__ import annotations

import re

from flint import fmpq

from .exactalg import BPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            at = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[at]!r}", at)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        val = m.group(m.lastindex)
        out.append((kind, "^" if val == "**" else val, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, vars):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)
        self.gens = BPoly.gens(vars=("x", "y"))

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, val=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (val and tok[1] != val):
            want = repr(val) if val else {"num": "an integer"}.get(kind, kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.power()
        if self.peek()[0] in ("num", "name") or self.peek()[1] == "(":
            raise ParseError("implicit multiplication is not allowed", self.peek()[2])
        return acc

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take("num")
            return base ** int(tok[1])
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(val)
            if self.peek()[1] == "/":
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("division by zero", pos)
                return BPoly.constant(fmpq(num, den))
            return BPoly.constant(num)
        if kind == "name":
            self.take()
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r} (variables are {', '.join(self.vars)})", pos)
            return self.gens[self.vars.index(val)]
        if val == "(":
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        if val == "/":
            raise ParseError("'/' is only allowed between integer literals", pos)
        raise ParseError("expected a number, a variable or '('",
                         pos) if kind != "end" else ParseError("unexpected end of input", pos)


def parse_polynomial(text: str, vars=("x", "y")) -> BPoly:
    """Parse ``text`` into an exact polynomial in the two variables ``vars``."""
    vars = tuple(vars)
    if len(vars) != 2 or vars[0] == vars[1]:
        raise ValueError("exactly two distinct variable names are required")
    p = _Parser(text, vars)
    out = p.expr()
    if p.peek()[0] != "end":
        tok = p.peek()
        if tok[1] == "/":
            raise ParseError("'/' is only allowed between integer literals", tok[2])
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return out


def format_polynomial(f: BPoly, vars=("x", "y")) -> str:
    return f.with_vars(tuple(vars)).to_str()
