"""Recursive-descent parser for the expression grammar.

::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := base ('^' ['-'] integer)?
    base   := integer | identifier | 'exp' '(' expr ')'
            | funcname '(' identifier (',' identifier)* ')' | '(' expr ')'

A function name may carry a formal partial suffix: ``Phi_xy(x,y)`` is the mixed
partial of the opaque function ``Phi(x,y)``.
"""
from __future__ import annotations

import re
from typing import Mapping, Optional

from .expr import Expr, const, exp, func, var

__all__ = ["ParseError", "parse", "tokenize"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^(),]))")


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            p = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unknown token {text[p]!r}", p, text)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", m.group(1), start))
        elif m.group(2):
            out.append(("id", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, aliases: Optional[Mapping[str, str]]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.aliases = aliases or {}

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] not in ("op", "id"):
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.next()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self):
        e = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.next()
            rhs = self.unary()
            if op[1] == "*":
                e = e * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", op[2], self.text)
                e = e / rhs
        return e

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.next()
            e = self.unary()
            return -e if tok[1] == "-" else e
        return self.power()

    def power(self):
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.next()
            sign = 1
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.next()
                sign = -1
            tok = self.next()
            if tok[0] != "num":
                raise ParseError("exponent must be an integer", tok[2], self.text)
            n = sign * int(tok[1])
            if n < 0 and base.is_zero():
                raise ParseError("zero raised to a negative power", tok[2], self.text)
            return base ** n
        return base

    def base(self):
        tok = self.next()
        kind, value, pos = tok
        if kind == "num":
            return const(int(value))
        if kind == "op" and value == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "id":
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                self.next()
                if value == "exp":
                    arg = self.expr()
                    self.expect(")")
                    try:
                        return exp(arg)
                    except ValueError as err:
                        raise ParseError(str(err), pos, self.text) from None
                return self.function(value, pos)
            if value == "exp":
                raise ParseError("exp requires an argument", pos, self.text)
            return var(self.aliases.get(value, value))
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos, self.text)

    def function(self, name, pos):
        args = []
        while True:
            tok = self.next()
            if tok[0] != "id":
                raise ParseError("function arguments must be identifiers", tok[2], self.text)
            args.append(tok[1])
            sep = self.next()
            if sep[1] == ")":
                break
            if sep[1] != ",":
                raise ParseError(f"expected ',' or ')', found {sep[1]!r}", sep[2], self.text)
        head, _, suffix = name.partition("_")
        index = tuple(suffix)
        try:
            return func(head, args, index)
        except ValueError as err:
            raise ParseError(str(err), pos, self.text) from None


def parse(text: str, aliases: Optional[Mapping[str, str]] = None) -> Expr:
    """Parse ``text`` into a canonical :class:`Expr`.

    ``aliases`` renames identifiers (used for jet coordinates such as
    ``u_xt`` -> ``u_tx``).
    """
    return _Parser(text, aliases).parse()
