"""Recursive-descent parser for the polynomial expression language.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | IDENT | '(' expr ')'

Division is allowed only by nonzero constants, so ``3/2*x`` and ``x/2`` are
fine while ``x/y`` is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, VariableContext

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos} in {text!r}")


class UnknownVariable(ParseError):
    pass


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("num", num, start))
        elif ident is not None:
            tokens.append(("id", ident, start))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VariableContext):
        self.text, self.ctx = text, ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "sym" and self.peek()[1] in ("*", "/"):
            tok = self.take()
            q = self.unary()
            if tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise self.error("division by a non-constant", tok)
                if q.is_zero():
                    raise self.error("division by zero", tok)
                p = p.scale(1 / q.constant_value())
        return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "sym" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "sym" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "sym" and tok[1] == "-":
                raise self.error("negative exponent")
            if tok[0] != "num" or "." in tok[1]:
                raise self.error("expected a non-negative integer exponent")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return self.ctx.const(Fraction(val))
        if kind == "id":
            if val not in self.ctx:
                raise UnknownVariable(f"unknown variable {val!r}", self.text, pos)
            return self.ctx.var(val)
        if kind == "sym" and val == "(":
            p = self.expr()
            close = self.take()
            if close[1] != ")" or close[0] != "sym":
                raise self.error("expected ')'", close)
            return p
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def parse_expression(text: str, ctx: VariableContext) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``ctx``."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    parser = _Parser(text, ctx)
    if parser.peek()[0] == "end":
        raise ParseError("empty expression", text, 0)
    p = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise parser.error(f"unexpected token {tok[1]!r}")
    return p
