"""Recursive-descent parser for the expression grammar.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ('-')? INT)?
    atom   := INT | 'x' | 't' | 'D' | '(' expr ')'

`D` (the operator symbol for d/dx) is only admitted by parse_operator; the
field parser rejects it.  Exponents are integers; negative exponents are
allowed on invertible values.
"""

from __future__ import annotations

from .fields import RF, RF_ONE, RF_X, RF_T
from .ore import OrePoly


class ParseError(ValueError):
    pass


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
            continue
        if ch in "xtD":
            tokens.append(("sym", ch))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, allow_d):
        self.tokens = tokens
        self.pos = 0
        self.allow_d = allow_d

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}")
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() != "end":
            raise ParseError(f"trailing input at token {self.tokens[self.pos]}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()[0]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                value = self._divide(value, rhs)
        return value

    def unary(self):
        if self.peek() == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            k = sign * self.expect("int")[1]
            base = self._pow(base, k)
        return base

    def atom(self):
        kind, value = self.next()
        if kind == "int":
            return self._const(value)
        if kind == "sym":
            if value == "x":
                return self._lift(RF_X)
            if value == "t":
                return self._lift(RF_T)
            if value == "D":
                if not self.allow_d:
                    raise ParseError("operator symbol D is not a field element")
                return OrePoly.partial()
            raise ParseError(f"unknown symbol {value!r}")
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {kind!r}")

    def _const(self, value):
        return OrePoly.constant(RF(value)) if self.allow_d else RF(value)

    def _lift(self, f):
        return OrePoly.constant(f) if self.allow_d else f

    def _pow(self, base, k):
        if self.allow_d and k < 0:
            if base.order > 0:
                raise ParseError("negative power of a differential operator")
            return OrePoly.constant(base.coeffs[0] ** k if base.coeffs
                                    else RF(0) ** k)
        return base ** k

    def _divide(self, a, b):
        if self.allow_d:
            if b.order > 0:
                raise ParseError("division by a differential operator")
            if not b:
                raise ZeroDivisionError("division by zero")
            return a * OrePoly.constant(RF_ONE / b.coeffs[0])
        return a / b


def parse_rf(text: str) -> RF:
    """Parse a Q(t)(x) expression like 't/x + 1/(x+1)'."""
    return _Parser(_tokenize(text), allow_d=False).parse()


def parse_operator(text: str) -> OrePoly:
    """Parse an operator expression like 'D^2 - (x*t)^2' (D is d/dx)."""
    return _Parser(_tokenize(text), allow_d=True).parse()
