"""Scalar literal parser.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | VAR | '(' expr ')'

``VAR`` is ``g`` in ``GF(p^k)`` and ``t`` in rational function fields.  The
expression is evaluated directly in the target field, so ``"2/4"`` over QQ
yields ``1/2`` and ``"(t^2-1)/(t-1)"`` yields ``t+1``.
"""

from __future__ import annotations

import re
from typing import Any

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


class ScalarParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), m.start(3)))
    return tokens


class _Parser:
    def __init__(self, field, text: str):
        self.field = field
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None:
            raise ScalarParseError(self.text, len(self.text), "unexpected end of input")
        if value is not None and tok[1] != value:
            raise ScalarParseError(self.text, tok[2], f"expected {value!r}")
        self.i += 1
        return tok

    def parse(self) -> Any:
        if not self.tokens:
            raise ScalarParseError(self.text, 0, "empty scalar literal")
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ScalarParseError(self.text, tok[2], f"unexpected {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while (tok := self.peek()) is not None and tok[1] in "+-":
            self.take()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while (tok := self.peek()) is not None and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ScalarParseError(self.text, tok[2], "division by zero")
                value = value / rhs
        return value

    def unary(self):
        tok = self.peek()
        if tok is not None and tok[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.take()
            sign = 1
            if (nxt := self.peek()) is not None and nxt[1] == "-":
                self.take()
                sign = -1
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise ScalarParseError(self.text, exp_tok[2], "exponent must be an integer")
            return base ** (sign * int(exp_tok[1]))
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return self.field(int(value))
        if kind == "name":
            var = self.field.variable
            if value != var:
                raise ScalarParseError(self.text, pos, f"unknown symbol {value!r}")
            return self.field.generator if var == "g" else self.field.t
        if value == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ScalarParseError(self.text, pos, f"unexpected {value!r}")


def parse_scalar(field, text: str) -> Any:
    return _Parser(field, str(text)).parse()
