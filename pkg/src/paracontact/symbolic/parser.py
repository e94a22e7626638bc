"""Recursive-descent parser for scalar expressions.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-" | "+"] INT)?
    atom   := INT | NAME | "exp" "(" expr ")" | "(" expr ")"

``NAME`` is ``[a-zA-Z_][a-zA-Z0-9_]*``.
"""

import re

from .expr import Expr

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ExprSyntaxError(ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, spec):
        self.text = text
        self.spec = spec
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] not in ("op",):
            raise self.error(f"expected {value!r}", tok)
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                e = e * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                e = e / rhs
        return e

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            e = self.unary()
            return -e if tok[1] == "-" else e
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise self.error("exponent must be an integer", exp_tok)
            n = sign * int(exp_tok[1])
            if n < 0 and base.is_zero():
                raise self.error("zero to a negative power", exp_tok)
            return base ** n
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return Expr.const(int(value))
        if kind == "name":
            if value == "exp":
                self.expect("(")
                start = self.peek()
                arg = self.expr()
                self.expect(")")
                try:
                    return Expr.exp(arg)
                except ValueError as exc:
                    raise self.error(str(exc), start) from None
            if self.spec is None:
                return Expr.symbol(value)
            return self.spec.resolve(value, pos)
        if kind == "op" and value == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {value!r}", tok)


def parse_expr(text, spec=None):
    """Parse ``text`` into a normalized :class:`Expr`.

    With a :class:`DerivationSpec`, every name must be declared there and
    exponential-generator aliases are expanded. Without one, any name is
    accepted as a symbol.
    """
    return _Parser(text, spec).parse()
