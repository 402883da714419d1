"""Precedence-climbing parser for scalar and noncommutative expressions.

Grammar (whitespace insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/" | <juxtaposition>) unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" exponent)?
    exponent := ["-"|"+"] INT | "(" ["-"|"+"] INT ")"
    atom   := INT | NAME | "(" expr ")"

Juxtaposition is only accepted in noncommutative mode, where ``ad`` or
``a d`` denote the product of letters ``a`` and ``d``.  A bare NAME that is
neither a parameter nor a letter is split into letters by longest match.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text, line=1, col_offset=0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col_offset + pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ops, juxtapose, line, col_offset):
        self.text = text
        self.ops = ops
        self.juxtapose = juxtapose
        self.line = line
        self.col_offset = col_offset
        self.toks = tokenize(text, line, col_offset)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, self.line, self.col_offset + tok.pos + 1, expected)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        return None

    def parse(self):
        if self.tok.kind == "end":
            self.error("empty expression", ("number", "name", "("))
        value = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}", ("operator", "end of input"))
        return value

    def expr(self):
        value = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term()
            value = self.ops.add(value, rhs) if op == "+" else self.ops.sub(value, rhs)
        return value

    def _starts_atom(self):
        t = self.tok
        return t.kind in ("int", "name") or (t.kind == "op" and t.text == "(")

    def term(self):
        value = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.text == "*":
                self.advance()
                value = self.ops.mul(value, self.unary())
            elif t.kind == "op" and t.text == "/":
                self.advance()
                rhs = self.unary()
                try:
                    value = self.ops.div(value, rhs)
                except ParseError:
                    raise
                except Exception as exc:
                    self.error(str(exc), tok=t)
            elif self.juxtapose and self._starts_atom():
                value = self.ops.mul(value, self.power())
            else:
                return value

    def unary(self):
        if self.accept("-"):
            return self.ops.neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        caret = self.accept("^")
        if caret is None:
            return base
        exp = self.exponent(caret)
        try:
            return self.ops.pow(base, exp)
        except ParseError:
            raise
        except Exception as exc:
            self.error(str(exc), tok=caret)

    def exponent(self, caret):
        paren = self.accept("(")
        sign = 1
        if self.accept("-"):
            sign = -1
        elif self.accept("+"):
            pass
        if self.tok.kind != "int":
            # report at the caret: the exponent is what is malformed
            self.error("malformed exponent", ("integer exponent",), tok=caret)
        value = sign * int(self.advance().text)
        if paren and not self.accept(")"):
            self.error("unclosed exponent parenthesis", (")",))
        return value

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return self.ops.number(int(t.text))
        if t.kind == "name":
            self.advance()
            try:
                return self.ops.name(t.text)
            except ParseError:
                raise
            except Exception as exc:
                self.error(str(exc), tok=t)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                self.error("missing closing parenthesis", (")",))
            return value
        if t.kind == "end":
            self.error("unexpected end of input", ("number", "name", "("))
        self.error(f"unexpected {t.text!r}", ("number", "name", "("))


def parse_with(text, ops, juxtapose=False, line=1, col_offset=0):
    """Parse ``text`` evaluating through ``ops`` (number/name/add/sub/mul/div/neg/pow)."""
    return _Parser(text, ops, juxtapose, line, col_offset).parse()


class _ScalarOps:
    def __init__(self, params):
        self.params = params

    def number(self, n):
        return self.params.const(n)

    def name(self, s):
        if s not in self.params:
            raise ValueError(f"unknown parameter {s!r}")
        return self.params.gen(s)

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    div = staticmethod(lambda a, b: a / b)
    neg = staticmethod(lambda a: -a)
    pow = staticmethod(lambda a, k: a**k)


def parse_scalar(text, params, line=1, col_offset=0):
    return parse_with(text, _ScalarOps(params), False, line, col_offset)


class _NCOps:
    def __init__(self, alphabet, params):
        from .freealg import NCPoly

        self.NCPoly = NCPoly
        self.alphabet = alphabet
        self.params = params

    def const(self, s):
        return self.NCPoly.const(self.alphabet, s)

    def number(self, n):
        return self.const(self.params.const(n))

    def name(self, s):
        if s in self.params:
            return self.const(self.params.gen(s))
        word = self.alphabet.split(s)
        if word is None:
            raise ValueError(f"unknown name {s!r}")
        return self.NCPoly.word(self.alphabet, self.params, word)

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    def div(self, a, b):
        c = b.constant_value()
        if c is None:
            raise ValueError("division by a noncommutative element")
        return a * c.inverse()

    def pow(self, a, k):
        if k >= 0:
            return a**k
        c = a.constant_value()
        if c is None:
            raise ValueError("negative power of a noncommutative element")
        return self.const(c**k)


def parse_ncpoly(text, alphabet, params, line=1, col_offset=0):
    return parse_with(text, _NCOps(alphabet, params), True, line, col_offset)
