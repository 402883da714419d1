"""Exact rational functions in a fixed, ordered set of commuting parameters.

Numerators and denominators are sparse polynomials with rational
coefficients (sympy's ``PolyRing`` in graded-lex order).  Every value is
kept in a canonical form: coprime numerator and denominator, and a monic
denominator.  Laurent monomials such as ``q^-1`` never survive past
construction; they are cleared into the denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import DivisionByZero, ParamSetMismatch, PoleAtSubstitution

__all__ = ["ParamSet", "Scalar", "scalar_arith", "scalar_substitute", "DEFAULT_PARAMS"]


@lru_cache(maxsize=None)
def _poly_ring(names):
    if not names:
        # sympy rings need at least one generator; use a hidden dummy
        R, _ = ring("_unused", QQ, grlex)
        return R
    R, *_ = ring(",".join(names), QQ, grlex)
    return R


@dataclass(frozen=True)
class ParamSet:
    """Ordered parameter names; the order fixes every canonical form."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"bad parameter name {n!r}")

    @property
    def ring(self):
        return _poly_ring(self.names)

    def __contains__(self, name):
        return name in self.names

    def gen(self, name):
        return Scalar(self.ring.gens[self.names.index(name)], self.ring.one, self)

    def one(self):
        return Scalar(self.ring.one, self.ring.one, self)

    def zero(self):
        return Scalar(self.ring.zero, self.ring.one, self)

    def const(self, value):
        return Scalar(self.ring(_to_qq(value)), self.ring.one, self)

    def parse(self, text):
        from .parsing import parse_scalar

        return parse_scalar(text, self)

    def __call__(self, value):
        """Coerce an int, Fraction, parameter name or expression text."""
        if isinstance(value, Scalar):
            if value.params != self:
                raise ParamSetMismatch(f"{value.params.names} vs {self.names}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


DEFAULT_PARAMS = ParamSet(("q", "p"))


def _to_qq(value):
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _qq_to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


class Scalar:
    """Immutable canonical rational function.

    Construct through a :class:`ParamSet` (``P.gen("q")``, ``P.parse(...)``)
    rather than calling the constructor with raw polynomials.
    """

    __slots__ = ("num", "den", "params", "_hash")

    def __init__(self, num, den, params, _canonical=False):
        if not _canonical:
            if not den:
                raise DivisionByZero("zero denominator")
            if not num:
                num, den = params.ring.zero, params.ring.one
            elif den != 1:
                g = num.gcd(den)
                if g != 1:
                    num, den = num.exquo(g), den.exquo(g)
                lc = den.LC
                if lc != 1:
                    num, den = num.quo_ground(lc), den.quo_ground(lc)
        self.num = num
        self.den = den
        self.params = params
        self._hash = None

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.params is not self.params and other.params != self.params:
                raise ParamSetMismatch(f"{self.params.names} vs {other.params.names}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.params.const(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den, self.params)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den, self.params)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, self.params, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return self.params.zero()
        if self.den == 1 and other.den == 1:
            return Scalar(self.num * other.num, self.den, self.params, _canonical=True)
        return Scalar(self.num * other.num, self.den * other.den, self.params)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return Scalar(self.den, self.num, self.params)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero(f"division of {self} by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer exponents")
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num**k, self.den**k, self.params, _canonical=True)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params.names, tuple(self.num.terms()), tuple(self.den.terms())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == 1 and self.den == 1

    def is_constant(self):
        return self.num.is_ground and self.den.is_ground

    def as_fraction(self):
        """Return the value as a Fraction; only valid for constants."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return _qq_to_fraction(self.num.LC if self.num else QQ(0)) / _qq_to_fraction(self.den.LC)

    def is_monomial(self):
        """True for c * (product of parameter powers), Laurent allowed."""
        return len(self.num.terms()) == 1 and len(self.den.terms()) == 1

    # -- substitution -----------------------------------------------------
    def substitute(self, binding):
        return scalar_substitute(self, binding)

    def rebase(self, params):
        """Re-express this value over a ParamSet that contains every used name."""
        if params == self.params:
            return self
        env = {n: params.gen(n) for n in self.params.names if n in params}

        def conv(poly):
            acc = params.zero()
            for monom, coeff in poly.terms():
                term = params.const(_qq_to_fraction(coeff))
                for name, e in zip(self.params.names, monom):
                    if e:
                        if name not in env:
                            raise ParamSetMismatch(f"parameter {name} missing from {params.names}")
                        term = term * env[name] ** e
                acc = acc + term
            return acc

        return conv(self.num) / conv(self.den)

    # -- text -------------------------------------------------------------
    def __str__(self):
        n = _poly_text(self.num, self.params.names)
        if self.den == 1:
            return n
        d = _poly_text(self.den, self.params.names)
        if len(self.num.terms()) > 1:
            n = f"({n})"
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*(\^\d+)?", d):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _monomial_text(monom, names):
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_text(poly, names):
    if not poly:
        return "0"
    out = []
    for monom, coeff in poly.terms():
        c = _qq_to_fraction(coeff)
        neg = c < 0
        c = abs(c)
        m = _monomial_text(monom, names)
        if not m:
            body = str(c)
        elif c == 1:
            body = m
        else:
            body = f"{c}*{m}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def scalar_arith(op, a, b):
    """Dispatch one of ``add``, ``sub``, ``mul``, ``div``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_substitute(a, binding):
    """Specialize parameters to rational numbers.

    The result stays in ``a.params``; substituted names simply no longer occur.
    """
    if not binding:
        return a
    R = a.params.ring
    pairs = []
    for name, value in binding.items():
        if name not in a.params:
            raise KeyError(f"unknown parameter {name!r}")
        pairs.append((R.gens[a.params.names.index(name)], _to_qq(value)))
    num = a.num.subs(pairs) if a.num else a.num
    den = a.den.subs(pairs)
    if not den:
        raise PoleAtSubstitution(f"{a} has a pole at {binding}")
    return Scalar(num, den, a.params)
