"""Inverse problem for the diagonal twist ansatz.

With ``gamma^{klm}_{ijn} = d^m_i d^l_j d^k_n g(i,j,k)`` the co-action matrix is
``M^{kl}_{ij} = g(k,j,l) T^k_i T^l_j``.  Asking for ``eps(M) = I`` and, word
by word in the free algebra, ``Delta(M) = M (x) M`` gives

    g(i,j,j) = 1                         (normalization)
    g(k,j,l) = g(m,j,n) g(k,n,l)         (multiplicativity, all k,j,l,m,n)

Every equation is "monomial in the unknowns = constant", so taking logs
turns the system into integer linear algebra on exponent vectors.  The
solution space is parametrized by the unknowns left free after integer
elimination; columns ``g(n,j,n)`` (j < n) are ordered last so they are the
ones that stay free, which realizes the gauge ``phi(n) = 1`` with
``g(i,j,k) = phi(j) / phi(k)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DimMismatch, InconsistentSystem, TwistFRTError
from .quadspace import EndoTensor
from .report import FAIL, PASS, CheckResult
from .scalar import ParamSet, Scalar
from .twisted_frt import (
    TwistTensor,
    build_M,
    build_M_diagonal,
    build_presentation,
    check_coideal,
    check_counit,
    check_multiplicative,
)

__all__ = [
    "Equation",
    "CocycleSystem",
    "TwistFamily",
    "TwistVerification",
    "NonMonomialSolution",
    "generate_constraints",
    "solve_diagonal_twist",
    "verify_twist",
    "family_from_phi",
]

NO_PARAMS = ParamSet(())


class NonMonomialSolution(TwistFRTError):
    """The lattice has a non-unit pivot, so solving needs roots of constants."""


def _g_name(key):
    return "g({},{},{})".format(*key)


@dataclass(frozen=True)
class Equation:
    """``prod g(key)^exp = value``; exponents stored sorted, zeros dropped."""

    exponents: tuple  # ((i,j,k), e) pairs
    value: Scalar
    origin: str = ""

    @classmethod
    def make(cls, exps, value, origin=""):
        clean = {}
        for key, e in exps.items():
            clean[key] = clean.get(key, 0) + e
        items = tuple(sorted((k, e) for k, e in clean.items() if e))
        # orientation: first exponent positive
        if items and items[0][1] < 0:
            items = tuple((k, -e) for k, e in items)
            value = value.inverse()
        return cls(items, value, origin)

    @property
    def is_trivial(self):
        return not self.exponents and self.value.is_one()

    def holds(self, table):
        """Evaluate with ``table[(i,j,k)] -> Scalar`` (exact)."""
        acc = self.value.params.one() if not table else next(iter(table.values())).params.one()
        for key, e in self.exponents:
            acc = acc * table[key] ** e
        return acc == self.value.rebase(acc.params)

    def __str__(self):
        if not self.exponents:
            return f"1 = {self.value}"
        num = [(_g_name(k), e) for k, e in self.exponents if e > 0]
        den = [(_g_name(k), -e) for k, e in self.exponents if e < 0]

        def side(parts):
            if not parts:
                return "1"
            return "*".join(n if e == 1 else f"{n}^{e}" for n, e in parts)

        lhs = side(num)
        rhs = str(self.value)
        if den:
            rhs = side(den) if self.value.is_one() else f"{self.value}*{side(den)}"
        return f"{lhs} = {rhs}"


@dataclass
class CocycleSystem:
    n: int
    unknowns: tuple
    equations: list
    params: ParamSet = NO_PARAMS

    def __len__(self):
        return len(self.equations)

    def with_constraints(self, constraints):
        """Add ``{(i,j,k): value}`` pins, e.g. ``{(i,1,2): 1}`` for the flip."""
        extra = []
        params = self.params
        for key, value in constraints.items():
            if key not in self.unknowns:
                raise DimMismatch(f"{_g_name(key)} is not an unknown for n={self.n}")
            if not isinstance(value, Scalar):
                value = params.const(value)
            elif value.params != params:
                params = _merge(params, value.params)
            extra.append((key, value))
        eqs = [Equation.make(dict(e.exponents), e.value.rebase(params), e.origin) for e in self.equations]
        for key, value in extra:
            eqs.append(Equation.make({key: 1}, value.rebase(params), "constraint"))
        return CocycleSystem(self.n, self.unknowns, _dedupe(eqs), params)

    def residuals(self, table):
        return [e for e in self.equations if not e.holds(table)]

    def text(self):
        return [str(e) for e in self.equations]


def _merge(a, b):
    names = list(a.names) + [x for x in b.names if x not in a.names]
    return ParamSet(tuple(names))


def _dedupe(eqs):
    seen = {}
    for e in eqs:
        if e.is_trivial:
            continue
        key = (e.exponents, e.value)
        seen.setdefault(key, e)
    return list(seen.values())


def generate_constraints(n):
    """Normalization and multiplicativity equations for dimension ``n``."""
    if n < 1:
        raise DimMismatch("dimension must be at least 1")
    rng = range(1, n + 1)
    unknowns = tuple(itertools.product(rng, repeat=3))
    one = NO_PARAMS.one()
    eqs = [Equation.make({(i, j, j): 1}, one, "normalization") for i in rng for j in rng]
    for k, j, l, m, nn in itertools.product(rng, repeat=5):
        exps = {(k, j, l): 1}
        exps[(m, j, nn)] = exps.get((m, j, nn), 0) - 1
        exps[(k, nn, l)] = exps.get((k, nn, l), 0) - 1
        eqs.append(Equation.make(exps, one, "multiplicativity"))
    return CocycleSystem(n, unknowns, _dedupe(eqs))


# -- solving ------------------------------------------------------------------------


def _column_order(n, unknowns):
    """Free-by-design columns g(n,j,n), j < n, go last."""
    tail = [(n, j, n) for j in range(1, n)]
    head = [u for u in unknowns if u not in tail]
    return head + tail


def _combine(r1, r2, a, b):
    """r1^a * r2^b on (exponent dict, constant) rows."""
    (e1, c1), (e2, c2) = r1, r2
    out = {}
    for k in set(e1) | set(e2):
        v = a * e1.get(k, 0) + b * e2.get(k, 0)
        if v:
            out[k] = v
    return out, c1**a * c2**b


def _xgcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def _integer_echelon(rows, cols):
    """Hermite-style elimination over Z; returns [(pivot_col, row)], leftover rows."""
    rows = [r for r in rows]
    pivots = []
    for col in cols:
        live = [r for r in rows if r[0].get(col)]
        if not live:
            continue
        rest = [r for r in rows if not r[0].get(col)]
        piv = live[0]
        for other in live[1:]:
            a, b = piv[0][col], other[0][col]
            g, x, y = _xgcd(a, b)
            new_piv = _combine(piv, other, x, y)
            new_other = _combine(piv, other, -b // g, a // g)
            piv = new_piv
            if new_other[0]:
                rest.append(new_other)
            elif not new_other[1].is_one():
                raise InconsistentSystem(f"constraint 1 = {new_other[1]} cannot hold")
        if piv[0][col] < 0:
            piv = _combine(piv, piv, -1, 0)
        pivots.append((col, piv))
        rows = rest
    for exps, c in rows:
        if not exps and not c.is_one():
            raise InconsistentSystem(f"constraint 1 = {c} cannot hold")
    return pivots


def _param_names(n, free):
    names = []
    for key in free:
        i, j, k = key
        if i == n and k == n and j < n:
            names.append("p" if n == 2 else f"p{j}")
        else:
            names.append("g{}{}{}".format(*key))
    return names


@dataclass
class TwistFamily:
    """Solution family; ``table`` maps every (i,j,k) to a Scalar in ``params``."""

    n: int
    params: ParamSet
    parameters: tuple
    table: dict
    gauge: str = ""
    phi: dict = field(default_factory=dict)

    def g(self, i, j, k):
        return self.table[(i, j, k)]

    def twist(self, params=None):
        params = params or self.params
        return TwistTensor.diagonal(self.n, params, {k: v.rebase(params) for k, v in self.table.items()})

    def satisfies(self, system):
        return not system.residuals(self.table)

    def text_table(self):
        return {_g_name(k): str(v) for k, v in sorted(self.table.items())}

    def nontrivial(self):
        return {k: v for k, v in self.table.items() if not v.is_one()}

    def specialize(self, binding):
        return TwistFamily(
            self.n,
            self.params,
            self.parameters,
            {k: v.substitute(binding) for k, v in self.table.items()},
            self.gauge,
            {k: v.substitute(binding) for k, v in self.phi.items()},
        )


def family_from_phi(n, phi):
    """g(i,j,k) = phi(j)/phi(k) for any nonzero Scalars phi(1..n)."""
    P = phi[1].params
    table = {(i, j, k): phi[j] / phi[k] for i, j, k in itertools.product(range(1, n + 1), repeat=3)}
    return TwistFamily(n, P, tuple(P.names), table, "", dict(phi))


def solve_diagonal_twist(system, params=None):
    """General solution of a :class:`CocycleSystem` as a :class:`TwistFamily`.

    ``params`` optionally fixes the ParamSet of the result (it must contain
    the parameter names the solver introduces and any used by constraints).
    """
    n = system.n
    cols = _column_order(n, system.unknowns)
    rows = [(dict(e.exponents), e.value) for e in system.equations]
    pivots = _integer_echelon(rows, cols)
    for col, (exps, _) in pivots:
        if exps[col] != 1:
            raise NonMonomialSolution(f"{_g_name(col)} appears with exponent {exps[col]} after elimination")
    pivot_cols = {col for col, _ in pivots}
    free = [c for c in cols if c not in pivot_cols]
    names = _param_names(n, free)
    base = system.params
    P = params or _merge(base, ParamSet(tuple(names)))
    value = {c: P.gen(name) for c, name in zip(free, names)}
    # back substitution, last pivot first
    for col, (exps, const) in reversed(pivots):
        acc = const.rebase(P)
        for key, e in exps.items():
            if key != col:
                acc = acc * value[key] ** (-e)
        value[col] = acc
    table = {u: value[u] for u in system.unknowns}

    phi = {j: table[(n, j, n)] for j in range(1, n + 1)}
    is_cocycle = all(table[(i, j, k)] == phi[j] / phi[k] for i, j, k in system.unknowns)
    family = TwistFamily(
        n,
        P,
        tuple(names),
        table,
        f"phi({n}) = 1" if is_cocycle else "",
        phi if is_cocycle else {},
    )
    bad = system.residuals(table)
    if bad:  # only reachable through a bug in the elimination
        raise InconsistentSystem(f"solution violates {bad[0]}")
    if len(free) != len(cols) - len(pivots):
        raise InconsistentSystem("rank bookkeeping mismatch")
    return family


# -- end-to-end verification -----------------------------------------------------


@dataclass
class TwistVerification:
    checks: list
    ideal: list
    presentation: object = None

    @property
    def ok(self):
        return all(c.passed for c in self.checks)


def _as_twist(g, params):
    if isinstance(g, TwistTensor):
        return TwistTensor.diagonal(g.n, params, {k: v.rebase(params) for k, v in g.g.items()})
    if isinstance(g, TwistFamily):
        return g.twist(params)
    raise TypeError(f"cannot read a twist from {type(g).__name__}")


def verify_twist(g, B, max_degree=4):
    """build_M, ideal, multiplicative, counit and coideal with parameters kept formal."""
    n = g.n
    if n != B.n:
        raise DimMismatch(f"twist has dim {n}, B has dim {B.n}")
    g_params = g.params
    P = _merge(B.params, g_params)
    if P != B.params:
        B = EndoTensor(B.n, [[x.rebase(P) for x in row] for row in B.rows], P)
    gamma = _as_twist(g, P)
    checks = []
    M = build_M(gamma)
    same = M == build_M_diagonal(gamma)
    checks.append(CheckResult("M-two-routes", PASS if same else FAIL))
    pres = build_presentation(B, gamma, max_degree)
    checks.append(check_multiplicative(M, pres.system))
    checks.append(check_counit(M))
    checks.append(check_coideal(B, M, pres.system))
    return TwistVerification(checks, pres.relations(), pres)
