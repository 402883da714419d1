"""Twisted co-actions on V (x) V and the bialgebra they define.

The flip V (x) H -> H (x) V is replaced by a twist

    gamma(e_i T^k_j) = gamma^{klm}_{ijn} T^n_l e_m,

so the induced co-action on V (x) V has matrix

    M^{kl}_{ij} = gamma^{lpk}_{mjn} T^m_i T^n_p.

For the diagonal family gamma^{klm}_{ijn} = d^m_i d^l_j d^k_n g(i,j,k) this
collapses to M^{kl}_{ij} = g(k,j,l) T^k_i T^l_j.  The bialgebra is the free
algebra on the T's modulo the entries of B M - M B.

Index conventions: ``T^j_i`` is the letter in row ``i`` and column ``j``
(``Alphabet.t(i, j)``); tensor keys are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConfluenceNotEstablished, DimMismatch
from .freealg import (
    Alphabet,
    NCPoly,
    TensorNCPoly,
    coproduct,
    counit,
    matrix_coproduct_table,
    matrix_counit_table,
    word_key,
)
from .linalg import rref
from .quadspace import EndoTensor
from .report import FAIL, PASS, WARNING, CheckResult
from .rewrite import RewriteSystem

__all__ = [
    "TwistTensor",
    "MMatrix",
    "BialgebraPresentation",
    "build_M",
    "build_M_diagonal",
    "ideal_generators",
    "cross_relations",
    "cross_system",
    "crossed_system",
    "build_presentation",
    "presentation_from_relations",
    "crossed_coaction",
    "check_multiplicative",
    "check_counit",
    "check_coideal",
    "check_comodule_diagrams",
]


class TwistTensor:
    """Six-index twist; either a sparse full table or the diagonal g-table."""

    def __init__(self, n, params, full=None, g=None):
        if (full is None) == (g is None):
            raise ValueError("give exactly one of full= or g=")
        self.n = n
        self.params = params
        self.full = None if full is None else {tuple(k): v for k, v in full.items() if v}
        self.g = None if g is None else {tuple(k): v for k, v in g.items()}
        if self.g is not None:
            for key in itertools.product(range(1, n + 1), repeat=3):
                self.g.setdefault(key, params.one())

    @classmethod
    def diagonal(cls, n, params, g):
        """``g`` is a mapping (i,j,k) -> Scalar or a callable; missing entries are 1."""
        if callable(g):
            g = {key: g(*key) for key in itertools.product(range(1, n + 1), repeat=3)}
        return cls(n, params, g=dict(g))

    @classmethod
    def flip(cls, n, params):
        return cls(n, params, g={})

    @property
    def is_diagonal(self):
        return self.g is not None

    def component(self, k, l, m, i, j, nn):
        """gamma^{klm}_{ijn}."""
        if self.g is not None:
            if m == i and l == j and k == nn:
                return self.g[(i, j, k)]
            return self.params.zero()
        return self.full.get((k, l, m, i, j, nn), self.params.zero())

    def table(self):
        """Nonzero components as {(k,l,m,i,j,n): value}."""
        if self.full is not None:
            return dict(self.full)
        out = {}
        for (i, j, k), v in self.g.items():
            if v:
                out[(k, j, i, i, j, k)] = v
        return out

    def substitute(self, binding):
        if self.g is not None:
            return TwistTensor(self.n, self.params, g={k: v.substitute(binding) for k, v in self.g.items()})
        return TwistTensor(self.n, self.params, full={k: v.substitute(binding) for k, v in self.full.items()})

    def __eq__(self, other):
        return isinstance(other, TwistTensor) and self.n == other.n and self.table() == other.table()

    def __repr__(self):
        if self.g is not None:
            return f"TwistTensor(n={self.n}, g={{{', '.join(f'{k}: {v}' for k, v in sorted(self.g.items()))}}})"
        return f"TwistTensor(n={self.n}, full={len(self.full)} entries)"


class MMatrix:
    """n^2 x n^2 matrix of NCPolys; ``entries[(i,j,k,l)] = M^{kl}_{ij}``."""

    def __init__(self, n, alphabet, params, entries):
        self.n = n
        self.alphabet = alphabet
        self.params = params
        zero = NCPoly.zero(alphabet, params)
        self.entries = {key: entries.get(key, zero) for key in itertools.product(range(1, n + 1), repeat=4)}

    def __getitem__(self, key):
        return self.entries[key]

    def pairs(self):
        return list(itertools.product(range(1, self.n + 1), repeat=2))

    def compose_left(self, E):
        """(E x M)^{rs}_{ij} = E^{kl}_{ij} M^{rs}_{kl}."""
        if E.n != self.n:
            raise DimMismatch("dimension mismatch")
        out = {}
        for (i, j), (r, s) in itertools.product(self.pairs(), repeat=2):
            acc = NCPoly.zero(self.alphabet, self.params)
            for k, l in self.pairs():
                c = E.entry(i, j, k, l)
                if c:
                    acc = acc + self.entries[(k, l, r, s)].scale(c)
            out[(i, j, r, s)] = acc
        return MMatrix(self.n, self.alphabet, self.params, out)

    def compose_right(self, E):
        """(M x E)^{rs}_{ij} = M^{kl}_{ij} E^{rs}_{kl}."""
        if E.n != self.n:
            raise DimMismatch("dimension mismatch")
        out = {}
        for (i, j), (r, s) in itertools.product(self.pairs(), repeat=2):
            acc = NCPoly.zero(self.alphabet, self.params)
            for k, l in self.pairs():
                c = E.entry(k, l, r, s)
                if c:
                    acc = acc + self.entries[(i, j, k, l)].scale(c)
            out[(i, j, r, s)] = acc
        return MMatrix(self.n, self.alphabet, self.params, out)

    def __sub__(self, other):
        return MMatrix(
            self.n, self.alphabet, self.params, {k: v - other.entries[k] for k, v in self.entries.items()}
        )

    def __eq__(self, other):
        return isinstance(other, MMatrix) and self.entries == other.entries

    def text(self):
        return {f"M^{k}{l}_{i}{j}": str(v) for (i, j, k, l), v in sorted(self.entries.items())}


def _t(alph, params, i, j):
    return NCPoly.word(alph, params, (alph.t(i, j),))


def build_M(gamma):
    """Contract gamma^{lpk}_{mjn} T^m_i T^n_p over m, n, p."""
    n, P = gamma.n, gamma.params
    A = Alphabet.for_dim(n)
    entries = {}
    zero = NCPoly.zero(A, P)
    # component gamma^{KLU}_{IJN} plays the role l=K, p=L, k=U, m=I, j=J, n=N
    for (K, L, U, I, J, N), c in gamma.table().items():
        for i in range(1, n + 1):
            key = (i, J, U, K)
            word = (A.t(i, I), A.t(L, N))
            entries[key] = entries.get(key, zero) + NCPoly.word(A, P, word, c)
    return MMatrix(n, A, P, entries)


def build_M_diagonal(gamma):
    """Closed form M^{kl}_{ij} = g(k,j,l) T^k_i T^l_j for a diagonal twist."""
    if not gamma.is_diagonal:
        raise ValueError("closed form needs a diagonal twist")
    n, P = gamma.n, gamma.params
    A = Alphabet.for_dim(n)
    entries = {}
    for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
        entries[(i, j, k, l)] = NCPoly.word(A, P, (A.t(i, k), A.t(j, l)), gamma.g[(k, j, l)])
    return MMatrix(n, A, P, entries)


def echelon_relations(polys):
    """Reduced echelon basis of the span, pivots at the largest word, monic."""
    if not polys:
        return []
    A, P = polys[0].alphabet, polys[0].params
    rows = [dict(p.items()) for p in polys]
    cols = sorted({w for r in rows for w in r}, key=word_key, reverse=True)
    return [NCPoly(A, P, r) for r in rref(rows, cols)]


def ideal_generators(B, M):
    """Echelonized span of the entries of B M - M B."""
    if B.n != M.n:
        raise DimMismatch(f"B has dim {B.n}, M has dim {M.n}")
    diff = M.compose_left(B) - M.compose_right(B)
    return echelon_relations([v for v in diff.entries.values() if v])


def cross_relations(gamma):
    """e_i T^k_j - gamma^{klm}_{ijn} T^n_l e_m for all i, j, k."""
    n, P = gamma.n, gamma.params
    A = Alphabet.for_dim(n)
    out = []
    for i, j, k in itertools.product(range(1, n + 1), repeat=3):
        rel = NCPoly.word(A, P, (A.e(i), A.t(j, k)))
        for l, nn, m in itertools.product(range(1, n + 1), repeat=3):
            c = gamma.component(k, l, m, i, j, nn)
            if c:
                rel = rel - NCPoly.word(A, P, (A.t(l, nn), A.e(m)), c)
        out.append(rel)
    return out


def cross_system(gamma, max_degree=4):
    """Rules e_i T -> (twisted) T e moving coordinates to the right."""
    A = Alphabet.for_dim(gamma.n)
    gens = A.indices("T") + A.indices("e")
    return RewriteSystem.from_relations(A, gamma.params, cross_relations(gamma), max_degree, gens)


@dataclass
class BialgebraPresentation:
    n: int
    alphabet: Alphabet
    params: object
    system: RewriteSystem
    coproduct: dict
    counit: dict
    B: EndoTensor = None
    twist: TwistTensor = None
    M: MMatrix = None
    antipode: dict = None
    extra: dict = field(default_factory=dict)

    def relations(self):
        return self.system.relations()


def build_presentation(B, gamma, max_degree=4):
    """H_gamma = free algebra on T modulo the ideal of B M - M B."""
    if B.n != gamma.n:
        raise DimMismatch("B and gamma have different dimensions")
    M = build_M(gamma)
    rels = ideal_generators(B, M)
    return presentation_from_relations(gamma.n, B.params, rels, max_degree, B=B, twist=gamma, M=M)


def presentation_from_relations(n, params, relations, max_degree=4, **kw):
    A = Alphabet.for_dim(n)
    sys = RewriteSystem.from_relations(A, params, relations, max_degree, generators=A.indices("T"))
    return BialgebraPresentation(
        n, A, params, sys, matrix_coproduct_table(A, params), matrix_counit_table(A, params), **kw
    )


# -- checks ----------------------------------------------------------------------


def _nf_word_map(sys):
    A, P = sys.alphabet, sys.params
    return lambda w: sys.normal_form(NCPoly.word(A, P, w))


def double_reduce(t, sysL, sysR=None):
    """Normal form in each tensor factor: the image in (H/I) (x) (H/I)."""
    sysR = sysR or sysL
    return t.map_factors([_nf_word_map(sysL), _nf_word_map(sysR)])


def _key_text(key):
    i, j, k, l = key
    return f"M^{k}{l}_{i}{j}"


def _with_confluence(name, fn):
    try:
        return fn()
    except ConfluenceNotEstablished as exc:
        return CheckResult(name, WARNING, message=str(exc))


def _mult_defect(M, table, key):
    i, j, k, l = key
    lhs = coproduct(M[key], table)
    rhs = TensorNCPoly._raw(M.alphabet, M.params, 2, {})
    for r, s in M.pairs():
        a, b = M[(i, j, r, s)], M[(r, s, k, l)]
        if a and b:
            rhs = rhs + TensorNCPoly.pure(a, b)
    return lhs - rhs


def check_multiplicative(M, sys, name="multiplicative"):
    """Delta(M) = M (x) M in (H/I) (x) (H/I), entry by entry."""

    def run():
        table = matrix_coproduct_table(M.alphabet, M.params)
        witnesses = []
        for key in sorted(M.entries):
            for v in (M[key],):
                sys.certify(v)
            red = double_reduce(_mult_defect(M, table, key), sys)
            if red:
                witnesses.append({"entry": _key_text(key), "residual": str(red)})
        return CheckResult(name, FAIL if witnesses else PASS, witnesses)

    return _with_confluence(name, run)


def check_counit(M, name="counit"):
    """eps(M^{kl}_{ij}) = d^k_i d^l_j."""
    table = matrix_counit_table(M.alphabet, M.params)
    witnesses = []
    for key in sorted(M.entries):
        i, j, k, l = key
        val = counit(M[key], table)
        want = 1 if (i == k and j == l) else 0
        if val != want:
            witnesses.append({"entry": _key_text(key), "counit": str(val), "expected": str(want)})
    return CheckResult(name, FAIL if witnesses else PASS, witnesses)


def check_coideal(B, M, sys, name="coideal"):
    """Every generator of the ideal has zero image in (H/I) (x) (H/I) and zero counit.

    Also confirms that ``sys`` contains the entries of B M - M B.
    """

    def run():
        A, P = sys.alphabet, sys.params
        table = matrix_coproduct_table(A, P)
        eps = matrix_counit_table(A, P)
        witnesses = []
        for g in ideal_generators(B, M):
            if not sys.is_zero_mod(g):
                witnesses.append({"generator": str(g), "problem": "not in the presented ideal"})
        for r in sys.relations():
            sys.certify(r)
            red = double_reduce(coproduct(r, table), sys)
            if red:
                witnesses.append({"generator": str(r), "residual": str(red)})
            e = counit(r, eps)
            if e:
                witnesses.append({"generator": str(r), "counit": str(e)})
        return CheckResult(name, FAIL if witnesses else PASS, witnesses)

    return _with_confluence(name, run)


def crossed_coaction(gamma):
    """delta(e_i) delta(e_j) reordered with the twist: {(i,j,k,l): T-part}.

    Computes (T^m_i e_m)(T^n_j e_n) and moves every e to the right with the
    cross relations; the coefficient of e_k e_l is the (k,l) component.
    This is an independent route to :func:`build_M`.
    """
    n, P = gamma.n, gamma.params
    A = Alphabet.for_dim(n)
    csys = cross_system(gamma)
    eidx = set(A.indices("e"))
    out = {}
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        di = sum((_t(A, P, i, m) * NCPoly.word(A, P, (A.e(m),)) for m in range(1, n + 1)), NCPoly.zero(A, P))
        dj = sum((_t(A, P, j, m) * NCPoly.word(A, P, (A.e(m),)) for m in range(1, n + 1)), NCPoly.zero(A, P))
        prod = csys.normal_form(di * dj)
        for w, c in prod.items():
            tpart = tuple(x for x in w if x not in eidx)
            epart = tuple(x for x in w if x in eidx)
            if w != tpart + epart or len(epart) != 2:
                raise ValueError(f"unexpected crossed word {A.render_word(w)}")
            k = A.letters[epart[0]].index
            l = A.letters[epart[1]].index
            key = (i, j, k, l)
            out[key] = out.get(key, NCPoly.zero(A, P)) + NCPoly.word(A, P, tpart, c)
    return MMatrix(n, A, P, out)


def check_comodule_diagrams(gamma, M, sysH, sysA, name="comodule-diagrams"):
    """Coassociativity, counit and B-equivariance of the twisted co-action.

    The co-action is rebuilt from the cross relations (not from ``M``),
    compared with ``M``, and then tested on the basis e_i (x) e_j:

    * (Delta (x) I) delta = (I (x) delta) delta, reduced by ``sysH``;
    * (eps (x) I) delta = id;
    * delta maps every relation of ``sysA`` into H (x) I(A): the image,
      reduced by ``sysH`` in the H factor and ``sysA`` in the V(x)V
      factor, vanishes.
    """

    def run():
        n, A, P = gamma.n, M.alphabet, M.params
        D = crossed_coaction(gamma)
        witnesses = []
        legs = {}

        mism = [_key_text(k) for k in sorted(M.entries) if M[k] != D[k]]
        legs["coaction-matches-M"] = PASS if not mism else FAIL
        witnesses += [{"leg": "coaction-matches-M", "entry": m} for m in mism]

        table = matrix_coproduct_table(A, P)
        bad = []
        for key in sorted(D.entries):
            sysH.certify(D[key])
            red = double_reduce(_mult_defect(D, table, key), sysH)
            if red:
                bad.append({"leg": "coassociativity", "entry": _key_text(key), "residual": str(red)})
        legs["coassociativity"] = PASS if not bad else FAIL
        witnesses += bad

        eps = matrix_counit_table(A, P)
        bad = []
        for key in sorted(D.entries):
            i, j, k, l = key
            if counit(D[key], eps) != (1 if (i, j) == (k, l) else 0):
                bad.append({"leg": "counit", "entry": _key_text(key)})
        legs["counit"] = PASS if not bad else FAIL
        witnesses += bad

        bad = []
        nfH, nfA = _nf_word_map(sysH), _nf_word_map(sysA)
        for rel in sysA.relations():
            acc = TensorNCPoly._raw(A, P, 2, {})
            for w, c in rel.items():
                if len(w) != 2:
                    raise ValueError("coordinate relations must be quadratic")
                i, j = (A.letters[x].index for x in w)
                for k, l in D.pairs():
                    coef = D[(i, j, k, l)]
                    if coef:
                        acc = acc + TensorNCPoly.pure(coef, NCPoly.word(A, P, (A.e(k), A.e(l)))).scale(c)
            red = acc.map_factors([nfH, nfA])
            if red:
                bad.append({"leg": "equivariance", "relation": str(rel), "residual": str(red)})
        legs["equivariance"] = PASS if not bad else FAIL
        witnesses += bad

        status = PASS if all(v == PASS for v in legs.values()) else FAIL
        return CheckResult(name, status, witnesses, {"legs": legs})

    return _with_confluence(name, run)


def crossed_system(pres, gamma, plane_systems=()):
    """Union of the matrix ideal, the cross relations and coordinate relations."""
    return pres.system.union(cross_system(gamma, pres.system.max_degree), *plane_systems)
