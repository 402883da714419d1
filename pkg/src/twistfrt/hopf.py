"""Determinant, localization and antipode for the 2x2 twisted bialgebra.

The determinant is read off the co-action on the one-dimensional top
component of the exterior ("Grassmann") partner of the quantum plane:
delta(e1 e2) = D (x) e1 e2 there.  It is not central, but each generator
x satisfies D x = lam_x x D; those scalars drive the localization, where
``Dinv`` is adjoined with Dinv x -> lam_x^{-1} x Dinv.

Zero tests in the localized algebra clear denominators: an element is
rewritten to sum_k P_k Dinv^k, multiplied on the right by D^K, D is
replaced by its value, and the result is reduced in the base algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CommutationFailure, ConfluenceFailure
from .freealg import NCPoly, TensorNCPoly, coproduct, counit, word_key
from .linalg import rref
from .quadspace import relations_from_B, spectral_complement
from .report import FAIL, PASS, CheckResult
from .rewrite import RewriteRule, RewriteSystem
from .twisted_frt import double_reduce

__all__ = [
    "DeterminantElement",
    "LocalizedPresentation",
    "AntipodeMap",
    "det_qp",
    "localize",
    "antipode_map",
    "antipode_from_table",
    "check_antipode",
    "check_determinant_grouplike",
    "antipode_square",
]


@dataclass
class DeterminantElement:
    value: NCPoly
    table: dict  # letter name -> Scalar with D x = lam x D
    residuals: dict = field(default_factory=dict)


def _exterior_system(pres):
    """The quadratic coordinate algebra whose degree-2 part is one-dimensional."""
    n = pres.n
    for space in (relations_from_B(pres.B), spectral_complement(pres.B)):
        sysA = space.rewrite_system()
        if sysA.count_normal_words(n) == 1:
            return sysA
    raise ValueError("no exterior partner with a one-dimensional top degree")


def determinant_value(pres):
    """Coefficient D of the top coordinate word in delta(e1 e2)."""
    if pres.n != 2:
        raise ValueError("determinant is only implemented for n = 2")
    A, P, M = pres.alphabet, pres.params, pres.M
    sysA = _exterior_system(pres)
    (top,) = sysA.normal_words(2)
    D = NCPoly.zero(A, P)
    for k, l in M.pairs():
        c = sysA.normal_form(NCPoly.word(A, P, (A.e(k), A.e(l)))).coeff(top)
        if c:
            D = D + M[(1, 2, k, l)].scale(c)
    eps = counit(D, pres.counit)
    if eps and not eps.is_one():
        D = D.scale(eps.inverse())
    return pres.system.normal_form(D)


def det_qp(pres, claimed=None):
    """Build D and verify D x = lam_x x D for each matrix generator.

    ``claimed`` (letter name -> Scalar) is checked instead of inferred when
    given; any failure raises CommutationFailure with the residual.
    """
    A, P, sys = pres.alphabet, pres.params, pres.system
    D = determinant_value(pres)
    table, residuals = {}, {}
    for k in A.indices("T"):
        x = NCPoly.word(A, P, (k,))
        Dx = sys.normal_form(D * x)
        xD = sys.normal_form(x * D)
        name = A.name(k)
        if claimed is not None:
            lam = claimed[name]
        else:
            lead = xD.leading_word() if xD else None
            lam = Dx.coeff(lead) / xD.coeff(lead) if lead is not None else P.one()
        res = sys.normal_form(Dx - xD.scale(lam))
        residuals[name] = res
        if res:
            raise CommutationFailure(
                f"D {name} - ({lam}) {name} D does not vanish: {res}", letter=name, residual=res
            )
        table[name] = lam
    return DeterminantElement(D, table, residuals)


@dataclass
class LocalizedPresentation:
    base: object
    det: DeterminantElement
    system: RewriteSystem

    @property
    def alphabet(self):
        return self.base.alphabet

    @property
    def params(self):
        return self.base.params

    def letter(self, name):
        return NCPoly.letter(self.alphabet, self.params, name)

    def normal_form(self, x):
        return self.system.normal_form(x)

    def clear_inverse(self, x):
        """Return (K, y) with x D^K = y and y free of Dinv, y in base letters."""
        A = self.alphabet
        dinv, d = A.index("Dinv"), A.index("D")
        nf = self.system.normal_form(x)
        K = max((w.count(dinv) for w, _ in nf.items()), default=0)
        y = self.system.normal_form(nf * NCPoly.word(A, self.params, (d,) * K))
        y = y.substitute_letters({d: self.det.value})
        return K, self.base.system.normal_form(y)

    def is_zero(self, x):
        K, y = self.clear_inverse(x)
        self.base.system.certify(y)
        return y.is_zero()

    def residual(self, x):
        return self.clear_inverse(x)[1]


def localize(pres, det, max_degree=None):
    """Adjoin Dinv with D Dinv = Dinv D = 1 and the conjugated commutations."""
    A, P = pres.alphabet, pres.params
    d, dinv = A.index("D"), A.index("Dinv")
    one = NCPoly.one(A, P)
    rules = list(pres.system.rules)
    for k in A.indices("T"):
        lam = det.table[A.name(k)]
        rules.append(RewriteRule((d, k), NCPoly.word(A, P, (k, d), lam)))
        rules.append(RewriteRule((dinv, k), NCPoly.word(A, P, (k, dinv), lam.inverse())))
    rules.append(RewriteRule((d, dinv), one))
    rules.append(RewriteRule((dinv, d), one))
    md = pres.system.max_degree if max_degree is None else max_degree
    sys = RewriteSystem(A, P, rules, md, generators=A.indices("T") + (d, dinv))
    conf = sys.confluence()
    if conf.unresolved:
        raise ConfluenceFailure("localized system is not locally confluent", conf.unresolved)
    return LocalizedPresentation(pres, det, sys)


# entry (i,j) of the classical adjugate: a <-> d, b and c stay in place
def _cofactor(i, j):
    return (3 - j, 3 - i) if i == j else (i, j)


@dataclass
class AntipodeMap:
    table: dict  # letter index -> NCPoly
    coefficients: dict = field(default_factory=dict)  # (i, j) -> Scalar

    def apply(self, x):
        """Extend to an algebra anti-morphism."""
        return x.substitute_letters(self.table, anti=True)

    def text(self, alphabet):
        return {alphabet.name(k): str(v) for k, v in sorted(self.table.items())}


def antipode_from_table(loc, images):
    """AntipodeMap from {letter name: NCPoly} for the T-letters; D and Dinv swap."""
    A = loc.alphabet
    table = {A.index(name): v for name, v in images.items()}
    table.setdefault(A.index("D"), loc.letter("Dinv"))
    table.setdefault(A.index("Dinv"), loc.letter("D"))
    return AntipodeMap(table)


def antipode_map(loc):
    """Solve S(t_ij) = kappa_ij Dinv t_cof(ij) from S(T) T = I.

    The coefficients are the unique solution of the linear system
    sum_k kappa_ik t_cof(ik) t_kj = delta_ij D in the base algebra.
    """
    base = loc.base
    A, P, sys = base.alphabet, base.params, base.system
    D = loc.det.value
    t = lambda i, j: NCPoly.word(A, P, (A.t(i, j),))
    kappa = {}
    for i in (1, 2):
        cols = [(i, k) for k in (1, 2)]
        rows = {}
        for j in (1, 2):
            exprs = {c: sys.normal_form(t(*_cofactor(*c)) * t(c[1], j)) for c in cols}
            rhs = sys.normal_form(D) if i == j else NCPoly.zero(A, P)
            words = set(rhs.words()).union(*(e.words() for e in exprs.values()))
            for w in words:
                row = {c: exprs[c].coeff(w) for c in cols}
                row["rhs"] = -rhs.coeff(w)
                rows[(j, w)] = row
        basis = rref(list(rows.values()), cols + ["rhs"])
        for row in basis:
            piv = next(c for c in cols + ["rhs"] if c in row)
            if piv == "rhs" or any(c in row for c in cols if c != piv):
                raise CommutationFailure(f"no cofactor antipode for row {i}")
            kappa[piv] = -row.get("rhs", P.zero())
        for c in cols:
            if c not in kappa:
                raise CommutationFailure(f"antipode coefficient {c} undetermined")
    dinv = A.index("Dinv")
    table = {}
    for (i, j), c in kappa.items():
        ci, cj = _cofactor(i, j)
        table[A.t(i, j)] = NCPoly.word(A, P, (dinv, A.t(ci, cj)), c)
    table[A.index("D")] = loc.letter("Dinv")
    table[dinv] = loc.letter("D")
    return AntipodeMap(table, kappa)


def _S_of_M(S, pres):
    """S(M^{kl}_{ij}) = gamma^{lpk}_{mjn} S(T^n_p) S(T^m_i)."""
    A, P, n = pres.alphabet, pres.params, pres.n
    zero = NCPoly.zero(A, P)
    out = {key: zero for key in itertools.product(range(1, n + 1), repeat=4)}
    for (K, L, U, I, J, N), c in pres.twist.table().items():
        for i in range(1, n + 1):
            key = (i, J, U, K)
            s1 = S.table[A.t(L, N)]
            s2 = S.table[A.t(i, I)]
            out[key] = out[key] + (s1 * s2).scale(c)
    return out


def check_antipode(S, loc, name="antipode"):
    """Antipode axioms on generators and M S(M) = S(M) M = I."""
    pres = loc.base
    A, P, n = pres.alphabet, pres.params, pres.n
    one = NCPoly.one(A, P)
    zero = NCPoly.zero(A, P)
    t = lambda i, j: NCPoly.word(A, P, (A.t(i, j),))
    legs, counts, witnesses = {}, {}, []

    def leg(label, items):
        counts[label] = len(items)
        bad = []
        for tag, expr in items:
            res = loc.residual(expr)
            if res:
                bad.append({"leg": label, "at": tag, "residual": str(res)})
        legs[label] = PASS if not bad else FAIL
        witnesses.extend(bad)

    gen_left, gen_right = [], []
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        delta = one if i == j else zero
        l = sum((S.table[A.t(i, k)] * t(k, j) for k in range(1, n + 1)), zero)
        r = sum((t(i, k) * S.table[A.t(k, j)] for k in range(1, n + 1)), zero)
        gen_left.append((f"({i},{j})", l - delta))
        gen_right.append((f"({i},{j})", r - delta))
    d, dinv = loc.letter("D"), loc.letter("Dinv")
    for g in (d, dinv):
        (k,) = next(iter(g.words()))
        gen_left.append((A.name(k), S.table[k] * g - one))
        gen_right.append((A.name(k), g * S.table[k] - one))
    leg("S(T)T=I", gen_left)
    leg("TS(T)=I", gen_right)

    if pres.M is not None and pres.twist is not None:
        SM = _S_of_M(S, pres)
        M = pres.M
        ms, sm = [], []
        for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
            delta = one if (i, j) == (k, l) else zero
            a = sum((M[(i, j, r, s)] * SM[(r, s, k, l)] for r, s in M.pairs()), zero)
            b = sum((SM[(i, j, r, s)] * M[(r, s, k, l)] for r, s in M.pairs()), zero)
            tag = f"{i}{j}->{k}{l}"
            ms.append((tag, a - delta))
            sm.append((tag, b - delta))
        leg("MS(M)=I", ms)
        leg("S(M)M=I", sm)

    leg("well-defined", [(str(r), S.apply(r)) for r in pres.system.relations()])

    eps = pres.counit
    bad = []
    for k in A.indices("T"):
        x = NCPoly.word(A, P, (k,))
        if counit(S.table[k], eps) != counit(x, eps):
            bad.append({"leg": "counit", "at": A.name(k)})
    legs["counit"] = PASS if not bad else FAIL
    witnesses.extend(bad)

    status = PASS if all(v == PASS for v in legs.values()) else FAIL
    return CheckResult(name, status, witnesses, {"legs": legs, "identities": counts})


def check_determinant_grouplike(det, pres, name="determinant-grouplike"):
    """Delta(D) = D (x) D and eps(D) = 1 in the base bialgebra."""
    D = det.value
    delta = coproduct(D, pres.coproduct)
    red = double_reduce(delta - TensorNCPoly.pure(D, D), pres.system)
    eps = counit(D, pres.counit)
    witnesses = []
    if red:
        witnesses.append({"residual": str(red)})
    if not eps.is_one():
        witnesses.append({"counit": str(eps)})
    return CheckResult(name, FAIL if witnesses else PASS, witnesses)


def antipode_square(S, loc):
    """S(S(x)) in localized normal form for each generator (reported only)."""
    A = loc.alphabet
    out = {}
    for k in sorted(S.table, key=lambda k: word_key((k,))):
        out[A.name(k)] = str(loc.normal_form(S.apply(S.table[k])))
    return out
