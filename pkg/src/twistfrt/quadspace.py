"""Endomorphisms of V (x) V and the quadratic algebras they present.

An :class:`EndoTensor` ``B`` stores ``B^{kl}_{ij}`` as an n^2 x n^2 matrix
whose row is the lower pair ``(i, j)`` and whose column is the upper pair
``(k, l)``; pairs are flattened in the order e1e1, e1e2, ..., enen.
Composition ``(A x D)^{rs}_{ij} = A^{kl}_{ij} D^{rs}_{kl}`` is then the
ordinary matrix product ``A @ D``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimMismatch, NotDiagonalizableQuadratic, NotInvolutive
from .freealg import Alphabet, NCPoly
from .linalg import matmul, rref
from .rewrite import RewriteSystem

__all__ = [
    "EndoTensor",
    "QuadraticSpace",
    "yang_baxter_check",
    "yang_baxter_witnesses",
    "tensor_compose",
    "relations_from_B",
    "spectral_complement",
    "quadratic_minimal_polynomial",
    "master_relation_check",
]


def pair_index(n, i, j):
    return (i - 1) * n + (j - 1)


class EndoTensor:
    def __init__(self, n, rows, params):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != n * n or any(len(r) != n * n for r in rows):
            raise DimMismatch(f"expected a {n*n}x{n*n} matrix for dim {n}")
        self.n = n
        self.rows = rows
        self.params = params

    @classmethod
    def identity(cls, n, params):
        N = n * n
        return cls(n, [[params.one() if a == b else params.zero() for b in range(N)] for a in range(N)], params)

    @classmethod
    def from_strings(cls, n, rows, params):
        return cls(n, [[params.parse(s) if isinstance(s, str) else params(s) for s in r] for r in rows], params)

    def entry(self, i, j, k, l):
        """B^{kl}_{ij} with 1-based indices."""
        return self.rows[pair_index(self.n, i, j)][pair_index(self.n, k, l)]

    def _same(self, other):
        if not isinstance(other, EndoTensor) or other.n != self.n:
            raise DimMismatch("tensors of different dimension")

    def __add__(self, other):
        self._same(other)
        return EndoTensor(self.n, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.params)

    def __sub__(self, other):
        self._same(other)
        return EndoTensor(self.n, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.params)

    def scale(self, s):
        return EndoTensor(self.n, [[a * s for a in r] for r in self.rows], self.params)

    def __matmul__(self, other):
        return tensor_compose(self, other)

    def __eq__(self, other):
        return isinstance(other, EndoTensor) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self):
        return EndoTensor(self.n, list(zip(*self.rows)), self.params)

    def is_symmetric(self):
        return self == self.transpose()

    def square(self):
        return self @ self

    def is_involutive(self):
        return self.square() == EndoTensor.identity(self.n, self.params)

    def is_idempotent(self):
        return self.square() == self

    def substitute(self, binding):
        return EndoTensor(self.n, [[a.substitute(binding) for a in r] for r in self.rows], self.params)

    def text_rows(self):
        return [[str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"EndoTensor(n={self.n}, rows={self.text_rows()})"


def tensor_compose(A, D):
    """(A x D)^{rs}_{ij} = sum_{kl} A^{kl}_{ij} D^{rs}_{kl}."""
    if A.n != D.n:
        raise DimMismatch(f"cannot compose dims {A.n} and {D.n}")
    return EndoTensor(A.n, matmul([list(r) for r in A.rows], [list(r) for r in D.rows], A.params.zero()), A.params)


def _leg_matrices(B):
    """B12 = B (x) I and B23 = I (x) B as n^3 x n^3 matrices (rows = lower triple)."""
    n, P = B.n, B.params
    idx = {t: a for a, t in enumerate(itertools.product(range(1, n + 1), repeat=3))}
    N = n**3
    B12 = [[P.zero()] * N for _ in range(N)]
    B23 = [[P.zero()] * N for _ in range(N)]
    for (i, j, m), r in idx.items():
        for (k, l, m2), c in idx.items():
            if m == m2:
                B12[r][c] = B.entry(i, j, k, l)
            if i == k:
                B23[r][c] = B.entry(j, m, l, m2)
    return B12, B23, idx


def yang_baxter_witnesses(B):
    """Index triples where B12 B23 B12 and B23 B12 B23 disagree."""
    B12, B23, idx = _leg_matrices(B)
    z = B.params.zero()
    lhs = matmul(matmul(B12, B23, z), B12, z)
    rhs = matmul(matmul(B23, B12, z), B23, z)
    labels = list(idx)
    out = []
    for r in range(len(labels)):
        for c in range(len(labels)):
            if lhs[r][c] != rhs[r][c]:
                out.append({"lower": labels[r], "upper": labels[c], "difference": str(lhs[r][c] - rhs[r][c])})
    return out


def yang_baxter_check(B):
    return not yang_baxter_witnesses(B)


@dataclass(frozen=True)
class QuadraticSpace:
    dim: int
    B: EndoTensor
    relations: tuple

    def rewrite_system(self, max_degree=4):
        alph = Alphabet.for_dim(self.dim)
        return RewriteSystem.from_relations(
            alph, self.B.params, self.relations, max_degree, generators=alph.indices("e")
        )


def _pair_words(n):
    """Degree-2 coordinate words in the fixed basis order e1e1, e1e2, ..."""
    A = Alphabet.for_dim(n)
    return [(A.e(i), A.e(j)) for i in range(1, n + 1) for j in range(1, n + 1)]


def _row_space_relations(M):
    """Echelonized span of the rows of M, read as combinations of e_k e_l."""
    n, P = M.n, M.params
    A = Alphabet.for_dim(n)
    words = _pair_words(n)
    rows = [{words[c]: v for c, v in enumerate(row) if v} for row in M.rows]
    basis = rref(rows, words)
    return tuple(NCPoly(A, P, r) for r in basis)


def relations_from_B(B):
    """Span of e_i e_j - B^{kl}_{ij} e_k e_l, i.e. the rows of I - B."""
    I = EndoTensor.identity(B.n, B.params)
    return QuadraticSpace(B.n, B, _row_space_relations(I - B))


def quadratic_minimal_polynomial(B):
    """Return (alpha, beta) with B^2 = alpha B + beta I, or None.

    Raises NotDiagonalizableQuadratic when B is a scalar multiple of I.
    """
    n, P = B.n, B.params
    I = EndoTensor.identity(n, P)
    N = n * n
    # does B = c I ?
    diag = B.rows[0][0]
    if B == I.scale(diag):
        raise NotDiagonalizableQuadratic("minimal polynomial is linear (B is scalar)")
    B2 = B.square()
    # unknowns alpha, beta: B2[r][c] = alpha B[r][c] + beta I[r][c]
    rows = []
    for r in range(N):
        for c in range(N):
            rows.append({"alpha": B.rows[r][c], "beta": I.rows[r][c], "rhs": -B2.rows[r][c]})
    basis = rref(rows, ["alpha", "beta", "rhs"])
    sol = {}
    for row in basis:
        piv = next(k for k in ("alpha", "beta", "rhs") if k in row)
        if piv == "rhs":
            return None  # inconsistent: no quadratic minimal polynomial
        if len(row) > 2 or (len(row) == 2 and "rhs" not in row):
            return None
        sol[piv] = -row.get("rhs", P.zero())
    return sol.get("alpha", P.zero()), sol.get("beta", P.zero())


def spectral_complement(B):
    """Quadratic space on the eigenspace not used by :func:`relations_from_B`.

    With (B - I)(B - lam I) = 0 and lam != 1, ``relations_from_B`` spans the
    lam-eigenspace (rows of I - B).  The complement is spanned by the rows
    of B - lam I; it is presented by the rescaled operator B / lam, whose
    eigenvalue 1 now sits on the complementary space.
    """
    mp = quadratic_minimal_polynomial(B)
    if mp is None:
        raise NotDiagonalizableQuadratic("B has no quadratic minimal polynomial")
    alpha, beta = mp
    # roots of x^2 - alpha x - beta; the construction needs the root 1
    if (1 - alpha - beta) != 0:
        raise NotDiagonalizableQuadratic("1 is not an eigenvalue of B")
    lam = alpha - 1
    if lam == 1:
        raise NotDiagonalizableQuadratic("repeated eigenvalue 1")
    if not lam:
        raise NotDiagonalizableQuadratic("eigenvalue 0: B is not invertible")
    I = EndoTensor.identity(B.n, B.params)
    rels = _row_space_relations(B - I.scale(lam))
    return QuadraticSpace(B.n, B.scale(lam.inverse()), rels)


def master_relation_check(Bp, M, sys):
    """All entries of (I - B')M(I + B') vanish modulo ``sys``; needs B'^2 = I."""
    if not Bp.is_involutive():
        raise NotInvolutive("B'^2 != I")
    I = EndoTensor.identity(Bp.n, Bp.params)
    left = I - Bp
    right = I + Bp
    expr = M.compose_left(left).compose_right(right)
    return all(sys.is_zero_mod(v) for v in expr.entries.values())
