"""Exact Gaussian elimination over Scalar.

Rows are sparse dicts ``column -> Scalar``.  ``column_order`` fixes pivot
choice: the first column (in that order) with a nonzero entry becomes the
pivot of a row, and pivots are normalized to 1.
"""

from __future__ import annotations


def rref(rows, column_order):
    """Reduced row echelon form; returns the nonzero rows sorted by pivot rank."""
    rank = {c: i for i, c in enumerate(column_order)}
    basis = []  # list of (pivot, row) kept fully reduced against each other
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        for piv, b in basis:
            f = r.get(piv)
            if f:
                r = _axpy(r, b, -f)
        if not r:
            continue
        piv = min(r, key=rank.__getitem__)
        inv = r[piv].inverse()
        r = {c: v * inv for c, v in r.items()}
        # keep earlier rows reduced with respect to the new pivot
        basis = [(p, _axpy(b, r, -b[piv]) if b.get(piv) else b) for p, b in basis]
        basis.append((piv, r))
    basis.sort(key=lambda pb: rank[pb[0]])
    return [b for _, b in basis]


def _axpy(x, y, a):
    """x + a*y on sparse rows."""
    out = dict(x)
    for c, v in y.items():
        s = out.get(c)
        s = v * a if s is None else s + v * a
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    return out


def rank(rows, column_order):
    return len(rref(rows, column_order))


def matmul(A, B, zero):
    """Dense product of lists-of-lists of Scalars."""
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(k):
            acc = zero
            for t in range(m):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out
