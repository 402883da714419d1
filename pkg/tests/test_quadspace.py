from fractions import Fraction

import pytest
import sympy
from conftest import B_PRIME_ROWS, PLANE_ROWS, QP, b_prime, plane_B
from hypothesis import given, settings
from hypothesis import strategies as st

from twistfrt.errors import NotDiagonalizableQuadratic, NotInvolutive
from twistfrt.quadspace import (
    EndoTensor,
    master_relation_check,
    quadratic_minimal_polynomial,
    relations_from_B,
    spectral_complement,
    tensor_compose,
    yang_baxter_check,
    yang_baxter_witnesses,
)
from twistfrt.rewrite import RewriteSystem

q, p = QP.gen("q"), QP.gen("p")
qs = sympy.Symbol("q")


def sympy_matrix(rows):
    return sympy.Matrix([[sympy.sympify(x.replace("^", "**"), locals={"q": qs}) for x in r] for r in rows])


def sympy_yb_defect(rows):
    """Independent oracle: Kronecker products in sympy."""
    B = sympy_matrix(rows)
    I2 = sympy.eye(2)
    B12 = sympy.kronecker_product(B, I2)
    B23 = sympy.kronecker_product(I2, B)
    D = (B12 * B23 * B12 - B23 * B12 * B23).applyfunc(sympy.cancel)
    return sum(1 for x in D if x != 0)


def test_plane_yang_baxter_two_routes():
    assert sympy_yb_defect(PLANE_ROWS) == 0
    assert yang_baxter_check(plane_B())


def test_b_prime_fails_yang_baxter_two_routes():
    oracle = sympy_yb_defect(B_PRIME_ROWS)
    assert oracle == 14
    assert len(yang_baxter_witnesses(b_prime())) == oracle


def test_b_prime_structure():
    Bp = b_prime()
    assert Bp.is_symmetric()
    assert Bp.is_involutive()
    assert not Bp.is_idempotent()
    assert quadratic_minimal_polynomial(Bp) == (QP.zero(), QP.one())


def test_plane_quadratic_relation():
    alpha, beta = quadratic_minimal_polynomial(plane_B())
    assert alpha == 1 - q**2 and beta == q**2
    B = plane_B()
    I = EndoTensor.identity(2, QP)
    assert B.square() == B.scale(alpha) + I.scale(beta)


def test_plane_relations():
    rels = relations_from_B(plane_B()).relations
    assert [str(r) for r in rels] == ["-q e2 e1 + e1 e2"]
    assert [str(r) for r in relations_from_B(b_prime()).relations] == ["-q e2 e1 + e1 e2"]


def test_spectral_complement_is_grassmann():
    comp = spectral_complement(plane_B())
    assert [str(r) for r in comp.relations] == ["e1 e1", "1/q e2 e1 + e1 e2", "e2 e2"]
    assert comp.B == plane_B().scale(-(q**-2))
    # the complement's own plane relations are the Grassmann ones
    assert relations_from_B(comp.B).relations == comp.relations
    assert yang_baxter_check(comp.B)


def test_spectral_complement_needs_quadratic():
    with pytest.raises(NotDiagonalizableQuadratic):
        spectral_complement(EndoTensor.identity(2, QP))


def test_plane_hilbert_series():
    sysA = relations_from_B(plane_B()).rewrite_system()
    assert [sysA.count_normal_words(d) for d in range(5)] == [1, 2, 3, 4, 5]
    ext = spectral_complement(plane_B()).rewrite_system()
    assert [ext.count_normal_words(d) for d in range(4)] == [1, 2, 1, 0]


def test_master_relation(pres):
    Bp = b_prime()
    assert master_relation_check(Bp, pres.M, pres.system)
    empty = RewriteSystem(pres.alphabet, QP, [], 4)
    assert not master_relation_check(Bp, pres.M, empty)
    with pytest.raises(NotInvolutive):
        master_relation_check(plane_B(), pres.M, pres.system)


def test_composition_is_matrix_product():
    B = plane_B()
    assert tensor_compose(B, EndoTensor.identity(2, QP)) == B
    assert (B @ B) == B.square()


def test_text_rows_reparse():
    B = b_prime()
    assert EndoTensor.from_strings(2, B.text_rows(), QP) == B


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(1, 5))
def test_specialized_b_prime_involutive(num, den):
    B = b_prime().substitute({"q": Fraction(num, den)})
    assert B.is_involutive()
