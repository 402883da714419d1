import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistfrt.errors import AlphabetMismatch, CounitUndefinedForLetter, MissingGeneratorImage
from twistfrt.freealg import (
    Alphabet,
    NCPoly,
    TensorNCPoly,
    coproduct,
    counit,
    matrix_coproduct_table,
    matrix_counit_table,
)
from twistfrt.scalar import ParamSet

P = ParamSet(("q", "p"))
A = Alphabet.for_dim(2)
q, p = P.gen("q"), P.gen("p")
DELTA = matrix_coproduct_table(A, P)
EPS = matrix_counit_table(A, P)


def w(*names):
    return NCPoly.word(A, P, tuple(A.index(n) for n in names))


def test_alphabet_layout():
    assert [l.name for l in A] == ["a", "b", "c", "d", "D", "Dinv", "e1", "e2"]
    assert A.t(1, 2) == A.index("b") and A.t(2, 1) == A.index("c")
    assert Alphabet.for_dim(3).name(Alphabet.for_dim(3).t(2, 3)) == "t23"


def test_deglex_order_and_terms():
    x = w("a") + w("b", "a") + w("a", "b") + NCPoly.one(A, P)
    assert [A.render_word(k) for k, _ in x.terms()] == ["ba", "ab", "a", "1"]
    assert x.leading_word() == (A.index("b"), A.index("a"))
    assert x.degree() == 2


def test_product_is_concatenation():
    assert (w("a") + w("b")) * w("c") == w("a", "c") + w("b", "c")
    assert (w("a") * 2 - w("a") * 2).is_zero()


def test_alphabet_mismatch():
    other = Alphabet.for_dim(3)
    with pytest.raises(AlphabetMismatch):
        w("a") + NCPoly.word(other, P, (0,))


def test_coproduct_of_ab_by_hand():
    # Delta(a) = a(x)a + b(x)c and Delta(b) = a(x)b + b(x)d; multiply out
    expected = TensorNCPoly.pure(w("a", "a"), w("a", "b"))
    expected = expected + TensorNCPoly.pure(w("a", "b"), w("a", "d"))
    expected = expected + TensorNCPoly.pure(w("b", "a"), w("c", "b"))
    expected = expected + TensorNCPoly.pure(w("b", "b"), w("c", "d"))
    got = coproduct(w("a", "b"), DELTA)
    assert got == expected
    assert len(got) == 4


def test_counit_values():
    assert counit(w("a", "d"), EPS) == 1
    assert counit(w("a", "b"), EPS) == 0
    assert counit(w("D", "Dinv"), EPS) == 1
    with pytest.raises(CounitUndefinedForLetter):
        counit(w("e1"), EPS)
    with pytest.raises(MissingGeneratorImage):
        coproduct(w("e1"), DELTA)


def test_substitute_letters_anti():
    images = {A.index("a"): w("d"), A.index("b"): w("c")}
    assert w("a", "b").substitute_letters(images) == w("d", "c")
    assert w("a", "b").substitute_letters(images, anti=True) == w("c", "d")


def test_tensor_rendering():
    t = TensorNCPoly.pure(w("a"), w("b")).scale(q)
    assert str(t) == "q a (x) b"


# -- properties -----------------------------------------------------------------------

T_LETTERS = ["a", "b", "c", "d"]


@st.composite
def polys(draw, max_terms=3, max_len=3):
    out = NCPoly.zero(A, P)
    for _ in range(draw(st.integers(0, max_terms))):
        letters = draw(st.lists(st.sampled_from(T_LETTERS), max_size=max_len))
        coeff = draw(st.sampled_from([P.one(), -P.one(), q, p.inverse(), P.const(2)]))
        out = out + w(*letters).scale(coeff)
    return out


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) - y == x


def _delta_left(t):
    return t.expand_factor(0, lambda word: coproduct(NCPoly.word(A, P, word), DELTA))


def _delta_right(t):
    return t.expand_factor(1, lambda word: coproduct(NCPoly.word(A, P, word), DELTA))


@settings(max_examples=30, deadline=None)
@given(polys(max_len=2))
def test_coassociativity(x):
    d = coproduct(x, DELTA)
    assert _delta_left(d) == _delta_right(d)


@settings(max_examples=30, deadline=None)
@given(polys(max_len=3))
def test_counit_identities(x):
    d = coproduct(x, DELTA)
    left = NCPoly.zero(A, P)
    right = NCPoly.zero(A, P)
    for (w1, w2), c in d.items():
        left = left + NCPoly.word(A, P, w2).scale(c * counit(NCPoly.word(A, P, w1), EPS))
        right = right + NCPoly.word(A, P, w1).scale(c * counit(NCPoly.word(A, P, w2), EPS))
    assert left == x
    assert right == x


@settings(max_examples=30, deadline=None)
@given(polys(max_len=2), polys(max_len=2))
def test_coproduct_is_multiplicative(x, y):
    assert coproduct(x * y, DELTA) == coproduct(x, DELTA) * coproduct(y, DELTA)


def test_coproduct_term_count_brute_force():
    # a word of length L in T letters has n^L terms in its coproduct (n = 2), all distinct
    for L in range(4):
        for letters in itertools.product(T_LETTERS, repeat=L):
            assert len(coproduct(w(*letters), DELTA)) == 2**L
