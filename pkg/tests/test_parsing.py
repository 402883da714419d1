import pytest

from twistfrt.errors import ParseError
from twistfrt.freealg import Alphabet, NCPoly
from twistfrt.parsing import parse_ncpoly, parse_scalar, tokenize
from twistfrt.scalar import ParamSet

P = ParamSet(("q", "p"))
A = Alphabet.for_dim(2)
q, p = P.gen("q"), P.gen("p")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1 + 2*3", P.const(7)),
        ("2^3^1", None),  # exponent must be an integer literal; chained caret rejected below
        ("-q^2", -(q**2)),
        ("(-q)^2", q**2),
        ("q^-1", q.inverse()),
        ("q^(-2)", q**-2),
        ("1/q/p", 1 / (q * p)),
        ("q - p - 1", q - p - 1),
        ("+q", q),
    ],
)
def test_scalar_precedence(text, expected):
    if expected is None:
        with pytest.raises(ParseError):
            parse_scalar(text, P)
        return
    assert parse_scalar(text, P) == expected


def test_malformed_exponent_points_at_caret():
    with pytest.raises(ParseError) as err:
        parse_scalar("1 + q^", P)
    assert err.value.column == 6
    assert "integer exponent" in err.value.expected


def test_offsets_shift_columns():
    with pytest.raises(ParseError) as err:
        parse_scalar("q^", P, line=7, col_offset=10)
    assert (err.value.line, err.value.column) == (7, 12)
    assert str(err.value).startswith("line 7, column 12")


@pytest.mark.parametrize("text", ["", "(q", "q +", "q )", "q $ p", "q p"])
def test_scalar_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_scalar(text, P)


def test_unknown_parameter():
    with pytest.raises(ParseError, match="unknown parameter"):
        parse_scalar("r + 1", P)


def test_tokenizer_positions():
    toks = tokenize("ab + 2*q")
    assert [(t.kind, t.text, t.pos) for t in toks[:4]] == [("name", "ab", 0), ("op", "+", 3), ("int", "2", 5), ("op", "*", 6)]


def word(*names):
    return NCPoly.word(A, P, tuple(A.index(n) for n in names))


def test_juxtaposition_and_longest_match():
    assert parse_ncpoly("ad", A, P) == word("a", "d")
    assert parse_ncpoly("a d", A, P) == word("a", "d")
    assert parse_ncpoly("Dinvd", A, P) == word("Dinv", "d")
    assert parse_ncpoly("e1 e2", A, P) == word("e1", "e2")
    assert parse_ncpoly("q ad - p da", A, P) == word("a", "d").scale(q) - word("d", "a").scale(p)


def test_nc_power_and_scalar_division():
    assert parse_ncpoly("(a + b)^2", A, P) == word("a", "a") + word("a", "b") + word("b", "a") + word("b", "b")
    assert parse_ncpoly("ab/q", A, P) == word("a", "b").scale(q.inverse())
    with pytest.raises(ParseError):
        parse_ncpoly("a/b", A, P)
    with pytest.raises(ParseError):
        parse_ncpoly("a^-1", A, P)


def test_nc_rendering_reparses():
    x = parse_ncpoly("ad - da + p*(q^-1 - q) cb + 3", A, P)
    assert parse_ncpoly(str(x), A, P) == x
