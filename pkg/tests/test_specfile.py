import pytest
from conftest import plane_B
from hypothesis import given, settings
from hypothesis import strategies as st

from twistfrt.errors import ParseError, SemanticError
from twistfrt.quadspace import spectral_complement
from twistfrt.specfile import PRESETS, parse_spec, preset_text, render_spec, specialize

MINIMAL = """\
# two-dimensional plane
[params]
q, p
[dim]
2
[B]
[1, 0, 0, 0]
[0, 0, q, 0]
[0, q, 1 - q^2, 0]
[0, 0, 0, 1]
"""


def test_quantum_plane_preset():
    spec = parse_spec(preset_text("quantum-plane"))
    assert spec.params.names == ("q", "p")
    assert spec.B == plane_B()
    assert [str(x) for x in spec.B.rows[0]] == ["1", "0", "0", "0"]
    table = spec.twist.expand(2)
    p = spec.params.gen("p")
    assert table[(1, 1, 2)] == p and table[(2, 2, 1)] == p.inverse()


def test_grassmann_preset_is_spectral_complement():
    spec = parse_spec(preset_text("grassmann-plane"))
    assert spec.B == spectral_complement(plane_B()).B


def test_defaults():
    spec = parse_spec(MINIMAL)
    assert spec.twist.mode == "flip"
    assert spec.max_degree == 4
    assert spec.relations == ()


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_round_trip(name):
    spec = parse_spec(PRESETS[name])
    text = render_spec(spec)
    again = parse_spec(text)
    assert again == spec
    assert render_spec(again) == text


def test_twist_solve_with_pins():
    spec = parse_spec(MINIMAL + "[twist]\nsolve\ng(i,1,2) = 1\n")
    assert spec.twist.mode == "solve"
    assert spec.twist.expand(2) == {(1, 1, 2): spec.params.one(), (2, 1, 2): spec.params.one()}


def test_malformed_exponent_position():
    text = MINIMAL.replace("[0, 0, 0, 1]", "[0, 0, 0, q^]")
    with pytest.raises(ParseError) as err:
        parse_spec(text)
    assert (err.value.line, err.value.column) == (10, 12)
    assert "integer exponent" in err.value.expected


@pytest.mark.parametrize(
    "mutate, kind",
    [
        (lambda t: t.replace("[0, 0, 0, 1]\n", ""), SemanticError),  # too few rows
        (lambda t: t.replace("[0, 0, 0, 1]", "[0, 0, 1]"), SemanticError),  # short row
        (lambda t: t.replace("[0, 0, q, 0]", "[0, 0, r, 0]"), SemanticError),  # unknown parameter
        (lambda t: t.replace("[0, 0, q, 0]", "[0, 0, q, 0"), ParseError),
        (lambda t: t.replace("[dim]\n2", "[dim]\ntwo"), ParseError),
        (lambda t: t + "[options]\nmax_degree = 3\n[colour]\nred\n", ParseError),
        (lambda t: t + "[options]\nmax_degree = 1\n", SemanticError),
        (lambda t: t + "[options]\nchecks = everything\n", SemanticError),
        (lambda t: t + "[twist]\ng(1,3,1) = p\n", SemanticError),
        (lambda t: t + "[twist]\nh(1,2,1) = p\n", ParseError),
        (lambda t: "q\n" + t, ParseError),
        (lambda t: t.replace("[dim]\n2\n", ""), SemanticError),
    ],
)
def test_errors(mutate, kind):
    with pytest.raises(kind):
        parse_spec(mutate(MINIMAL))


def test_relations_and_hopf_sections():
    spec = parse_spec(preset_text("gl-qp-2"))
    assert len(spec.relations) == 6
    assert spec.det is not None
    assert [n for n, _ in spec.antipode] == ["a", "b", "c", "d"]
    with pytest.raises(SemanticError):
        parse_spec(MINIMAL + "[hopf]\nS(e1) = e1\n")


def test_specialize():
    spec = specialize(parse_spec(preset_text("m-qp-2")), {"p": 1})
    assert spec.twist.expand(2)[(1, 1, 2)].is_one()
    assert "p" not in render_spec(spec).split("[relations]")[1]
    with pytest.raises(SemanticError):
        specialize(spec, {"r": 2})


entry = st.sampled_from(["0", "1", "q", "-q", "q^2 - 1", "1/q", "p/(q + 1)", "3/4", "-2*p^-1"])


@settings(max_examples=40, deadline=None)
@given(st.lists(entry, min_size=16, max_size=16), st.sampled_from(["flip", "solve", "table"]), st.integers(2, 6))
def test_round_trip_random_specs(cells, mode, degree):
    rows = "".join("[" + ", ".join(cells[4 * r : 4 * r + 4]) + "]\n" for r in range(4))
    twist = {"flip": "flip\n", "solve": "solve\ng(i,2,1) = p\n", "table": "g(i,j,1) = q\ng(2,1,2) = p^2\n"}[mode]
    text = f"[params]\nq, p\n[dim]\n2\n[B]\n{rows}[twist]\n{twist}[options]\nmax_degree = {degree}\n"
    spec = parse_spec(text)
    assert parse_spec(render_spec(spec)) == spec
    assert parse_spec(render_spec(spec)).twist.expand(2) == spec.twist.expand(2)
