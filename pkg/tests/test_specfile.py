from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from trivext.bimodule import Bimodule, simple_tensor
from trivext.classify import QUIVERS
from trivext.golden import a2_algebra, a3_algebra, negative_presentation, table2_bimodule
from trivext.linalg import Field
from trivext.modules import is_isomorphic
from trivext.specfile import AlgebraSpec, SpecError, format_algebra, format_bimodule, load_spec, parse_spec

DATA = Path(__file__).resolve().parent.parent / "data"
Q = Field.rationals()

A2_TEXT = 'algebra "kA2" {\n  vertices: 1, 2;\n  arrows: a: 2 -> 1;\n}\n'


def load(name):
    spec = load_spec(DATA / name)
    lam = spec.algebra().build(Q)
    return spec, lam


@pytest.mark.parametrize("name", sorted(p.name for p in DATA.glob("*.alg")))
def test_data_files_parse(name):
    spec, lam = load(name)
    for b in spec.bimodule_names():
        _, c = spec.bimodule(b, {spec.algebra().name: lam})
        c.check()


def test_case4_file_is_simple_tensor():
    spec, lam = load("a2_case4.alg")
    _, c = spec.bimodule(None, {"kA2": lam})
    assert c.grid == simple_tensor(lam, 0, 1).grid == [[0, 1], [0, 0]]


def test_tensor_block_matches_case4():
    spec, lam = load("a2_tensor.alg")
    _, c = spec.bimodule(None, {"kA2": lam})
    assert c.grid == [[0, 1], [0, 0]]


def test_regular_file():
    spec, lam = load("a2_regular.alg")
    _, c = spec.bimodule(None, {spec.algebra().name: lam})
    assert is_isomorphic(c.module, Bimodule.regular(lam).module)


def test_negative_file_matches_presentation():
    spec, lam = load("negative_a3.alg")
    assert lam.dim == 5
    assert spec.algebra().presentation() == negative_presentation()


def test_graded_file_degrees():
    spec, lam = load("graded_example.alg")
    assert spec.algebra().degrees == {"a": 0, "c": 1}
    assert sorted(lam.degrees) == [0, 0, 0, 1]


def test_comments_and_whitespace():
    text = "# leading comment\n" + A2_TEXT.replace("\n", "   # trailing\n")
    assert parse_spec(text).algebra().arrows == [("a", "2", "1")]


@pytest.mark.parametrize("text,line,column", [
    ('algebra "x" {\n  vertices: 1, 2\n}', 3, 1),
    ('algebra "x" { vertices: 1; arrows: a 1 -> 1; }', 1, 38),
    ('algebra "x" { vertices: 1; }\nbimodule "c" over "x" { cell (1,1): dim one; }', 2, 41),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert str(err.value).startswith(f"line {line}, column {column}: ")


def test_semantic_errors():
    with pytest.raises(SpecError, match="undeclared algebra"):
        parse_spec(A2_TEXT + 'bimodule "c" over "nope" { cell (1,1): dim 1; }')
    with pytest.raises(SpecError, match="declared twice"):
        parse_spec(A2_TEXT + A2_TEXT)
    spec = parse_spec(A2_TEXT + 'bimodule "c" over "kA2" { cell (1,9): dim 1; }')
    with pytest.raises(SpecError, match="unknown vertex"):
        spec.bimodule("c", {"kA2": spec.algebra().build(Q)})
    with pytest.raises(SpecError):
        spec.bimodule("missing", {"kA2": spec.algebra().build(Q)})


def test_bad_action_rejected():
    text = A2_TEXT + 'bimodule "c" over "kA2" {\n cell (1,1): dim 1;\n cell (2,1): dim 1;\n left a (1,1): [[1, 1]];\n}'
    spec = parse_spec(text)
    with pytest.raises(SpecError):
        spec.bimodule("c", {"kA2": spec.algebra().build(Q)})


def test_algebra_round_trip():
    for pres in (negative_presentation(), QUIVERS["a2"](), QUIVERS["a3"]()):
        spec = AlgebraSpec.from_presentation("L", pres)
        again = parse_spec(format_algebra(spec)).algebra()
        assert again.presentation() == pres


@pytest.mark.parametrize("key", ["1-1", "2-1", "10-2", "13-1"])
def test_bimodule_round_trip_a3(key):
    lam = a3_algebra()
    c = table2_bimodule(lam, key, 1)
    text = format_algebra(AlgebraSpec.from_presentation("a3", QUIVERS["a3"]())) + format_bimodule(c, key, "a3")
    spec = parse_spec(text)
    lam2 = spec.algebra().build(Q)
    _, c2 = spec.bimodule(key, {"a3": lam2})
    assert c2.grid == c.grid
    assert format_bimodule(c2, key, "a3") == format_bimodule(c, key, "a3")


@settings(max_examples=25)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(1, 2))
def test_round_trip_preserves_isomorphism_type(i, j, n):
    lam = a2_algebra()
    c = Bimodule.direct_sum([Bimodule.projective(lam, i, j)] * n)
    spec = parse_spec(A2_TEXT + format_bimodule(c, "c", "kA2"))
    _, c2 = spec.bimodule("c", {"kA2": lam})
    assert is_isomorphic(c2.module, c.module)
