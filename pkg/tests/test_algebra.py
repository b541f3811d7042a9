import itertools

import pytest
from hypothesis import given, strategies as st

from trivext.algebra import (PathPresentation, Quiver, build_path_algebra, dual_numbers, enveloping,
                             k_dual_bimodule, opposite, point, quiver_a2, quiver_a3,
                             quiver_a3_linear_with_relation)
from trivext.bimodule import Bimodule
from trivext.linalg import Field


def test_a2_path_algebra(a2):
    assert a2.dim == 3
    assert set(a2.labels) == {"e1", "e2", "a"}
    assert a2.cartan() == [[1, 0], [1, 1]]


def test_point_and_a3(Q):
    assert build_path_algebra(point(), Q).dim == 1
    assert build_path_algebra(quiver_a3(), Q).dim == 5


def test_relation_kills_path(a3rel):
    assert a3rel.dim == 5
    assert a3rel.between(2, 0) == ()  # e3 L e1 = 0 because b*a = 0


def test_opposite(a2, a3):
    o = opposite(a2)
    assert o.cartan() == [list(r) for r in zip(*a2.cartan())]
    assert opposite(opposite(a3)).products == a3.products
    k = build_path_algebra(dual_numbers(), Field.rationals())
    assert opposite(k).products == k.products


def test_enveloping(Q, a2, a3):
    assert enveloping(build_path_algebra(point(), Q)).dim == 1
    assert enveloping(a2).dim == 9
    e = enveloping(a3)
    assert e.dim == 25 and e.n_vertices == 9


def test_k_dual(Q, a2, a3):
    k = build_path_algebra(point(), Q)
    assert k_dual_bimodule(k).grid == [[1]]
    assert Bimodule.regular(a2).grid == [[1, 0], [1, 1]]
    assert k_dual_bimodule(a2).grid == [[1, 1], [0, 1]]
    assert k_dual_bimodule(a3).dim == 5


def test_rejects_bad_presentations(Q):
    loop = PathPresentation(Quiver(("1",), (("x", "1", "1"),)))
    with pytest.raises(ValueError, match="infinite"):
        build_path_algebra(loop, Q)
    short = PathPresentation(Quiver(("1", "2"), (("a", "2", "1"),)), (((("a",), 1),),))
    with pytest.raises(ValueError, match="admissible"):
        build_path_algebra(short, Q)
    with pytest.raises(ValueError):
        Quiver(("1",), (("a", "1", "9"),))


PRESENTATIONS = [point, quiver_a2, quiver_a3, quiver_a3_linear_with_relation, dual_numbers]


@pytest.mark.parametrize("pres", PRESENTATIONS, ids=lambda p: p.__name__)
@pytest.mark.parametrize("field", ["Q", "F2", "F3"])
def test_associative_with_unit(pres, field):
    alg = build_path_algebra(pres(), Field.from_name(field))
    alg.check()
    one = alg.unit
    for i in range(alg.dim):
        x = alg.basis_element(i)
        assert alg.mul(one, x) == x == alg.mul(x, one)
    for i, j, k in itertools.product(range(alg.dim), repeat=3):
        x, y, z = (alg.basis_element(t) for t in (i, j, k))
        assert alg.mul(alg.mul(x, y), z) == alg.mul(x, alg.mul(y, z))


@pytest.mark.parametrize("pres", PRESENTATIONS, ids=lambda p: p.__name__)
def test_idempotents_orthogonal(pres, Q):
    alg = build_path_algebra(pres(), Q)
    for v, w in itertools.product(range(alg.n_vertices), repeat=2):
        ev, ew = alg.basis_element(alg.idempotents[v]), alg.basis_element(alg.idempotents[w])
        assert alg.mul(ev, ew) == (ev if v == w else {})


@given(st.lists(st.sampled_from(["a", "b"]), min_size=0, max_size=4))
def test_relations_hold(word):
    alg = build_path_algebra(quiver_a3_linear_with_relation(), Field.rationals())
    # b*a is zero, so every word containing b followed by a is zero
    x = alg.unit
    for letter in word:
        x = alg.mul(x, alg.basis_element(alg.labels.index(letter)))
    if "ba" in "".join(word):
        assert all(c == 0 for c in x.values())
