from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from trivext.linalg import Field, Matrix, inverse, nullspace_basis, rank, rref, solve

FIELDS = [Field.rationals(), Field.prime(2), Field.prime(3), Field.prime(7)]


def test_field_names():
    assert Field.from_name("Q").characteristic == 0
    assert Field.from_name("F5") == Field.prime(5)
    with pytest.raises(ValueError):
        Field.from_name("F4")
    with pytest.raises(ValueError):
        Field.from_name("R")


def test_rank_examples(Q):
    assert rank(Matrix.identity(Q, 2)) == 2
    assert rank(Matrix.zeros(Q, 2, 2)) == 0
    assert rank(Matrix.from_rows(Q, [[1, 2], [2, 4]])) == 1


def test_nullspace_examples(Q, F2):
    assert nullspace_basis(Matrix.identity(Q, 3)) == []
    assert len(nullspace_basis(Matrix.zeros(Q, 2, 3))) == 3
    assert nullspace_basis(Matrix.from_rows(F2, [[1, 1]])) == [(1, 1)]


def test_solve_examples(Q):
    b = (Fraction(3), Fraction(-1, 2))
    assert solve(Matrix.identity(Q, 2), b) == b
    assert solve(Matrix.zeros(Q, 2, 2), [1, 0]) is None
    assert solve(Matrix.from_rows(Q, [[2]]), [1]) == (Fraction(1, 2),)
    with pytest.raises(ValueError):
        solve(Matrix.identity(Q, 2), [1])


def test_prime_field_arithmetic():
    F3 = Field.prime(3)
    m = Matrix.from_rows(F3, [[1, 1], [1, -1]])
    assert rank(m) == 2
    assert inverse(m) @ m == Matrix.identity(F3, 2)
    assert rank(Matrix.from_rows(Field.prime(2), [[1, 1], [1, -1]])) == 1


@st.composite
def matrices(draw, field=None):
    F = field or draw(st.sampled_from(FIELDS))
    r = draw(st.integers(0, 5))
    c = draw(st.integers(0, 5))
    rows = draw(st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(F, rows, ncols=c)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(nullspace_basis(m)) == m.cols
    assert 0 <= rank(m) <= min(m.rows, m.cols)
    assert rank(m) == rank(m.T)


@given(matrices())
def test_nullspace_vectors_are_killed(m):
    for v in nullspace_basis(m):
        col = Matrix(m.field, m.cols, 1, list(v))
        assert (m @ col).is_zero()


@given(matrices(), st.data())
def test_solve_is_exact(m, data):
    b = data.draw(st.lists(st.integers(-3, 3), min_size=m.rows, max_size=m.rows))
    x = solve(m, b)
    if x is not None:
        col = Matrix(m.field, m.cols, 1, list(x)) if m.cols else Matrix.zeros(m.field, 0, 1)
        lhs = (m @ col).entries if m.cols else (m.field.zero,) * m.rows
        assert tuple(lhs) == tuple(m.field(v) for v in b)
    else:
        aug = Matrix.from_rows(m.field, [list(r) + [v] for r, v in zip(m.tolist(), b)], ncols=m.cols + 1)
        assert rank(aug) == rank(m) + 1


@given(matrices())
def test_rref_deterministic(m):
    assert rref(m) == rref(Matrix.from_rows(m.field, m.tolist(), ncols=m.cols))
