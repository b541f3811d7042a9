import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from trivext.algebra import build_path_algebra, dual_numbers
from trivext.bimodule import Bimodule, simple_tensor
from trivext.complexes import Complex, is_quasi_iso, resolve
from trivext.derived import PowerTower, derived_tensor_power
from trivext.engine import injdim_regular, is_cm
from trivext.golden import a2_algebra
from trivext.graded import (QuasiVeronese, Window, build_beilinson, build_trivial_extension, complete_resolution,
                            decompose_p, degree_piece, degree_triangle, graded_dual_piece, graded_hom_dim,
                            graded_is_isomorphic, graded_rhom_pieces_by_formula, is_locally_perfect, minimal_bounds,
                            orlov_membership)
from trivext.linalg import Field
from trivext.modules import FDModule, dual_module, minimal_projective_resolution, random_quotient_of_projective
from trivext.specfile import load_spec, parse_spec

DATA = Path(__file__).resolve().parent.parent / "data"

A2 = a2_algebra()
S = simple_tensor(A2, 0, 1)
D = Bimodule.dual(A2)
P11 = Bimodule.projective(A2, 0, 0)
TE = {name: build_trivial_extension(A2, c) for name, c in [("S", S), ("D", D), ("P11", P11)]}


def stalk(m):
    return resolve(Complex.stalk(m)).projective


def graded_example():
    return load_spec(DATA / "graded_example.alg").algebra().build(Field.rationals())


# construction -----------------------------------------------------------------------

def test_dimensions():
    assert TE["D"].dim == 6
    assert TE["S"].dim == 4
    assert build_trivial_extension(A2, Bimodule.zero(A2)).dim == A2.dim


@pytest.mark.parametrize("name", sorted(TE))
def test_grading_is_multiplicative(name):
    A = TE[name].algebra
    for (x, y), prod in A.products.items():
        for z in prod:
            assert A.degrees[z] == A.degrees[x] + A.degrees[y]
        assert not (A.degrees[x] == 1 and A.degrees[y] == 1 and prod)


def test_base_mismatch_rejected():
    with pytest.raises(ValueError):
        build_trivial_extension(a2_algebra(Field.prime(3)), S)


def test_shift_convention():
    te = TE["S"]
    m = te.graded(FDModule.simple(A2, 0), degree=2)
    assert m.shift(1).piece_dims() == {1: 1}
    assert m.shift(-1).piece_dims() == {3: 1}


def test_self_injective_cases():
    # kA2 + S1(x)S2 is the radical-square-zero cyclic Nakayama algebra, so both simples are CM
    assert injdim_regular(TE["S"]) == 0
    assert injdim_regular(TE["D"]) == 0
    assert injdim_regular(TE["P11"]) == 1
    te = TE["S"]
    assert [is_cm(te.graded(FDModule.simple(A2, v)), te) for v in range(2)] == ["cm", "cm"]
    te = TE["P11"]
    assert is_cm(te.graded(FDModule.simple(A2, 1)), te) == "not_cm"
    assert is_cm(te.regular(), te) == "cm"


# complete resolutions -------------------------------------------------------------------

def complete(name, m, length=6):
    te = TE[name]
    return te, complete_resolution(te, te.graded(m), length=length)


def test_complete_resolution_periods():
    te, cr = complete("S", FDModule.simple(A2, 1), length=4)
    assert cr.acyclic_on_interior()
    assert cr.period() == 2 and cr.graded_period() == (2, -1)
    _, cr = complete("P11", FDModule.projective(A2, [0]))
    assert cr.period() == 1
    _, cr = complete("D", FDModule.simple(A2, 0))
    assert cr.graded_period() == (4, -3)


def test_decompose_p_of_free_module():
    te = TE["S"]
    W = Window(te.algebra, 0, 2)
    P = Complex.stalk(W.projective([(0, 0), (1, 0)]))
    assert {i: decompose_p(te, (W, P), i).cohomology_dims() for i in range(-1, 3)} == {
        -1: {}, 0: {0: 3}, 1: {}, 2: {}}
    P = Complex.stalk(W.projective([(0, 1), (1, 1)]))
    assert {i: decompose_p(te, (W, P), i).cohomology_dims() for i in range(-1, 3)} == {
        -1: {}, 0: {}, 1: {0: 3}, 2: {}}


def test_degree_triangle_detects_cohomology():
    te = TE["S"]
    W = Window(te.algebra, 0, 1)
    P = Complex.stalk(W.projective([(0, 0), (1, 0)]))
    assert not is_quasi_iso(degree_triangle(te, (W, P), 0))
    assert not is_quasi_iso(degree_triangle(te, (W, P), 1))
    assert is_quasi_iso(degree_triangle(te, (W, P), 3))


RESOLUTIONS = [("S", FDModule.simple(A2, 1)), ("D", FDModule.simple(A2, 0)), ("D", FDModule.simple(A2, 1)),
               ("P11", FDModule.projective(A2, [0]))]


def _degrees(cr):
    return sorted({cr.window.split(w)[1] for t in cr.complex.terms.values() for w in t.proj})


@pytest.mark.parametrize("name,m", RESOLUTIONS)
def test_degree_triangle_iff_acyclic_piece(name, m):
    te, cr = complete(name, m)
    for i in _degrees(cr):
        assert is_quasi_iso(degree_triangle(te, cr, i)) == (not degree_piece(te, cr, i))


@pytest.mark.parametrize("name,m", RESOLUTIONS)
def test_black_thunder(name, m):
    te, cr = complete(name, m)
    degs = _degrees(cr)
    for j in degs:
        if any(degree_piece(te, cr, k) for k in degs if k > j):
            continue
        pj = decompose_p(te, cr, j)
        for i in degs:
            if i > j:
                expected = derived_tensor_power(pj, te.c, i - j).shift(i - j)
                assert decompose_p(te, cr, i).cohomology_dims() == expected.cohomology_dims()


@pytest.mark.parametrize("name,m", RESOLUTIONS)
def test_boundedness(name, m):
    te, cr = complete(name, m)
    lb0, ub0 = minimal_bounds(decompose_p(te, cr, 0))
    for i in range(1, 4):
        lb, ub = minimal_bounds(decompose_p(te, cr, i))
        if ub is not None:
            assert ub <= ub0 - i
        lb, ub = minimal_bounds(decompose_p(te, cr, -i))
        if lb is not None:
            assert lb >= lb0 + i


# graded duals, Orlov membership, local perfection ------------------------------------

def test_graded_dual_of_regular_for_self_injective():
    te = TE["D"]
    pieces = {i: graded_dual_piece(te, stalk(FDModule.regular(A2)), i).cohomology_dims() for i in range(-2, 3)}
    assert pieces == {-2: {}, -1: {}, 0: {}, 1: {0: 3}, 2: {}}


@pytest.mark.parametrize("m", [FDModule.simple(A2, 0), FDModule.simple(A2, 1), FDModule.projective(A2, [1]),
                               FDModule.regular(A2)])
@pytest.mark.parametrize("name", sorted(TE))
def test_graded_dual_formula(name, m):
    te = TE[name]
    X = stalk(m)
    formula = graded_rhom_pieces_by_formula(te, X)
    for i in range(-2, 2):
        assert graded_dual_piece(te, X, i).cohomology_dims() == formula[i]
    assert graded_dual_piece(te, X, 2).is_acyclic()


def test_orlov_membership_examples():
    te = TE["S"]
    assert orlov_membership(te, PowerTower(te.c).power(1))
    assert not orlov_membership(te, stalk(FDModule.projective(A2, [1])))
    assert orlov_membership(te, Complex(A2, {}))


def test_locally_perfect():
    dn = build_path_algebra(dual_numbers(), Field.rationals())
    te0 = build_trivial_extension(dn, Bimodule.zero(dn))
    assert not is_locally_perfect(te0, te0.graded(FDModule.simple(dn, 0)))
    assert is_locally_perfect(te0, te0.regular())
    te = TE["S"]
    assert is_locally_perfect(te, te.graded(FDModule.simple(A2, 0)))
    assert is_locally_perfect(te, te.regular())


# quasi-Veronese ----------------------------------------------------------------------

def test_beilinson_dimensions():
    G = graded_example()
    d = [sum(1 for x in G.degrees if x == k) for k in range(3)]
    B, Dl = build_beilinson(G, 2)
    assert (B.dim, Dl.dim) == (2 * d[0] + d[1], 2 * d[2] + d[1]) == (7, 1)
    qv = QuasiVeronese(G, 2)
    assert qv.algebra.dim == 8
    B1, D1 = build_beilinson(G, 1)
    assert (B1.dim, D1.dim) == (d[0], d[1])


def test_beilinson_rejects_bad_ell():
    with pytest.raises(ValueError):
        QuasiVeronese(graded_example(), 0)
    text = (DATA / "graded_example.alg").read_text().replace("c = 1", "c = 2")
    G = parse_spec(text).algebra().build(Field.rationals())
    with pytest.raises(ValueError):
        build_beilinson(G, 1)
    assert build_beilinson(G, 2)[1].dim == 2


def _random_graded(W, rng):
    vs = [rng.randrange(W.algebra.n_vertices) for _ in range(rng.randint(1, 2))]
    return W.graded(random_quotient_of_projective(W.algebra, vs, rng.randrange(3), rng))


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_qv_preserves_dims_and_homs(seed):
    G = graded_example()
    qv = QuasiVeronese(G, 2)
    W = Window(G, 0, 3)
    rng = random.Random(seed)
    m, n = _random_graded(W, rng), _random_graded(W, rng)
    qm, qn = qv.transport(m), qv.transport(n)
    assert qm.dim == m.dim
    for i, k in qm.piece_dims().items():
        assert k == sum(m.piece_dims().get(2 * i + r, 0) for r in range(2))
    assert graded_hom_dim(qm, qn) == graded_hom_dim(m, n)
    assert graded_is_isomorphic(qv.transport(m.shift(-2)), qm.shift(-1))


def test_qv_ell_one_is_identity_on_pieces():
    G = graded_example()
    rng = random.Random(3)
    m = _random_graded(Window(G, 0, 2), rng)
    assert QuasiVeronese(G, 1).transport(m).piece_dims() == m.piece_dims()


# Iwanaga: finite pd iff finite injdim ------------------------------------------------------

@pytest.mark.parametrize("name", sorted(TE))
def test_iwanaga_pd_iff_injdim(name):
    te = TE[name]
    W = Window(te.algebra, 0, 2)
    rng = random.Random(7)
    for _ in range(20):
        gm = _random_graded(W, rng)
        pd = minimal_projective_resolution(gm.module, cap=10).status.kind
        injd = minimal_projective_resolution(dual_module(gm.module), cap=10).status.kind
        assert "undetermined" not in (pd, injd)
        assert (pd == "finite") == (injd == "finite")
