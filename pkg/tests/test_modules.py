import random

import pytest
from hypothesis import given, settings, strategies as st

from strategies import euler_form, representations
from trivext.algebra import build_path_algebra, dual_numbers
from trivext.complexes import (ChainMap, Complex, cohomology_module, cone, identity_map, is_quasi_iso, resolve,
                               zero_map)
from trivext.golden import a2_algebra, a3_algebra
from trivext.linalg import Field, Matrix
from trivext.modules import (FDModule, decompose, direct_sum, ext_dim, hom_matrices, hom_space, is_indecomposable,
                             is_isomorphic, is_radical_map, minimal_projective_resolution, projective_cover,
                             random_quotient_of_projective)

A2 = a2_algebra()
A3 = a3_algebra()
P1, P2 = FDModule.projective(A2, [0]), FDModule.projective(A2, [1])
S1, S2 = FDModule.simple(A2, 0), FDModule.simple(A2, 1)
I2 = FDModule.injective(A2, 1)


def test_a2_indecomposables():
    assert (P1.vdims, P2.vdims, I2.vdims) == ((1, 0), (1, 1), (0, 1))
    assert is_isomorphic(I2, S2)


def test_hom_space_examples():
    assert len(hom_space(P2, P2)) == 1
    assert len(hom_space(P1, I2)) == 0
    assert len(hom_space(P2, FDModule.zero(A2))) == 0


def test_module_maps_intertwine():
    for f in hom_space(P1, P2):
        f.check()


def test_decompose_examples():
    d = decompose(direct_sum([P1, P1]))
    assert len(d.summands) == 1 and d.summands[0][1] == 2 and is_isomorphic(d.summands[0][0], P1)
    reg = decompose(FDModule.regular(A2))
    assert sorted((s.vdims, k) for s, k in reg.summands) == [((1, 0), 1), ((1, 1), 1)]
    assert [(s.vdims, k) for s, k in decompose(I2).summands] == [((0, 1), 1)]


def test_is_isomorphic_examples():
    assert is_isomorphic(P2, P2)
    assert not is_isomorphic(P1, I2)
    assert is_isomorphic(direct_sum([P1, I2]), direct_sum([I2, P1]))


def test_projective_cover_examples():
    P, pi = projective_cover(P2)
    assert is_isomorphic(P, P2)
    for m in (S2, I2):
        P, pi = projective_cover(m)
        assert is_isomorphic(P, P2)
        assert pi.rows == P.dim and pi.cols == m.dim
    with pytest.raises(ValueError):
        projective_cover(FDModule.zero(A2))


def test_resolution_examples():
    assert minimal_projective_resolution(P2).status.kind == "finite"
    assert minimal_projective_resolution(P2).pd == 0
    r = minimal_projective_resolution(S2)
    assert r.pd == 1
    assert is_isomorphic(r.projectives[0], P2) and is_isomorphic(r.projectives[1], P1)
    k = build_path_algebra(dual_numbers(), Field.rationals())
    st_ = minimal_projective_resolution(FDModule.simple(k, 0)).status
    assert st_.kind == "infinite"


def test_recurrence_witness_is_sound():
    k = build_path_algebra(dual_numbers(), Field.rationals())
    r = minimal_projective_resolution(FDModule.simple(k, 0))
    i, j = r.status.witness
    assert r.syzygies[i].dim and is_isomorphic(r.syzygies[i], r.syzygies[j])


def test_ext_examples():
    assert ext_dim(S2, S1, 1) == 1
    assert ext_dim(S2, S1, 0) == len(hom_space(S2, S1))
    assert ext_dim(P2, S1, 1) == 0
    k = build_path_algebra(dual_numbers(), Field.rationals())
    s = FDModule.simple(k, 0)
    assert [ext_dim(s, s, n) for n in range(4)] == [1, 1, 1, 1]


def test_cone_examples():
    X = Complex.stalk(P2)
    assert cone(identity_map(X)).is_acyclic()
    C = cone(zero_map(Complex(A2, {}), X))
    assert C.cohomology_dims() == {0: P2.dim}
    (f,) = hom_matrices(P1, P2)
    inc = ChainMap(Complex.stalk(P1), Complex.stalk(P2), {0: f})
    C = cone(inc)
    assert C.cohomology_dims() == {0: 1}
    assert is_isomorphic(cohomology_module(C, 0), S2)


def test_quasi_iso_examples():
    X = Complex.stalk(S2)
    assert is_quasi_iso(identity_map(X))
    assert not is_quasi_iso(zero_map(X, X))
    res = resolve(X)
    assert is_quasi_iso(res.comparison)


def _modules(alg, max_dim=2):
    return representations(alg, max_dim=max_dim)


@given(st.sampled_from([A2, A3]).flatmap(lambda a: st.tuples(_modules(a), _modules(a))))
def test_euler_form_on_hereditary(pair):
    m, n = pair
    alg = m.algebra
    hom = len(hom_matrices(m, n))
    assert hom == ext_dim(m, n, 0)
    assert hom - ext_dim(m, n, 1) == euler_form(alg, m.vdims, n.vdims)
    assert ext_dim(m, n, 2) == 0


@given(st.sampled_from([A2, A3]).flatmap(_modules))
def test_decompose_resums(m):
    d = decompose(m)
    parts = [s for s, k in d.summands for _ in range(k)]
    assert all(is_indecomposable(s) for s, _ in d.summands)
    assert is_isomorphic(direct_sum(parts), m)


@given(st.sampled_from([A2, A3]).flatmap(_modules))
def test_resolution_is_minimal(m):
    r = minimal_projective_resolution(m)
    assert r.status.kind == "finite"
    for k, d in enumerate(r.differentials):
        assert is_radical_map(d, r.projectives[k])


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_random_quotients_over_relations(seed):
    from trivext.golden import negative_algebra
    alg = negative_algebra()
    rng = random.Random(seed)
    m = random_quotient_of_projective(alg, [rng.randrange(3) for _ in range(2)], 2, rng)
    m.check()
    r = minimal_projective_resolution(m)
    assert r.pd is not None and r.pd <= 2
    for k, d in enumerate(r.differentials[:-1]):
        nxt = r.differentials[k + 1]
        assert (nxt @ d).is_zero()


def test_augmentation_is_a_module_map():
    r = minimal_projective_resolution(S2)
    aug = r.augmentation
    for g in A2.generators:
        assert r.projectives[0].act(g) @ aug == aug @ S2.act(g)
    assert isinstance(aug, Matrix)
