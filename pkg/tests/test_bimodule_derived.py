import pytest
from hypothesis import given, settings, strategies as st

from trivext.bimodule import (Bimodule, bimodule_complex, bimodule_projective_resolution, derived_tensor,
                              left_view_complex, right_view_complex, simple_tensor, tensor_bimodules, tensor_complex, tensor_power)
from trivext.complexes import Complex, is_quasi_iso, resolve, rhom_dims
from trivext.derived import (PowerTower, alpha_by_t_map, annihilated_by, counit_eps_left, derived_tensor_power,
                             four_way, lambda_r_map, regular_stalk, t_map_is_quasi_iso)
from trivext.golden import a2_algebra
from trivext.graded import TrivialExtension, gamma_map
from trivext.modules import FDModule

A2 = a2_algebra()
L = Bimodule.regular(A2)
D = Bimodule.dual(A2)
S = simple_tensor(A2, 0, 1)
P21 = Bimodule.projective(A2, 1, 0)
P1, P2 = FDModule.projective(A2, [0]), FDModule.projective(A2, [1])
S2 = FDModule.simple(A2, 1)

CASES = {"L": L, "D": D, "S": S, "P21": P21}
# least a at which every route reports a quasi-isomorphism
FIRST_ISO = {"L": 0, "D": 0, "S": 1, "P21": 2}


def stalk(m):
    return resolve(Complex.stalk(m)).projective


def test_grids():
    assert Bimodule.projective(A2, 0, 0).grid == [[1, 0], [1, 0]]
    assert L.grid == [[1, 0], [1, 1]]
    assert D.grid == [[1, 1], [0, 1]]
    assert S.grid == [[0, 1], [0, 0]]


@pytest.mark.parametrize("c,length", [(Bimodule.projective(A2, 0, 0), 0), (L, 1), (D, 1), (S, 2)])
def test_bimodule_resolution_lengths(c, length):
    st_ = bimodule_projective_resolution(c).status
    assert st_.kind == "finite" and st_.length == length


def test_derived_tensor_examples():
    bc = bimodule_complex
    assert derived_tensor(bc(S), bc(S), A2).cohomology_dims() == {-1: 1}
    assert derived_tensor(bc(L), bc(S), A2).cohomology_dims() == {0: 1}
    assert derived_tensor(bc(D), bc(Bimodule.zero(A2)), A2).is_acyclic()


def test_derived_tensor_restricts_to_right_modules():
    right = right_view_complex(derived_tensor(bimodule_complex(S), bimodule_complex(S), A2), A2)
    assert right.cohomology_dims() == derived_tensor_power(stalk(S.right_view()), S, 1).cohomology_dims()


SAMPLES = [L, D, S, simple_tensor(A2, 1, 0), P21, Bimodule.projective(A2, 0, 0)]


@settings(max_examples=20)
@given(st.sampled_from(range(len(SAMPLES))), st.sampled_from(range(len(SAMPLES))))
def test_restriction_compatibility(i, j):
    X, Y = SAMPLES[i], SAMPLES[j]
    T = derived_tensor(bimodule_complex(X), bimodule_complex(Y), A2)
    right = derived_tensor_power(stalk(X.right_view()), Y, 1)
    assert right_view_complex(T, A2).cohomology_vdims() == right.cohomology_vdims()
    left = derived_tensor_power(stalk(Y.left_view()), X.opposite(), 1)
    assert left_view_complex(T, A2).cohomology_vdims() == left.cohomology_vdims()


def test_tensor_power_examples():
    assert tensor_power(S, 0).cohomology_dims() == {0: 3}
    assert [tensor_power(P21, a).cohomology_dims() for a in range(3)] == [{0: 3}, {0: 1}, {}]
    assert tensor_power(P21, 2).is_acyclic()


def test_tensor_power_one_is_c():
    for c in CASES.values():
        assert tensor_power(c, 1).cohomology_dims() == ({0: c.dim} if c.dim else {})


def test_tensor_bimodules_with_regular_is_identity():
    for c in (D, S, P21):
        assert tensor_bimodules(L, c).grid == c.grid


def test_lambda_r_for_regular_is_quasi_iso():
    assert is_quasi_iso(lambda_r_map(L).map)
    assert is_quasi_iso(lambda_r_map(D).map)


def test_eps_left_resolution_matches():
    eps = counit_eps_left(S)
    assert eps.resolution.status.kind == "finite"
    assert eps.map.source is eps.tensor.complex


@pytest.mark.parametrize("name", sorted(CASES))
def test_four_way_agreement(name):
    c = CASES[name]
    tower = PowerTower(c)
    for a in range(3):
        row = four_way(c, a, tower=tower)
        assert row.agree
        assert row.via_t_map == (a >= FIRST_ISO[name])


@pytest.mark.parametrize("name", sorted(CASES))
def test_alpha_by_t_map(name):
    assert alpha_by_t_map(CASES[name], 3) == FIRST_ISO[name]


@pytest.mark.parametrize("name", sorted(CASES))
def test_t_map_stays_iso(name):
    tower = PowerTower(CASES[name])
    flags = [t_map_is_quasi_iso(tower, a) for a in range(4)]
    first = flags.index(True)
    assert all(flags[first:])


@settings(max_examples=12)
@given(st.sampled_from(sorted(CASES)), st.sampled_from(["P1", "P2", "S2"]), st.integers(0, 2))
def test_kernel_chain_increases(name, mod, a):
    X = stalk({"P1": P1, "P2": P2, "S2": S2}[mod])
    c = CASES[name]
    if annihilated_by(X, c, a):
        assert annihilated_by(X, c, a + 1)


def test_adjunction_dimensions():
    mods = [P1, P2, S2]
    for c in CASES.values():
        eps = counit_eps_left(c)
        for M in mods:
            PM = stalk(M)
            left = resolve(tensor_complex(PM, eps.dual, A2).complex).projective
            for N in mods:
                lhs = rhom_dims(left, Complex.stalk(N))
                rhs = rhom_dims(PM, derived_tensor_power(Complex.stalk(N), c, 1))
                assert lhs == rhs


def test_gamma_map_examples():
    te = TrivialExtension(A2, D)
    assert gamma_map(te, regular_stalk(A2)).is_quasi_iso
    te = TrivialExtension(A2, S)
    assert not gamma_map(te, stalk(P2)).is_quasi_iso
    assert gamma_map(te, stalk(S2)).is_quasi_iso
    assert gamma_map(te, Complex(A2, {})).is_quasi_iso
