import random
from functools import cache

import pytest

from trivext.bimodule import Bimodule, left_simple, simple_tensor
from trivext.classify import quiver_algebra
from trivext.complexes import Complex, resolve, rhom_dims
from trivext.derived import annihilated_by, derived_tensor_power
from trivext.engine import (Caps, analyze_tensor_bimodule, asid_verdict, enumerate_ind_cm, has_finite_gldim,
                            in_ker_varpi, injdim_regular, k0_rank_report, ker_varpi, random_perfect_complex,
                            semiorthogonal_check, stable_hom_table, stable_hom_via_tau, t_membership, t_part, tau)
from trivext.golden import A2_GOLDEN, a2_algebra
from trivext.graded import TrivialExtension
from trivext.linalg import Field
from trivext.modules import FDModule

A2 = a2_algebra()
GOLDEN = {g.name: g for g in A2_GOLDEN}


@cache
def report(name):
    return asid_verdict(A2, GOLDEN[name].build(A2))


@cache
def cm_report(name):
    return enumerate_ind_cm(report(name).trivial_extension)


ASID_IG = [g.name for g in A2_GOLDEN if g.verdict == "ig_infinite_gldim"]


@pytest.mark.parametrize("name", [g.name for g in A2_GOLDEN])
def test_a2_golden_verdicts(name):
    g, r = GOLDEN[name], report(name)
    assert r.verdict == g.verdict
    assert r.alpha_r == r.alpha_ell == g.alpha
    assert r.sources_agree and set(r.alpha_sources) == {"T_map", "socle_formula", "gamma_criterion", "dynkin"}
    assert sorted(r.t_generators()) == sorted(g.t_part)
    assert sorted(r.ker_varpi_generators()) == sorted(g.ker_varpi)


def test_pd_of_restrictions():
    assert (report("S1(x)S2").pd_right, report("S1(x)S2").pd_left) == (1, 1)
    assert (report("S1(x)P2").pd_right, report("S1(x)P2").pd_left) == (0, 1)
    assert (report("L").pd_right, report("L").pd_left) == (0, 0)


@pytest.mark.parametrize("c", [Bimodule.direct_sum([Bimodule.regular(A2)] * 2), Bimodule.projective(A2, 0, 1)])
def test_not_asid(c):
    r = asid_verdict(A2, c)
    assert r.verdict == "not_asid" and not r.is_asid and r.alpha is None


def test_zero_bimodule_convention():
    r = asid_verdict(A2, Bimodule.zero(A2))
    assert r.is_asid and r.alpha == 0
    assert "socle_formula" in r.alpha_sources
    assert any("C = 0" in n for n in r.notes)


def test_gldim_of_base():
    assert has_finite_gldim(A2) is True
    assert has_finite_gldim(quiver_algebra("a3rel", Field.rationals())) is True


# Cohen-Macaulay modules -----------------------------------------------------------

def test_cm_counts():
    assert (cm_report("S1(x)S2").count, cm_report("S1(x)S2").graded_count) == (2, 2)
    assert cm_report("Le1(x)e1L").count == 1
    assert (cm_report("L").count, cm_report("L").graded_count) == (3, 3)
    for name in ("S1(x)S2", "L", "Le1(x)e1L"):
        assert cm_report(name).omega_permutes()


def test_case4_cm_modules_are_the_simples():
    cm = cm_report("S1(x)S2")
    assert sorted(m.vdims for m in cm.ind_cm) == [(0, 1), (1, 0)]
    assert cm.finite_cm_type and cm.injdim == 0


# K0 ------------------------------------------------------------------------------

@pytest.mark.parametrize("name,rank", [("S1(x)S2", 1), ("L", 2), ("Le1(x)e1L", 1), ("Le2(x)e2L", 1)])
def test_k0_rank(name, rank):
    k0 = k0_rank_report(report(name), cm_report(name))
    assert k0.rank == rank and k0.exact
    assert k0.holds and k0.rank <= k0.bound == A2.n_vertices
    assert k0.orbits_agree


def test_k0_finite_gldim_is_zero():
    k0 = k0_rank_report(report("Le2(x)e1L"))
    assert k0.rank == 0 and k0.holds


# semiorthogonality, tau and T ------------------------------------------------------

def stalk(m):
    return resolve(Complex.stalk(m)).projective


@pytest.mark.parametrize("name", ASID_IG)
def test_semiorthogonal(name):
    assert semiorthogonal_check(report(name), width=10)


@pytest.mark.parametrize("name", ASID_IG)
def test_t_and_ker_members(name):
    r = report(name)
    for m in t_part(r):
        assert t_membership(stalk(m), r)
        assert not in_ker_varpi(stalk(m), r)
    for k in ker_varpi(r):
        assert in_ker_varpi(stalk(k), r)
        assert not t_membership(stalk(k), r)


@pytest.mark.parametrize("name", ["S1(x)S2", "Le1(x)e1L", "Le2(x)e2L"])
def test_tau_cone_in_kernel(name):
    r = report(name)
    rng = random.Random(11)
    inv = r.dynkin.inventory
    for _ in range(5):
        X = random_perfect_complex(A2, rng, inv)
        t = tau(X, r)
        assert t_membership(resolve(t.complex).projective, r, check_gamma=False)
        assert in_ker_varpi(resolve(t.cone()).projective, r)


def test_varpi_shift_compatibility():
    r = report("S1(x)S2")
    mods = [stalk(m) for m in t_part(r)] + [stalk(FDModule.projective(A2, [0]))]
    for X in mods:
        for Y in mods:
            XC = derived_tensor_power(X, r.c, 1).shift(-1)
            YC = derived_tensor_power(Y, r.c, 1).shift(-1)
            assert stable_hom_via_tau(XC, YC, r) == stable_hom_via_tau(X, Y, r)


def test_stable_hom_table_case4():
    rows = stable_hom_table(report("S1(x)S2"), cm_report("S1(x)S2"), shifts=(-1, 0, 1))
    assert rows and all(row.agrees for row in rows)
    assert sum(row.direct for row in rows) == 2


# the tensor bimodule case ------------------------------------------------------------

def test_tensor_case_simple_simple():
    ta = analyze_tensor_bimodule(A2, left_simple(A2, 0), FDModule.simple(A2, 1))
    assert ta.p == 1 and ta.is_ig and ta.exceptional and ta.dual_matches
    assert len(ta.predicted_cm) == 2 and ta.cm_report.count == 2 and ta.agrees
    assert ta.period == 2
    assert ta.bimodule.grid == simple_tensor(A2, 0, 1).grid


def test_tensor_case_finite_gldim():
    ta = analyze_tensor_bimodule(A2, FDModule.projective(A2.op, [1]), FDModule.projective(A2, [0]))
    assert ta.gldim_finite and ta.tensor_cohomology == {}


def test_tensor_case_base_field():
    k = quiver_algebra("a1", Field.rationals())
    ta = analyze_tensor_bimodule(k, FDModule.simple(k.op, 0), FDModule.simple(k, 0))
    assert ta.p == 0 and ta.is_ig and ta.agrees and ta.cm_report.count == 1


def test_tensor_case_rejects_zero():
    with pytest.raises(ValueError):
        analyze_tensor_bimodule(A2, FDModule.zero(A2.op), FDModule.simple(A2, 1))


def test_gorenstein_symmetry_on_tensor_family():
    for n in (left_simple(A2, 0), FDModule.projective(A2.op, [0]), FDModule.injective(A2.op, 1)):
        for m in (FDModule.simple(A2, 1), FDModule.projective(A2, [1]), FDModule.simple(A2, 0)):
            te = TrivialExtension(A2, Bimodule.tensor_of(n, m))
            assert (injdim_regular(te) is None) == (injdim_regular(te.op) is None)


def test_kernel_nilpotence():
    for name in ASID_IG:
        r = report(name)
        for k in ker_varpi(r):
            assert annihilated_by(stalk(k), r.c, r.alpha)
            assert derived_tensor_power(stalk(k), r.c, r.alpha).is_acyclic()


def test_hom_dims_preserved_on_t():
    for name in ASID_IG:
        r = report(name)
        gens = [stalk(m) for m in t_part(r)]
        for X in gens:
            for Y in gens:
                XC, YC = derived_tensor_power(X, r.c, 1), derived_tensor_power(Y, r.c, 1)
                assert t_membership(resolve(XC).projective, r, check_gamma=False)
                assert rhom_dims(resolve(XC).projective, YC) == rhom_dims(X, Y)


def test_caps_default_a_cap():
    assert Caps().a_cap(A2) == 6
    assert Caps(cap_a=3).a_cap(A2) == 3
