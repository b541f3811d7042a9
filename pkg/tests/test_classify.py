from functools import cache

import pytest

from trivext.bimodule import Bimodule, simple_tensor
from trivext.classify import (QUIVERS, ClassificationRun, _k0_action, _k0_restricts_invertibly, _preserves_t,
                              classify_asid_bimodules, enumerate_candidates, enumerate_thick_subcats_dynkin, match_a2,
                              negative_search, quiver_algebra, verify_a2)
from trivext.complexes import Complex, resolve
from trivext.engine import asid_verdict
from trivext.golden import TABLE2, a2_algebra, a3_algebra, table2_bimodule
from trivext.linalg import Field
from trivext.modules import FDModule, is_isomorphic
from trivext.specfile import format_bimodule, parse_spec

Q = Field.rationals()


@cache
def a2_run():
    return classify_asid_bimodules(ClassificationRun(quiver="a2", field="F2", cap=1))


def stalk(m):
    return resolve(Complex.stalk(m)).projective


def test_thick_subcategory_counts():
    assert len(enumerate_thick_subcats_dynkin(quiver_algebra("a1", Q))) == 2
    a2 = enumerate_thick_subcats_dynkin(a2_algebra())
    assert len(a2) == 5
    assert sorted(map(sorted, a2)) == sorted(map(sorted, [["S2", "P1", "P2"], ["P1"], ["P2"], ["S2"], []]))
    assert len(enumerate_thick_subcats_dynkin(a3_algebra())) == 14


def test_thick_subcategories_need_dynkin():
    with pytest.raises(ValueError):
        enumerate_thick_subcats_dynkin(quiver_algebra("a3rel", Q))


def test_candidate_count_a2():
    assert a2_run().candidates == 38
    lam = quiver_algebra("a2", Field.prime(2))
    assert sum(1 for _ in enumerate_candidates(lam, QUIVERS["a2"](), 1)) == 38


def test_a2_classification_matches_golden():
    res = a2_run()
    gold = match_a2(res)
    assert gold.ok, [str(d) for d in gold.diffs]
    groups = {k: sorted(f.index for f in v) for k, v in res.groups().items()}
    assert groups == {(): [1, 6, 20], ("P1",): [14], ("P2",): [3], ("S2",): [4], ("S2", "P1", "P2"): [18, 24]}


def test_a2_findings_agree_across_sources():
    for f in a2_run().asid():
        assert f.alpha_r == f.alpha_ell
        assert len(set(f.alpha_sources.values())) == 1


@pytest.mark.parametrize("field", [Field.prime(2), Field.prime(3), Q])
def test_a2_golden_is_field_independent(field):
    gold = verify_a2(field=field)
    assert gold.ok, [str(d) for d in gold.diffs]


def test_findings_round_trip_through_spec_text():
    lam = quiver_algebra("a2", Q)
    for f in a2_run().asid():
        c = f.candidate.to_bimodule(lam)
        text = 'algebra "a2" { vertices: 1, 2; arrows: a: 2 -> 1; }\n' + format_bimodule(c, f"#{f.index}", "a2")
        spec = parse_spec(text)
        lam2 = spec.algebra().build(Q)
        _, c2 = spec.bimodule(None, {"a2": lam2})
        assert c2.grid == c.grid
        assert asid_verdict(lam2, c2).verdict == f.verdict


@pytest.mark.parametrize("key", ["1-1", "4-1", "8-2", "10-1", "12-2", "13-2"])
def test_table2_spot_checks(key):
    lam = a3_algebra()
    r = asid_verdict(lam, table2_bimodule(lam, key, 1))
    assert r.verdict == "ig_infinite_gldim"
    assert r.alpha_r == r.alpha_ell and r.sources_agree


def test_table2_families_share_t():
    lam = a3_algebra()
    for fam in ("6", "9"):
        keys = [k for k in TABLE2 if k.split("-")[0] == fam]
        ts = {tuple(sorted(asid_verdict(lam, table2_bimodule(lam, k, 1)).t_generators())) for k in keys}
        assert len(ts) == 1


# the negative example ------------------------------------------------------------------

def test_negative_search_finds_nothing():
    rep = negative_search(cap=1, field="F2")
    assert rep.ok and rep.hits == []
    assert rep.candidates == 5931
    assert rep.prefiltered == 0
    assert rep.rejected == {"row3_nonzero": 5650, "row1_zero": 11, "k0_not_invertible_on_T": 260,
                            "image_outside_T": 0, "rhom_not_preserved": 10}
    assert sum(rep.rejected.values()) == rep.candidates


def test_t_filters_accept_a_genuine_asid_bimodule():
    # over kA2 the case S1(x)S2 has T = thick(S2) and kernel thick(P2)
    lam = a2_algebra()
    S2, P2 = FDModule.simple(lam, 1), FDModule.projective(lam, [1])
    assert _preserves_t({"S2": stalk(S2)}, stalk(P2), simple_tensor(lam, 0, 1), 8) is None
    assert _k0_restricts_invertibly([S2.vdims], _k0_action(lam, simple_tensor(lam, 0, 1).grid))


def test_t_filters_reject_the_wrong_subcategory():
    lam = a2_algebra()
    S2, P2 = FDModule.simple(lam, 1), FDModule.projective(lam, [1])
    c = Bimodule.projective(lam, 0, 0)  # T = thick(P1), kernel thick(S2)
    assert _preserves_t({"S2": stalk(S2)}, stalk(P2), c, 8) is not None
    assert not _k0_restricts_invertibly([S2.vdims], _k0_action(lam, c.grid))


def test_k0_action_of_regular_is_identity():
    lam = a3_algebra()
    act = _k0_action(lam, Bimodule.regular(lam).grid)
    assert act.tolist() == [[1 if i == j else 0 for j in range(3)] for i in range(3)]


def test_isomorphic_findings_are_deduplicated():
    res = a2_run()
    lam = quiver_algebra("a2", Q)
    mods = [f.candidate.to_bimodule(lam).module for f in res.asid()]
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            assert mods[i].vdims != mods[j].vdims or not is_isomorphic(mods[i], mods[j])
