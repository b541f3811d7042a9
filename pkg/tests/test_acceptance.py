"""The nine acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line (also under
output capture) before asserting, so a plain ``pytest tests/test_acceptance.py``
shows the verdicts.  Heavy intermediate results are computed once and shared.
"""

import random
import time
from functools import cache
from pathlib import Path

import pytest

from trivext.bimodule import (Bimodule, bimodule_complex, derived_tensor, left_simple, left_view_complex,
                              right_view_complex, simple_tensor, tensor_power)
from trivext.classify import ClassificationRun, classify_asid_bimodules, match_a2, negative_search, verify_a3
from trivext.complexes import Complex, resolve
from trivext.derived import annihilated_by, derived_tensor_power
from trivext.engine import (Caps, analyze_tensor_bimodule, asid_verdict, enumerate_ind_cm, in_ker_varpi,
                            injdim_regular, k0_rank_report, ker_varpi, random_perfect_complex, semiorthogonal_check,
                            stable_hom_table, t_membership, t_part, tau)
from trivext.golden import A2_GOLDEN, a2_algebra
from trivext.graded import (QuasiVeronese, Window, build_trivial_extension, complete_resolution, decompose_p,
                            degree_piece, graded_hom_dim, graded_is_isomorphic, minimal_bounds)
from trivext.linalg import Field
from trivext.modules import FDModule, dual_module, minimal_projective_resolution, random_quotient_of_projective
from trivext.specfile import load_spec

DATA = Path(__file__).resolve().parent.parent / "data"
A2 = a2_algebra()
THREE_SOURCES = ("T_map", "socle_formula", "gamma_criterion")


def verdict(capsys, n: int, ok: bool, title: str, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def stalk(m):
    return resolve(Complex.stalk(m)).projective


@cache
def a2_classification():
    t = time.perf_counter()
    res = classify_asid_bimodules(ClassificationRun(quiver="a2", field="F2", cap=1))
    return res, time.perf_counter() - t


@cache
def a3_table():
    t = time.perf_counter()
    gold = verify_a3((1,))
    return gold, time.perf_counter() - t


@cache
def a2_reports():
    return {g.name: asid_verdict(A2, g.build(A2)) for g in A2_GOLDEN}


def test_criterion_1_a2_golden_classification(capsys):
    res, secs = a2_classification()
    gold = match_a2(res)
    ok = gold.ok and secs < 60
    detail = (f"{res.candidates} candidates, {len(res.asid())} asid, {len(gold.diffs)} diffs, {secs:.1f}s"
              + ("" if gold.ok else f" {[str(d) for d in gold.diffs]}"))
    verdict(capsys, 1, ok, "A2 golden classification", detail)


def test_criterion_2_a3_table_spot_checks(capsys):
    gold, secs = a3_table()
    rows = gold.details["rows"]
    all_ig = all(r.verdict == "ig_infinite_gldim" for r in rows)
    ok = gold.ok and all_ig and secs < 600
    detail = (f"{len(rows)} entries at n = 1, {len(gold.details['families'])} families, "
              f"{len(gold.diffs)} diffs, {secs:.1f}s" + ("" if gold.ok else f" {[str(d) for d in gold.diffs]}"))
    verdict(capsys, 2, ok, "A3 table spot checks", detail)


def test_criterion_3_negative_example(capsys):
    rep = negative_search(cap=1, field="F2")
    ok = rep.ok and rep.seconds < 600
    detail = f"{rep.statement()}; filtered {rep.rejected}; {rep.seconds:.1f}s"
    verdict(capsys, 3, ok, "negative example over k[1<-2<-3]/(ba)", detail)


def test_criterion_4_three_way_alpha(capsys):
    res, _ = a2_classification()
    gold, _ = a3_table()
    instances = [(f"a2#{f.index}", f.alpha_sources, f.alpha_r, f.alpha_ell) for f in res.asid()]
    instances += [(f"a3 {r.key}", r.alpha_sources, r.alpha, r.alpha) for r in gold.details["rows"]]
    bad = []
    for name, src, ar, al in instances:
        vals = [src.get(k) for k in THREE_SOURCES]
        if None in vals or len(set(vals)) != 1 or ar != al or vals[0] != ar:
            bad.append((name, src, ar, al))
    lr_bad = [g.name for g in A2_GOLDEN if a2_reports()[g.name].alpha_r != a2_reports()[g.name].alpha_ell]
    ok = not bad and not lr_bad
    verdict(capsys, 4, ok, "three-way asid number agreement",
            f"{len(instances)} instances, {len(bad) + len(lr_bad)} disagreements {bad[:3]}")


def test_criterion_5_tensor_bimodule_case(capsys):
    t = time.perf_counter()
    caps = Caps(dim_cap=8)
    ta = analyze_tensor_bimodule(A2, left_simple(A2, 0), FDModule.simple(A2, 1), caps)
    te = build_trivial_extension(A2, ta.bimodule)
    cm = enumerate_ind_cm(te, caps)
    S2 = te.inflate(FDModule.simple(A2, 1))
    found = sorted(m.vdims for m in cm.ind_cm)
    ok = (ta.p == 1 and ta.is_ig and ta.period == 2 and cm.count == 2 and ta.agrees
          and [m.vdims for m in ta.predicted_cm] == [S2.vdims, (1, 0)] and found == [(0, 1), (1, 0)])
    secs = time.perf_counter() - t
    ok = ok and secs < 60
    verdict(capsys, 5, ok, "tensor bimodule S1 (x) S2",
            f"p = {ta.p}, period {ta.period}, ind CM {found} (predicted {len(ta.predicted_cm)}), {secs:.1f}s")


def test_criterion_6_semiorthogonal_decomposition(capsys):
    rng = random.Random(2024)
    failures = []
    for g in A2_GOLDEN:
        r = a2_reports()[g.name]
        inv = r.dynkin.inventory
        if not semiorthogonal_check(r, width=10):
            failures.append((g.name, "a"))
        for _ in range(20):
            X = random_perfect_complex(A2, rng, inv)
            if not in_ker_varpi(resolve(tau(X, r).cone()).projective, r):
                failures.append((g.name, "b"))
                break
        for m in t_part(r):
            if not t_membership(resolve(derived_tensor_power(stalk(m), r.c, 1)).projective, r):
                failures.append((g.name, "c", m.name))
        for k in ker_varpi(r):
            if not derived_tensor_power(stalk(k), r.c, r.alpha).is_acyclic():
                failures.append((g.name, "d", k.name))
    verdict(capsys, 6, not failures, "semiorthogonal decomposition suite",
            f"{len(A2_GOLDEN)} instances x (a)-(d), failures {failures}")


def test_criterion_7_stable_hom_agreement(capsys):
    rows_total, bad = 0, []
    for g in A2_GOLDEN:
        if g.verdict != "ig_infinite_gldim":
            continue
        r = a2_reports()[g.name]
        cm = enumerate_ind_cm(r.trivial_extension)
        rows = stable_hom_table(r, cm, shifts=(-1, 0, 1))
        rows_total += len(rows)
        bad += [(g.name, row) for row in rows if not row.agrees]
    verdict(capsys, 7, rows_total > 0 and not bad, "stable Hom via tau",
            f"{rows_total} CM pairs (with shifts -1..1), {len(bad)} mismatches")


def test_criterion_8_k0_bound(capsys):
    seen, bad = {}, []
    for g in A2_GOLDEN:
        r = a2_reports()[g.name]
        cm = enumerate_ind_cm(r.trivial_extension) if g.verdict == "ig_infinite_gldim" else None
        k0 = k0_rank_report(r, cm)
        seen[g.name] = k0.rank
        if not k0.holds or (cm is not None and not k0.orbits_agree):
            bad.append((g.name, k0))
    specific = seen["S1(x)S2"] == 1 and seen["L"] == 2 and seen["D(L)"] == 2
    verdict(capsys, 8, specific and not bad, "K0 rank bound",
            f"ranks {seen}, bound {A2.n_vertices}, violations {bad}")


# criterion 9 ---------------------------------------------------------------------------

def _d_squared_zero() -> list[str]:
    bad = []
    complexes = []
    for g in A2_GOLDEN:
        c = g.build(A2)
        complexes += [tensor_power(c, a) for a in range(3)]
        complexes += [derived_tensor_power(stalk(FDModule.simple(A2, 1)), c, a) for a in range(3)]
    for m in (FDModule.simple(A2, 0), FDModule.simple(A2, 1), FDModule.injective(A2, 0)):
        complexes.append(stalk(m))
    te = build_trivial_extension(A2, simple_tensor(A2, 0, 1))
    cr = complete_resolution(te, te.graded(FDModule.simple(A2, 1)), length=6)
    complexes.append(cr.complex)
    complexes += [decompose_p(te, cr, i) for i in range(-3, 3)]
    for k, X in enumerate(complexes):
        try:
            X.check()
        except ValueError as e:
            bad.append(f"complex {k}: {e}")
    return bad


def _restriction_compatibility() -> list[str]:
    samples = [Bimodule.regular(A2), Bimodule.dual(A2), simple_tensor(A2, 0, 1), simple_tensor(A2, 1, 0),
               Bimodule.projective(A2, 1, 0), Bimodule.projective(A2, 0, 0)]
    bad = []
    for i, X in enumerate(samples):
        for j, Y in enumerate(samples):
            T = derived_tensor(bimodule_complex(X), bimodule_complex(Y), A2)
            if right_view_complex(T, A2).cohomology_vdims() != \
                    derived_tensor_power(stalk(X.right_view()), Y, 1).cohomology_vdims():
                bad.append(f"right {i},{j}")
            if left_view_complex(T, A2).cohomology_vdims() != \
                    derived_tensor_power(stalk(Y.left_view()), X.opposite(), 1).cohomology_vdims():
                bad.append(f"left {i},{j}")
    return bad


def _complete_resolutions():
    cases = [(simple_tensor(A2, 0, 1), FDModule.simple(A2, 1)), (Bimodule.dual(A2), FDModule.simple(A2, 0)),
             (Bimodule.projective(A2, 0, 0), FDModule.projective(A2, [0]))]
    for c, m in cases:
        te = build_trivial_extension(A2, c)
        cr = complete_resolution(te, te.graded(m), length=6)
        degs = sorted({cr.window.split(w)[1] for t in cr.complex.terms.values() for w in t.proj})
        yield te, cr, degs


def _black_thunder() -> list[str]:
    bad = []
    for te, cr, degs in _complete_resolutions():
        for j in degs:
            if any(degree_piece(te, cr, k) for k in degs if k > j):
                continue
            pj = decompose_p(te, cr, j)
            for i in (i for i in degs if i > j):
                want = derived_tensor_power(pj, te.c, i - j).shift(i - j).cohomology_dims()
                if decompose_p(te, cr, i).cohomology_dims() != want:
                    bad.append(f"{te.algebra.name} i={i} j={j}")
    return bad


def _boundedness() -> list[str]:
    bad = []
    for te, cr, _ in _complete_resolutions():
        lb0, ub0 = minimal_bounds(decompose_p(te, cr, 0))
        for i in range(1, 4):
            _, ub = minimal_bounds(decompose_p(te, cr, i))
            lb, _ = minimal_bounds(decompose_p(te, cr, -i))
            if ub is not None and ub > ub0 - i:
                bad.append(f"{te.algebra.name} ub i={i}")
            if lb is not None and lb < lb0 + i:
                bad.append(f"{te.algebra.name} lb i={-i}")
    return bad


def _random_graded(W, rng):
    vs = [rng.randrange(W.algebra.n_vertices) for _ in range(rng.randint(1, 2))]
    return W.graded(random_quotient_of_projective(W.algebra, vs, rng.randrange(3), rng))


def _quasi_veronese() -> list[str]:
    G = load_spec(DATA / "graded_example.alg").algebra().build(Field.rationals())
    qv = QuasiVeronese(G, 2)
    B, D = qv.beilinson()
    d = [sum(1 for x in G.degrees if x == k) for k in range(3)]
    bad = []
    if (B.dim, D.dim) != (2 * d[0] + d[1], 2 * d[2] + d[1]) or qv.algebra.dim != B.dim + D.dim:
        bad.append("dimensions")
    W = Window(G, 0, 3)
    rng = random.Random(5)
    for k in range(12):
        m, n = _random_graded(W, rng), _random_graded(W, rng)
        qm, qn = qv.transport(m), qv.transport(n)
        if qm.dim != m.dim or graded_hom_dim(qm, qn) != graded_hom_dim(m, n):
            bad.append(f"hom sample {k}")
        if not graded_is_isomorphic(qv.transport(m.shift(-2)), qm.shift(-1)):
            bad.append(f"shift sample {k}")
    return bad


def _iwanaga() -> list[str]:
    bad = []
    for c in (simple_tensor(A2, 0, 1), Bimodule.dual(A2), Bimodule.projective(A2, 0, 0)):
        te = build_trivial_extension(A2, c)
        if injdim_regular(te) is None or injdim_regular(te.op) is None:
            bad.append(f"{te.algebra.name} not verified IG")
            continue
        W = Window(te.algebra, 0, 2)
        rng = random.Random(7)
        for k in range(20):
            gm = _random_graded(W, rng)
            pd = minimal_projective_resolution(gm.module, cap=10).status.kind
            injd = minimal_projective_resolution(dual_module(gm.module), cap=10).status.kind
            if "undetermined" in (pd, injd) or (pd == "finite") != (injd == "finite"):
                bad.append(f"{te.algebra.name} sample {k}: pd {pd}, injdim {injd}")
    return bad


STRUCTURAL = {
    "d^2 = 0": _d_squared_zero,
    "restriction compatibility": _restriction_compatibility,
    "black thunder": _black_thunder,
    "boundedness": _boundedness,
    "quasi-Veronese l = 2": _quasi_veronese,
    "Iwanaga pd <=> injdim": _iwanaga,
}


def test_criterion_9_structural_invariants(capsys):
    results = {name: check() for name, check in STRUCTURAL.items()}
    failed = {k: v for k, v in results.items() if v}
    verdict(capsys, 9, not failed, "structural invariant suites",
            f"{len(STRUCTURAL) - len(failed)}/{len(STRUCTURAL)} green" + (f", failures {failed}" if failed else ""))


@pytest.mark.parametrize("name", [g.name for g in A2_GOLDEN])
def test_kernel_members_are_killed(name):
    r = a2_reports()[name]
    for k in ker_varpi(r):
        assert annihilated_by(stalk(k), r.c, r.alpha)
