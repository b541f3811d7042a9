"""Derived tensor powers and the natural maps that detect the asid number.

``C^a`` is handled through one-sided models: ``Q_0 = L`` and
``Q_{a+1} -> Q_a (x) C`` a projective resolution.  Because every ``Q_a`` is a
bounded complex of projective right modules, ``Q_a (x)_L C`` computes
``C^a (x)^L C`` as a right module complex, and Hom complexes out of ``Q_a``
compute ``RHom(C^a, -)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import FDAlgebra
from .bimodule import (Bimodule, HomTotal, TensorComplex, bimodule_complex, bimodule_projective_resolution,
                       hom_total, opposite_complex, right_view_complex, tensor_complex)
from .complexes import (ChainMap, Complex, ComplexResolution, HomComplex, cone,
                        differential_entries, hom_complex, hom_postcompose, induces_iso_on_cohomology,
                        is_quasi_iso, resolve)
from .linalg import Matrix
from .modules import FDModule, ResolutionStatus, direct_sum, proj_map_matrix


def tensor_projective(P: Complex, c: Bimodule) -> Complex:
    """``P (x)_L C`` for a complex of standard projectives: ``e_v L (x) C = e_v C``.

    Term ``n`` is the sum of the rows ``e_{v_j} C`` over the generators of
    ``P^n``; the differential sends ``g_j (x) c`` to ``sum_i g_i (x) lam_ij c``.
    """
    base = c.base
    F = base.field
    rows = {}
    for n, Pn in P.terms.items():
        parts = [c.row_module(v) for v in Pn.proj]
        mods = [m for m, _ in parts]
        if not mods or sum(m.dim for m in mods) == 0:
            continue
        rows[n] = parts
    terms = {n: direct_sum([m for m, _ in parts]) for n, parts in rows.items()}
    diffs = {}
    for n, parts in rows.items():
        if n + 1 not in rows:
            continue
        lam = differential_entries(P, n)
        tparts = rows[n + 1]
        toff, k = [], 0
        for m, _ in tparts:
            toff.append(k)
            k += m.dim
        width = k
        flat = []
        for j, (m, idx) in enumerate(parts):
            for a in idx:
                row = [F.zero] * width
                for i, el in enumerate(lam[j]):
                    if not el:
                        continue
                    img = c.left_matrix(el).row(a)
                    tidx = tparts[i][1]
                    for pos, b in enumerate(tidx):
                        if img[b] != 0:
                            row[toff[i] + pos] += img[b]
                flat.extend(row)
        diffs[n] = Matrix(F, terms[n].dim, width, [F(x) for x in flat])
    return Complex(base, terms, diffs)


def _row_owner(parts: Sequence[tuple[FDModule, tuple[int, ...]]]) -> list[tuple[int, int]]:
    """For each basis vector of ``P (x) C``: (generator index, basis index in ``C``)."""
    out = []
    for j, (_, idx) in enumerate(parts):
        out.extend((j, a) for a in idx)
    return out


@dataclass
class PowerTower:
    """``Q_0, Q_1, ...`` with comparisons ``q_{a+1} : Q_{a+1} -> Q_a (x) C``."""

    c: Bimodule
    cap: int = 8
    Q: list[Complex] = dc_field(default_factory=list)
    QC: list[Complex] = dc_field(default_factory=list)
    comparisons: list[ChainMap | None] = dc_field(default_factory=list)
    statuses: list[ResolutionStatus] = dc_field(default_factory=list)
    start: Complex | None = None  # a perfect complex M; the tower then models M (x) C^a

    def __post_init__(self):
        base = self.c.base
        if self.start is None:
            P = FDModule.projective(base, range(base.n_vertices), name="L")
            self.Q = [Complex.stalk(P)]
        else:
            if not self.start.is_projective():
                raise ValueError("tower must start at a complex of standard projectives")
            self.Q = [self.start]
        self.QC = []
        self.comparisons = [None]
        self.statuses = [ResolutionStatus("finite", length=0)]

    def ensure(self, a: int) -> None:
        while len(self.Q) <= a:
            prev = self.Q[-1]
            X = tensor_projective(prev, self.c)
            self.QC.append(X)
            res = resolve(X, cap=self.cap)
            self.Q.append(res.projective)
            self.comparisons.append(res.comparison)
            self.statuses.append(res.status)

    def power(self, a: int) -> Complex:
        """A projective right-module model of ``C^a``."""
        self.ensure(a)
        return self.Q[a]

    def tensor_c(self, a: int) -> Complex:
        """``Q_a (x) C``, a (non-projective) model of ``C^{a+1}``."""
        self.ensure(a + 1)
        return self.QC[a]

    def vanishing_index(self, a_cap: int) -> int | None:
        """Least ``a <= a_cap`` with ``C^a = 0``."""
        for a in range(a_cap + 1):
            if self.power(a).is_zero():
                return a
        return None


# Hom complexes into L and C -----------------------------------------------------------

def regular_stalk(base: FDAlgebra) -> Complex:
    return Complex.stalk(FDModule.regular(base))


def c_stalk(c: Bimodule) -> Complex:
    return Complex.stalk(c.right_view())


@dataclass
class TMap:
    source: HomComplex  # Hom(Q_a, L)
    target: HomComplex  # Hom(Q_{a+1}, C)
    map: ChainMap


def t_map(tower: PowerTower, a: int) -> TMap:
    """``RHom(C^a, L) -> RHom(C^{a+1}, C)``, ``f -> (f (x) C) o q_{a+1}``."""
    c = tower.c
    base = c.base
    F = base.field
    tower.ensure(a + 1)
    Qa, Qb = tower.Q[a], tower.Q[a + 1]
    reg = FDModule.regular(base)
    H1 = hom_complex(Qa, Complex.stalk(reg))
    H2 = hom_complex(Qb, c_stalk(c))
    q = tower.comparisons[a + 1]
    maps = {}
    owners = {}
    for m, Pm in Qa.terms.items():
        owners[m] = _row_owner([c.row_module(v) for v in Pm.proj])
    for n, cs in H1.coords.items():
        tpos = H2.position(n)
        width = len(H2.coords.get(n, []))
        if not width:
            continue
        flat = [[F.zero] * width for _ in cs]
        for r, (m, j, k) in enumerate(cs):
            if m not in Qb.terms or m not in owners:
                continue
            b = reg._layout[k][1]
            Lb = c.left_matrix(b)
            Pb = Qb.term(m)
            qm = q.at(m).tolist()
            own = owners[m]
            for jp in range(len(Pb.proj)):
                row = qm[Pb.generator_row(jp)]
                val = [F.zero] * c.dim
                for pos, x in enumerate(row):
                    if x == 0:
                        continue
                    jj, ci = own[pos]
                    if jj != j:
                        continue
                    img = Lb.row(ci)
                    for t, y in enumerate(img):
                        if y != 0:
                            val[t] += x * y
                for kk, y in enumerate(val):
                    if y != 0:
                        flat[r][tpos[(m, jp, kk)]] += y
        maps[n] = Matrix(F, len(cs), width, [F(x) for row in flat for x in row])
    return TMap(H1, H2, ChainMap(H1.complex, H2.complex, maps))


def t_map_is_quasi_iso(tower: PowerTower, a: int) -> bool:
    return is_quasi_iso(t_map(tower, a).map)


# lambda_r ------------------------------------------------------------------------------

@dataclass
class LambdaR:
    resolution: ComplexResolution  # bimodule resolution P_C -> C
    hom: HomTotal  # Hom_L(P_C, C) as a bimodule complex
    map: ChainMap  # L -> Hom_L(P_C, C) over the enveloping algebra


def lambda_r_map(c: Bimodule, cap: int = 8) -> LambdaR:
    """``x -> (p -> x eps(p))`` from ``L`` into ``Hom_L(P_C, C)``."""
    base = c.base
    F = base.field
    res = bimodule_projective_resolution(c, cap=cap)
    P = res.projective
    H = hom_total(P, bimodule_complex(c), base)
    L = Bimodule.regular(base)
    eps = res.comparison.at(0)
    maps = {}
    if (0, 0) in H.spaces:
        space = H.spaces[(0, 0)]
        coords = space.coordinates([eps @ c.left_matrix(b) for b in range(base.dim)])
        off = H.offsets[0][(0, 0)]
        width = H.complex.term(0).dim
        rows = coords.tolist()
        flat = []
        for r in rows:
            full = [F.zero] * width
            full[off:off + len(r)] = r
            flat.extend(full)
        maps[0] = Matrix(F, base.dim, width, flat)
    return LambdaR(res, H, ChainMap(bimodule_complex(L), H.complex, maps))


def rhom_lambda_r(tower: PowerTower, a: int, lr: LambdaR) -> ChainMap:
    """``Hom(Q_a, lambda_r) : Hom(Q_a, L) -> Hom(Q_a, Hom_L(P_C, C))``."""
    base = tower.c.base
    Qa = tower.power(a)
    src = right_view_complex(lr.map.source, base)
    tgt = right_view_complex(lr.hom.complex, base)
    # re-express L in the standard projective basis used for Hom(Q_a, L) elsewhere
    g = ChainMap(src, tgt, dict(lr.map.maps))
    H1 = hom_complex(Qa, src)
    H2 = hom_complex(Qa, tgt)
    return hom_postcompose(H1, H2, g)


# epsilon_l --------------------------------------------------------------------------

@dataclass
class EpsLeft:
    resolution: ComplexResolution
    dual: Complex  # Hom_{L^op}(P_C, L) as a bimodule complex over L
    tensor: TensorComplex  # P_C (x) dual
    map: ChainMap  # tensor -> L


def counit_eps_left(c: Bimodule, cap: int = 8) -> EpsLeft:
    """``P_C (x)_L Hom_{L^op}(P_C, L) -> L``, ``p (x) f -> (-1)^{|p|} f(p)``."""
    base = c.base
    op = base.op
    F = base.field
    res = bimodule_projective_resolution(c, cap=cap)
    P = res.projective
    Pop = opposite_complex(P, base)
    Lop = Bimodule.regular(op)
    H = hom_total(Pop, bimodule_complex(Lop), op)
    dual_terms = {n: Bimodule(op, m).opposite().module for n, m in H.complex.terms.items()}
    dual = Complex(base.env, dual_terms, dict(H.complex.diffs))
    T = tensor_complex(P, dual, base)
    target = bimodule_complex(Bimodule.regular(base))
    maps = {}
    if 0 in T.offsets:
        rows = T.complex.term(0).dim
        flat = [[F.zero] * base.dim for _ in range(rows)]
        for (p, qd), r0 in T.offsets[0].items():
            S = T.spaces[(p, qd)]
            sign = -1 if p % 2 else 1
            blocks = sorted(H.offsets[qd].items(), key=lambda kv: kv[1])
            for i, k in enumerate(S.basis):
                pi, fi = S.pairs[k]
                for (m, kk), c0 in blocks:
                    Hs = H.spaces[(m, kk)]
                    if c0 <= fi < c0 + Hs.dim:
                        if m == p and kk == 0:
                            val = Hs.basis[fi - c0].row(pi)
                            for t, x in enumerate(val):
                                if x != 0:
                                    flat[r0 + i][t] += sign * x
                        break
        maps[0] = Matrix(F, rows, base.dim, [F(x) for row in flat for x in row])
    return EpsLeft(res, dual, T, ChainMap(T.complex, target, maps))


def eps_left_after_power(tower: PowerTower, a: int, eps: EpsLeft) -> Complex:
    """``Q_a (x) cone(eps_l)``; acyclic iff ``C^a (x) eps_l`` is an isomorphism."""
    base = tower.c.base
    return tensor_complex(tower.power(a), cone(eps.map), base).complex


# four-way agreement -----------------------------------------------------------------

@dataclass
class AgreementRow:
    a: int
    via_lambda_r: bool
    via_t_map: bool
    via_dimensions: bool
    via_eps_left: bool

    @property
    def agree(self) -> bool:
        return len({self.via_lambda_r, self.via_t_map, self.via_dimensions, self.via_eps_left}) == 1


def four_way(c: Bimodule, a: int, cap: int = 8, tower: PowerTower | None = None) -> AgreementRow:
    tower = tower or PowerTower(c, cap=cap)
    lr = lambda_r_map(c, cap=cap)
    v1 = is_quasi_iso(rhom_lambda_r(tower, a, lr))
    tm = t_map(tower, a)
    v2 = is_quasi_iso(tm.map)
    v3 = induces_iso_on_cohomology(tm.map)
    eps = counit_eps_left(c, cap=cap)
    v4 = eps_left_after_power(tower, a, eps).is_acyclic()
    return AgreementRow(a, v1, v2, v3, v4)


def alpha_by_t_map(c: Bimodule, a_cap: int, cap: int = 8) -> int | None:
    """Least ``a <= a_cap`` with the T-map a quasi-isomorphism, else ``None``."""
    tower = PowerTower(c, cap=cap)
    for a in range(a_cap + 1):
        if t_map_is_quasi_iso(tower, a):
            return a
    return None


# module-level derived tensors ----------------------------------------------------------

def derived_tensor_power(X: Complex, c: Bimodule, a: int, cap: int = 8) -> Complex:
    """A projective model of ``X (x)^L C^a`` for a complex of right modules."""
    P = resolve(X, cap=cap).projective
    for _ in range(a):
        if P.is_zero():
            break
        P = resolve(tensor_projective(P, c), cap=cap).projective
    return P


def annihilated_by(X: Complex, c: Bimodule, a: int, cap: int = 8) -> bool:
    """Whether ``X (x)^L C^a = 0``."""
    return derived_tensor_power(X, c, a, cap=cap).is_acyclic()


def dual_complex(P: Complex) -> Complex:
    """``Hom_L(P, L)`` for a complex of standard projectives, as projectives over ``L^op``.

    Degree ``-m`` holds the duals of the summands of ``P^m``; generator ``i``
    of the dual of ``P^{m+1}`` goes to ``sum_j lam_ij`` in summand ``j``.
    """
    if not P.is_projective():
        raise ValueError("dual_complex needs standard projective terms")
    op = P.algebra.op
    terms = {-m: FDModule.projective(op, Pm.proj) for m, Pm in P.terms.items()}
    diffs = {}
    for m in P.terms:
        if m + 1 not in P.terms:
            continue
        lam = differential_entries(P, m)  # lam[j][i]: generator j of P^m into summand i of P^{m+1}
        src, tgt = terms[-m - 1], terms[-m]
        values = {}
        for i in range(len(src.proj)):
            row = [P.field.zero] * tgt.dim
            for j in range(len(tgt.proj)):
                el = lam[j][i] if lam[j] else {}
                for pos, (jj, b) in enumerate(tgt._layout):
                    if jj == j and b in el:
                        row[pos] += el[b]
            values[i] = row
        diffs[-m - 1] = proj_map_matrix(src, tgt, values)
    return Complex(op, terms, diffs)
