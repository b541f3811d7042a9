"""Trivial extensions with their canonical grading, and graded homological algebra.

Graded modules over a non-negatively graded algebra ``G`` supported in
degrees ``[lo, hi]`` are the same thing as modules over the window algebra
with vertices ``(v, d)`` and basis ``(b, d)`` for ``lo <= d <= d + deg b <= hi``.
Cutting a graded module above ``hi`` is exact, so graded Ext between modules
inside a window is Ext over the window algebra; everything graded below is
computed that way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .algebra import FDAlgebra
from .bimodule import Bimodule
from .complexes import ChainMap, Complex, differential_entries, hom_complex, resolve
from .derived import tensor_projective
from .linalg import Matrix, complement_rows, hstack, rank, row_basis, solve_rows
from .modules import (FDModule, ResolutionStatus, cokernel, decompose, direct_sum, dual_module,
                      hom_matrices, is_isomorphic, minimal_projective_resolution, proj_map_matrix,
                      syzygy, top_dims)


# trivial extensions ---------------------------------------------------------------------

class TrivialExtension:
    """``A = L + C`` with ``(x, c)(x', c') = (x x', x c' + c x')``, graded by ``deg L = 0``, ``deg C = 1``.

    The basis of ``A`` is the basis of ``L`` followed by the basis of ``C``.
    """

    def __init__(self, lam: FDAlgebra, c: Bimodule, check: bool = False):
        if c.base is not lam:
            raise ValueError("bimodule is over a different algebra")
        self.lam = lam
        self.c = c
        n, m = lam.dim, c.dim
        products: dict[tuple[int, int], dict[int, object]] = {k: dict(v) for k, v in lam.products.items()}
        for x in range(n):
            L = c.left_matrix(x).tolist()
            R = c.right_matrix(x).tolist()
            for k in range(m):
                row = {n + j: v for j, v in enumerate(L[k]) if v != 0}
                if row:
                    products[(x, n + k)] = row
                row = {n + j: v for j, v in enumerate(R[k]) if v != 0}
                if row:
                    products[(n + k, x)] = row
        nv = lam.n_vertices
        labels = list(lam.labels) + [f"c{k}" for k in range(m)]
        ends = list(lam.ends) + [(v // nv, v % nv) for v in c.module.vert]
        degrees = [0] * n + [1] * m
        name = f"{lam.name or 'L'}+{c.name or 'C'}"
        self.algebra = FDAlgebra(lam.field, labels, ends, lam.vertices, lam.idempotents, products,
                                 degrees=degrees, name=name, check=check)

    @property
    def field(self):
        return self.lam.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def op(self) -> "TrivialExtension":
        """``A^op``, itself the trivial extension of ``L^op`` by ``C`` with sides swapped."""
        te = TrivialExtension(self.lam.op, self.c.opposite())
        return te

    def inflate(self, m: FDModule) -> FDModule:
        """A module over ``L`` as a module over ``A`` with ``C`` acting by zero."""
        if m.algebra is not self.lam:
            raise ValueError("module is not over the base algebra")
        A = self.algebra
        F = self.field
        gact = {}
        for g in A.generators:
            gact[g] = m.act(g) if g < self.lam.dim else Matrix.zeros(F, m.dim, m.dim)
        return FDModule(A, m.vert, gact, name=m.name)

    def inflate_complex(self, X: Complex) -> Complex:
        return Complex(self.algebra, {n: self.inflate(t) for n, t in X.terms.items()}, dict(X.diffs))

    def restrict(self, m: FDModule) -> FDModule:
        """An ``A``-module viewed over ``L``."""
        gact = {g: m.act(g) for g in self.lam.generators}
        return FDModule(self.lam, m.vert, gact, name=m.name)

    def graded(self, m: FDModule, degree: int = 0) -> "GradedModule":
        """A module over ``L`` placed in one internal degree."""
        return GradedModule(self.inflate(m), (degree,) * m.dim)

    def regular(self) -> "GradedModule":
        A = self.algebra
        P = FDModule.regular(A)
        return GradedModule(P, tuple(A.degrees[b] for _, b in P._layout))


def build_trivial_extension(lam: FDAlgebra, c: Bimodule) -> TrivialExtension:
    return TrivialExtension(lam, c, check=True)


# window algebras -------------------------------------------------------------------

class Window:
    """Graded modules over ``G`` supported in ``[lo, hi]`` as modules over one algebra."""

    def __init__(self, G: FDAlgebra, lo: int, hi: int):
        if G.degrees is None:
            raise ValueError("algebra carries no grading")
        if hi < lo:
            raise ValueError("empty window")
        self.G, self.lo, self.hi = G, lo, hi
        nv = G.n_vertices
        degs = G.degrees
        idem = set(G.idempotents)
        basis: list[tuple[int, int]] = []
        for d in range(lo, hi + 1):
            for v in range(nv):
                basis.append((G.idempotents[v], d))
        for d in range(lo, hi + 1):
            for b in range(G.dim):
                if b not in idem and d + degs[b] <= hi:
                    basis.append((b, d))
        self.basis = basis
        self.index = {bd: i for i, bd in enumerate(basis)}
        ends = []
        for b, d in basis:
            s, t = G.ends[b]
            ends.append((self.vertex(s, d), self.vertex(t, d + degs[b])))
        products: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j), prod in G.products.items():
            for d in range(lo, hi + 1):
                a = self.index.get((i, d))
                b = self.index.get((j, d + degs[i]))
                if a is None or b is None:
                    continue
                products[(a, b)] = {self.index[(k, d)]: c for k, c in prod.items()}
        labels = [f"{G.labels[b]}@{d}" for b, d in basis]
        verts = [f"{G.vertices[v]}@{d}" for d in range(lo, hi + 1) for v in range(nv)]
        self.algebra = FDAlgebra(G.field, labels, ends, verts, list(range(nv * (hi - lo + 1))), products,
                                 name=f"{G.name}[{lo},{hi}]")

    def vertex(self, v: int, d: int) -> int:
        return (d - self.lo) * self.G.n_vertices + v

    def split(self, w: int) -> tuple[int, int]:
        """Window vertex -> (vertex, degree)."""
        d, v = divmod(w, self.G.n_vertices)
        return v, d + self.lo

    def is_full(self, v: int, d: int) -> bool:
        """Whether the graded projective generated at ``(v, d)`` fits in the window."""
        top = max(self.G.degrees[b] for b in self.G.starting_at(v))
        return self.lo <= d and d + top <= self.hi

    def projective(self, pairs: Sequence[tuple[int, int]]) -> FDModule:
        return FDModule.projective(self.algebra, [self.vertex(v, d) for v, d in pairs])

    def module(self, gm: "GradedModule") -> FDModule:
        if gm.dim and (min(gm.degrees) < self.lo or max(gm.degrees) > self.hi):
            raise ValueError("module does not fit in the window")
        W = self.algebra
        F = W.field
        n = gm.dim
        vert = [self.vertex(v, d) for v, d in zip(gm.module.vert, gm.degrees)]
        gact = {}
        for g in W.generators:
            b, d = self.basis[g]
            rows = [i for i in range(n) if gm.degrees[i] == d]
            A = gm.module.act(b)
            flat = [F.zero] * (n * n)
            Ad = A.tolist()
            for i in rows:
                for j in range(n):
                    if Ad[i][j] != 0:
                        flat[i * n + j] = Ad[i][j]
            gact[g] = Matrix(F, n, n, flat)
        return FDModule(W, vert, gact, name=gm.module.name)

    def graded(self, m: FDModule) -> "GradedModule":
        G = self.G
        F = G.field
        vert, degs = [], []
        for w in m.vert:
            v, d = self.split(w)
            vert.append(v)
            degs.append(d)
        gact = {}
        for g in G.generators:
            out = Matrix.zeros(F, m.dim, m.dim)
            for d in range(self.lo, self.hi + 1):
                k = self.index.get((g, d))
                if k is not None:
                    out = out + m.act(k)
            gact[g] = out
        return GradedModule(FDModule(G, vert, gact, name=m.name), tuple(degs))

    def element(self, x: Mapping[int, object]) -> dict[int, object]:
        """Window element -> element of ``G`` (forgetting degrees)."""
        out: dict[int, object] = {}
        for k, c in x.items():
            b, _ = self.basis[k]
            out[b] = out.get(b, 0) + c
        return out


@dataclass
class GradedModule:
    module: FDModule
    degrees: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def algebra(self) -> FDAlgebra:
        return self.module.algebra

    @property
    def lo(self) -> int:
        return min(self.degrees) if self.degrees else 0

    @property
    def hi(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def shift(self, j: int) -> "GradedModule":
        """``M(j)`` with ``M(j)_i = M_{i+j}``."""
        return GradedModule(self.module, tuple(d - j for d in self.degrees))

    def piece_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def piece(self, d: int, base: FDAlgebra) -> FDModule:
        """The degree-``d`` part as a module over the degree-zero subalgebra ``base``."""
        idx = [i for i, x in enumerate(self.degrees) if x == d]
        gact = {g: self.module.act(g).submatrix(idx, idx) for g in base.generators}
        return FDModule(base, [self.module.vert[i] for i in idx], gact)

    def window(self, margin_lo: int = 0, margin_hi: int = 1) -> Window:
        return Window(self.algebra, self.lo - margin_lo, self.hi + margin_hi)

    def __repr__(self) -> str:
        return f"GradedModule({self.module.name or '?'}, pieces={self.piece_dims()})"


def _common_window(mods: Sequence[GradedModule], below: int = 0, above: int = 1) -> Window:
    G = mods[0].algebra
    lo = min((m.lo for m in mods if m.dim), default=0)
    hi = max((m.hi for m in mods if m.dim), default=0)
    return Window(G, lo - below, hi + above)


def graded_hom_dim(m: GradedModule, n: GradedModule) -> int:
    W = _common_window([m, n], 0, 0)
    return len(hom_matrices(W.module(m), W.module(n)))


def graded_is_isomorphic(m: GradedModule, n: GradedModule, seed: int = 0) -> bool:
    if m.piece_dims() != n.piece_dims():
        return False
    W = _common_window([m, n], 0, 0)
    return is_isomorphic(W.module(m), W.module(n), seed=seed)


def graded_direct_sum(parts: Sequence[GradedModule]) -> GradedModule:
    mod = direct_sum([p.module for p in parts])
    return GradedModule(mod, tuple(d for p in parts for d in p.degrees))


def graded_decompose(m: GradedModule, seed: int = 0) -> list[GradedModule]:
    if m.dim == 0:
        return []
    W = _common_window([m], 0, 0)
    return [W.graded(s) for s, k in decompose(W.module(m), seed=seed).summands for _ in range(k)]


# syzygies and cosyzygies ------------------------------------------------------------

def left_approximation(m: FDModule, vertices: Sequence[int]) -> tuple[FDModule, Matrix]:
    """Minimal left approximation ``m -> Q`` by projectives ``e_v A`` with ``v`` in ``vertices``.

    The components of the map form a minimal generating set of ``Hom(m, A)``
    as a left module, read off vertex by vertex modulo the radical.
    """
    alg = m.algebra
    F = alg.field
    allowed = set(vertices)
    P = {v: FDModule.projective(alg, [v]) for v in allowed}
    H = {v: hom_matrices(m, P[v]) for v in allowed}
    rad: dict[int, list[Matrix]] = {v: [] for v in allowed}
    for g in alg.generators:
        w, v = alg.ends[g]
        if v not in allowed or w not in allowed or not H[v]:
            continue
        # left multiplication by g : e_v A -> e_w A
        src, tgt = P[v], P[w]
        pos = {b: i for i, (_, b) in enumerate(tgt._layout)}
        flat = [F.zero] * (src.dim * tgt.dim)
        for i, (_, b) in enumerate(src._layout):
            for k, c in alg.basis_product(g, b).items():
                flat[i * tgt.dim + pos[k]] = c
        Lg = Matrix(F, src.dim, tgt.dim, flat)
        rad[w].extend(f @ Lg for f in H[v])
    chosen_v, chosen = [], []
    for v in sorted(allowed):
        if not H[v]:
            continue
        basis = H[v]
        flat_basis = Matrix(F, len(basis), m.dim * P[v].dim, [x for f in basis for x in f.entries])
        if rad[v]:
            R = Matrix(F, len(rad[v]), m.dim * P[v].dim, [x for f in rad[v] for x in f.entries])
            coords = solve_rows(flat_basis, R)
            if coords is None:
                raise ArithmeticError("radical element outside the Hom space")
            S = row_basis(coords)
        else:
            S = Matrix.zeros(F, 0, len(basis))
        top = complement_rows(S, len(basis)) if S.rows else Matrix.identity(F, len(basis))
        for row in top.tolist():
            f = Matrix.zeros(F, m.dim, P[v].dim)
            for c, b in zip(row, basis):
                if c != 0:
                    f = f + b.scale(c)
            chosen_v.append(v)
            chosen.append(f)
    Q = FDModule.projective(alg, chosen_v)
    if not chosen:
        return Q, Matrix.zeros(F, m.dim, 0)
    return Q, hstack(F, chosen, rows=m.dim)


def cosyzygy(m: FDModule, vertices: Sequence[int] | None = None) -> tuple[FDModule, Matrix, FDModule, Matrix]:
    """``(Omega^{-1} m, m -> Q, Q, Q -> Omega^{-1} m)`` from the minimal left approximation."""
    alg = m.algebra
    verts = range(alg.n_vertices) if vertices is None else vertices
    Q, iota = left_approximation(m, verts)
    K, pi = cokernel(iota, Q)
    return K, iota, Q, pi


def is_projective(m: FDModule) -> bool:
    from .bimodule import is_projective_module
    return is_projective_module(m)


def graded_syzygy(gm: GradedModule) -> GradedModule:
    if gm.dim == 0:
        return gm
    W = gm.window(0, 2)
    K, _, _, _ = syzygy(W.module(gm))
    return W.graded(K)


def graded_cosyzygy(gm: GradedModule) -> GradedModule:
    if gm.dim == 0:
        return gm
    W = gm.window(2, 2)
    full = [W.vertex(v, d) for d in range(W.lo, W.hi + 1) for v in range(W.G.n_vertices) if W.is_full(v, d)]
    K, _, _, _ = cosyzygy(W.module(gm), full)
    return W.graded(K)


# graded resolutions of A-duals: socle degrees ----------------------------------------------

def dual_of_regular(te: TrivialExtension) -> GradedModule:
    """``D(A)`` as a graded module over ``A^op``: ``D(A)_d = D(A_{-d})``."""
    A = te.algebra
    P = FDModule.regular(A)
    D = dual_module(P)  # over A.op with the dual basis of the regular layout
    degs = tuple(-A.degrees[b] for _, b in P._layout)
    # rebuild over the graded opposite trivial extension (same basis as A.op)
    Aop = te.op.algebra
    gact = {g: D.act(g) for g in Aop.generators}
    return GradedModule(FDModule(Aop, D.vert, gact, name="D(A)"), degs)


@dataclass
class SocleReport:
    alpha: int | None
    socle_degrees: set[int]
    status: ResolutionStatus
    max_degree_check: bool | None  # the amplitude form when C != 0


def alpha_by_socle(te: TrivialExtension, cap: int = 8) -> SocleReport:
    """``1 - min{a : soc(Omega^{-n} A)_a != 0}``, via the dual resolution of ``D(A)`` over ``A^op``.

    ``soc(Omega^{-n} A)_a`` is dual to the top of ``Omega^n D(A)`` in degree ``-a``.
    """
    if te.c.dim == 0:
        return SocleReport(0, {0}, ResolutionStatus("finite", length=0), None)
    DA = dual_of_regular(te)
    W = Window(DA.algebra, DA.lo, DA.hi + cap + 2)
    res = minimal_projective_resolution(W.module(DA), cap=cap, detect_recurrence=False)
    degrees: set[int] = set()
    for syz in res.syzygies:
        if syz.dim == 0:
            continue
        for w, t in enumerate(top_dims(syz)):
            if t:
                _, d = W.split(w)
                degrees.add(-d)
    if res.status.kind != "finite":
        return SocleReport(None, degrees, res.status, None)
    alpha = 1 - min(degrees)
    return SocleReport(alpha, degrees, res.status, max(degrees) == 1)


# graded Hom into A -----------------------------------------------------------------------

def graded_dual_piece(te: TrivialExtension, X: Complex, i: int, cap: int = 12) -> Complex:
    """``(X^*)_i = RHom_grA(X, A(i))`` for a complex of ``L``-modules placed in degree 0.

    ``A(i)`` lives in degrees ``-i`` and ``1 - i``; the computation runs over the
    window covering both ``X`` and ``A(i)``.
    """
    A = te.algebra
    lo, hi = min(0, -i), max(0, 1 - i)
    W = Window(A, lo, hi)
    terms = {n: W.module(te.graded(t, 0)) for n, t in X.terms.items()}
    Xw = Complex(W.algebra, terms, dict(X.diffs))
    P = resolve(Xw, cap=cap).projective
    Z = W.projective([(v, -i) for v in range(A.n_vertices)])
    return hom_complex(P, Complex.stalk(Z)).complex


@dataclass
class GammaReport:
    pieces: dict[int, Complex]  # i -> (M^*)_i for i in the computed range
    degree_one: ChainMap  # Hom_L(Q, C) -> (M^*)_1
    is_quasi_iso: bool

    def nonvanishing(self) -> list[int]:
        return [i for i, P in self.pieces.items() if i <= 0 and not P.is_acyclic()]


def gamma_map(te: TrivialExtension, X: Complex, depth: int = 2, cap: int = 12) -> GammaReport:
    """``gamma_M : M^* -> M^*(1)`` for ``M`` in ``K^b(proj L)``.

    The degree-one part sends ``f : Q -> C`` to ``Q -> C -> A(1)`` precomposed
    with a graded resolution ``R -> Q``; the map is an isomorphism exactly when
    the pieces ``(M^*)_i`` for ``i <= 0`` vanish, checked down to ``-depth``.
    """
    from .complexes import is_quasi_iso
    lam, c = te.lam, te.c
    F = te.field
    A = te.algebra
    Q = resolve(X, cap=cap).projective
    CR = c.right_view()
    src = hom_complex(Q, Complex.stalk(CR))
    W = Window(A, -1, 0)
    Qw = Complex(W.algebra, {n: W.module(te.graded(t, 0)) for n, t in Q.terms.items()}, dict(Q.diffs))
    rw = resolve(Qw, cap=cap)
    R, psi = rw.projective, rw.comparison
    Z = W.projective([(v, -1) for v in range(A.n_vertices)])
    tgt = hom_complex(R, Complex.stalk(Z))
    # C (in degree 0) -> A(1): c_k is the basis vector (c_k, -1) of the summand at its source
    emb = [[F.zero] * Z.dim for _ in range(c.dim)]
    for r, (_, b) in enumerate(Z._layout):
        bb, _ = W.basis[b]
        if bb >= lam.dim:
            emb[bb - lam.dim][r] = F.one
    E = Matrix(F, c.dim, Z.dim, [x for row in emb for x in row])
    maps = {}
    for n, cs in src.coords.items():
        tp = tgt.position(n)
        width = len(tgt.coords.get(n, []))
        flat = [F.zero] * (len(cs) * width)
        for r, (m, j, k) in enumerate(cs):
            if m not in R.terms:
                continue
            Qm = Q.term(m)
            unit = [F.one if x == k else F.zero for x in range(CR.dim)]
            f = proj_map_matrix(Qm, CR, {jj: (unit if jj == j else None) for jj in range(len(Qm.proj))})
            g = psi.at(m) @ f @ E
            Rm = R.term(m)
            for jp in range(len(Rm.proj)):
                for kk, x in enumerate(g.row(Rm.generator_row(jp))):
                    if x != 0:
                        flat[r * width + tp[(m, jp, kk)]] += x
        maps[n] = Matrix(F, len(cs), width, flat)
    deg1 = ChainMap(src.complex, tgt.complex, maps)
    pieces = {i: graded_dual_piece(te, Q, i, cap=cap) for i in range(-depth, 3)}
    ok = is_quasi_iso(deg1) and all(pieces[i].is_acyclic() for i in range(-depth, 1))
    return GammaReport(pieces, deg1, ok)


def alpha_by_gamma(te: TrivialExtension, a_cap: int, cap: int = 12) -> int | None:
    """Least ``a`` with ``(C^a)^*_0 = 0``.

    By monotone stabilization this is the ``a`` with ``gamma_{C^a}`` invertible.
    """
    from .derived import PowerTower
    tower = PowerTower(te.c, cap=cap)
    for a in range(a_cap + 1):
        if graded_dual_piece(te, tower.power(a), 0, cap=cap).is_acyclic():
            return a
    return None


def orlov_membership(te: TrivialExtension, X: Complex, depth: int = 2, cap: int = 12) -> bool:
    """``(X^*)_{<=0} = 0``, checked on ``[-depth, 0]``."""
    return all(graded_dual_piece(te, X, i, cap=cap).is_acyclic() for i in range(-depth, 1))


def graded_rhom_pieces_by_formula(te: TrivialExtension, X: Complex, depth: int = 2,
                                  cap: int = 12) -> dict[int, dict[int, int]]:
    """Cohomology dimensions of ``(X^*)_i`` from ``RHom(X, C)`` and the cones of the T-maps.

    ``(X^*)_1 = RHom(X, C)`` and ``(X^*)_i = cone(T_{X (x) C^{-i}})[i - 1]`` for ``i <= 0``.
    """
    from .complexes import cone
    from .derived import PowerTower, t_map
    Q = resolve(X, cap=cap).projective
    out = {1: hom_complex(Q, Complex.stalk(te.c.right_view())).complex.cohomology_dims()}
    tower = PowerTower(te.c, cap=cap, start=Q)
    for i in range(-depth, 1):
        cn = cone(t_map(tower, -i).map).cohomology_dims()
        out[i] = {n - (i - 1): d for n, d in cn.items()}
    return out


def is_locally_perfect(te: TrivialExtension, gm: GradedModule, cap: int = 8) -> bool:
    """Every graded piece has finite projective dimension over ``L``."""
    if minimal_projective_resolution(te.c.right_view(), cap=cap).status.kind != "finite":
        raise ValueError("C has infinite projective dimension over L")
    for d in sorted(set(gm.degrees)):
        st = minimal_projective_resolution(gm.piece(d, te.lam), cap=cap).status
        if st.kind != "finite":
            return False
    return True


# complete resolutions ---------------------------------------------------------------------

@dataclass
class CompleteResolution:
    """An acyclic complex of graded projectives with ``Z^0 = M``, over a window algebra.

    Degrees ``-length .. length - 1``; ``T^n = P_{-n-1}`` for ``n < 0`` and
    ``T^n = Q^n`` (left approximations) for ``n >= 0``.
    """

    module: GradedModule
    window: Window
    complex: Complex
    length: int
    syzygies: list[GradedModule]  # Omega^k M, k = 0 .. length
    cosyzygies: list[GradedModule]  # Omega^{-k} M

    def interior(self) -> range:
        return range(-self.length + 1, self.length - 1)

    def acyclic_on_interior(self) -> bool:
        H = self.complex.cohomology_dims()
        return all(H.get(n, 0) == 0 for n in self.interior())

    def period(self, seed: int = 0) -> int | None:
        """Least ``p >= 1`` with ``Omega^p M = M`` forgetting the grading."""
        M = self.syzygies[0]
        for p in range(1, len(self.syzygies)):
            S = self.syzygies[p]
            if S.dim == M.dim and is_isomorphic(_ungraded(S), _ungraded(M), seed=seed):
                return p
        return None

    def graded_period(self, seed: int = 0) -> tuple[int, int] | None:
        """Least ``p`` with ``Omega^p M = M(s)`` and the shift ``s``."""
        M = self.syzygies[0]
        for p in range(1, len(self.syzygies)):
            S = self.syzygies[p]
            if S.dim != M.dim or not S.dim:
                continue
            s = M.lo - S.lo
            if graded_is_isomorphic(S, M.shift(s), seed=seed):
                return p, s
        return None


def _ungraded(gm: GradedModule) -> FDModule:
    return gm.module


def complete_resolution(te: TrivialExtension, gm: GradedModule, length: int = 4) -> CompleteResolution:
    if gm.algebra is not te.algebra:
        raise ValueError("module is not over the trivial extension")
    W = Window(te.algebra, gm.lo - length - 2, gm.hi + length + 2)
    nv = te.algebra.n_vertices
    full = [W.vertex(v, d) for d in range(W.lo, W.hi + 1) for v in range(nv) if W.is_full(v, d)]
    M = W.module(gm)
    # projective side
    syzs = [M]
    projs, covers, incs = [], [], []
    cur = M
    for _ in range(length):
        if cur.dim == 0:
            break
        K, inc, P, pi = syzygy(cur)
        projs.append(P)
        covers.append(pi)
        incs.append(inc)
        syzs.append(K)
        cur = K
    # injective side by left approximations
    cosyzs = [M]
    qs, iotas, pis = [], [], []
    cur = M
    for _ in range(length):
        if cur.dim == 0:
            break
        K, iota, Q, pi = cosyzygy(cur, full)
        if rank(iota) < cur.dim:
            raise ValueError("module is not Cohen-Macaulay: no projective embedding")
        qs.append(Q)
        iotas.append(iota)
        pis.append(pi)
        cosyzs.append(K)
        cur = K
    terms, diffs = {}, {}
    for k, P in enumerate(projs):
        terms[-k - 1] = P
    for k, Q in enumerate(qs):
        terms[k] = Q
    # d^{-k-2} : P_{k+1} -> P_k
    for k in range(len(projs) - 1):
        diffs[-k - 2] = covers[k + 1] @ incs[k]
    if projs and qs:
        diffs[-1] = covers[0] @ iotas[0]
    for k in range(len(qs) - 1):
        diffs[k] = pis[k] @ iotas[k + 1]
    T = Complex(W.algebra, {n: t for n, t in terms.items() if t.dim}, diffs)
    return CompleteResolution(gm, W, T, length, [W.graded(s) for s in syzs], [W.graded(s) for s in cosyzs])


# the p_i decomposition ---------------------------------------------------------------------

def _split_summands(W: Window, P: FDModule) -> list[tuple[int, int]]:
    return [W.split(w) for w in P.proj]


def _lambda_element_vector(Q: FDModule, i: int, el: Mapping[int, object]) -> list:
    row = [Q.field.zero] * Q.dim
    for pos, (ii, b) in enumerate(Q._layout):
        if ii == i and b in el:
            row[pos] = el[b]
    return row


def decompose_p(te: TrivialExtension, cr: CompleteResolution | tuple[Window, Complex], i: int) -> Complex:
    """``p_i P = (P (x)_A L)_i``: the degree-``i`` summands with the degree-zero part of the differential."""
    W, P = (cr.window, cr.complex) if isinstance(cr, CompleteResolution) else cr
    lam = te.lam
    F = te.field
    sel, terms = {}, {}
    for n, Pn in P.terms.items():
        if Pn.proj is None:
            raise ValueError("term is not a standard graded projective")
        pairs = _split_summands(W, Pn)
        idx = [j for j, (_, d) in enumerate(pairs) if d == i]
        if idx:
            sel[n] = idx
            terms[n] = FDModule.projective(lam, [pairs[j][0] for j in idx])
    diffs = {}
    for n, idx in sel.items():
        if n + 1 not in sel:
            continue
        lamd = differential_entries(P, n)
        tidx = sel[n + 1]
        tgt = terms[n + 1]
        values = {}
        for a, j in enumerate(idx):
            row = [F.zero] * tgt.dim
            for b, k in enumerate(tidx):
                el = {x: c for x, c in W.element(lamd[j][k]).items() if x < lam.dim}
                if el:
                    v = _lambda_element_vector(tgt, b, el)
                    row = [p + q for p, q in zip(row, v)]
            values[a] = row
        diffs[n] = proj_map_matrix(terms[n], tgt, values)
    return Complex(lam, terms, diffs)


def degree_triangle(te: TrivialExtension, cr: CompleteResolution | tuple[Window, Complex], i: int) -> ChainMap:
    """``q_i : p_i P -> (p_{i-1} P (x) C)[1]``, from the ``C``-components of the differential."""
    W, P = (cr.window, cr.complex) if isinstance(cr, CompleteResolution) else cr
    lam, c = te.lam, te.c
    F = te.field
    src = decompose_p(te, (W, P), i)
    low = decompose_p(te, (W, P), i - 1)
    X = tensor_projective(low, c)
    tgt = X.shift(1)
    sel = {}
    for n, Pn in P.terms.items():
        pairs = _split_summands(W, Pn)
        sel[n] = ([j for j, (_, d) in enumerate(pairs) if d == i], [j for j, (_, d) in enumerate(pairs) if d == i - 1])
    maps = {}
    for n, Sn in src.terms.items():
        if n + 1 not in X.terms:
            continue
        lamd = differential_entries(P, n)
        hi_idx = sel[n][0]
        lo_idx = sel[n + 1][1]
        parts = [c.row_module(v) for v in low.term(n + 1).proj]
        offs, k = [], 0
        for mdl, _ in parts:
            offs.append(k)
            k += mdl.dim
        values = {}
        for a, j in enumerate(hi_idx):
            row = [F.zero] * X.term(n + 1).dim
            for b, kk in enumerate(lo_idx):
                el = W.element(lamd[j][kk])
                idx = parts[b][1]
                for x, coef in el.items():
                    if x >= lam.dim:
                        pos = idx.index(x - lam.dim)
                        row[offs[b] + pos] += coef
            values[a] = [F(v) for v in row]
        maps[n] = proj_map_matrix(Sn, X.term(n + 1), values)
    return ChainMap(src, tgt, maps)


def degree_piece(te: TrivialExtension, cr: CompleteResolution, i: int) -> dict[int, int]:
    """Cohomology dimensions of ``P_i``, the degree-``i`` part of ``P``."""
    W = cr.window
    out: dict[int, int] = {}
    for n, vd in cr.complex.cohomology_vdims().items():
        tot = sum(x for w, x in enumerate(vd) if W.split(w)[1] == i)
        if tot:
            out[n] = tot
    return out


def minimal_bounds(X: Complex) -> tuple[int | None, int | None]:
    """``(lb, ub)`` of a perfect complex: the extreme degrees of its minimal model."""
    P = resolve(X).projective
    return P.lo, P.hi


# Beilinson and quasi-Veronese algebras -----------------------------------------------------

class QuasiVeronese:
    """``A^[l]``: vertices ``(v, r)`` for ``0 <= r < l``, basis ``(b, r)`` of degree ``(r + deg b) // l``."""

    def __init__(self, G: FDAlgebra, ell: int):
        if G.degrees is None:
            raise ValueError("algebra carries no grading")
        if ell < 1:
            raise ValueError("ell must be positive")
        if any(d > ell for d in G.degrees):
            raise ValueError("grading exceeds ell")
        self.G, self.ell = G, ell
        nv = G.n_vertices
        degs = G.degrees
        idem = set(G.idempotents)
        basis = [(G.idempotents[v], r) for r in range(ell) for v in range(nv)]
        basis += [(b, r) for r in range(ell) for b in range(G.dim) if b not in idem]
        self.basis = basis
        self.index = {br: i for i, br in enumerate(basis)}
        ends, qdeg = [], []
        for b, r in basis:
            s, t = G.ends[b]
            ends.append((self.vertex(s, r), self.vertex(t, (r + degs[b]) % ell)))
            qdeg.append((r + degs[b]) // ell)
        products: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j), prod in G.products.items():
            for r in range(ell):
                a = self.index[(i, r)]
                b = self.index[(j, (r + degs[i]) % ell)]
                products[(a, b)] = {self.index[(k, r)]: c for k, c in prod.items()}
        labels = [f"{G.labels[b]}#{r}" for b, r in basis]
        verts = [f"{G.vertices[v]}#{r}" for r in range(ell) for v in range(nv)]
        self.algebra = FDAlgebra(G.field, labels, ends, verts, list(range(nv * ell)), products,
                                 degrees=qdeg, name=f"{G.name}^[{ell}]")

    def vertex(self, v: int, r: int) -> int:
        return r * self.G.n_vertices + v

    def beilinson(self) -> tuple[FDAlgebra, Bimodule]:
        """The degree-0 subalgebra and the degree-1 bimodule."""
        Q = self.algebra
        F = Q.field
        zero = [k for k in range(Q.dim) if Q.degrees[k] == 0]
        one = [k for k in range(Q.dim) if Q.degrees[k] == 1]
        pos0 = {k: i for i, k in enumerate(zero)}
        pos1 = {k: i for i, k in enumerate(one)}
        products = {}
        for (i, j), prod in Q.products.items():
            if i in pos0 and j in pos0:
                products[(pos0[i], pos0[j])] = {pos0[k]: c for k, c in prod.items()}
        idem = [pos0[e] for e in Q.idempotents]
        B = FDAlgebra(F, [Q.labels[k] for k in zero], [Q.ends[k] for k in zero], Q.vertices, idem, products,
                      degrees=[0] * len(zero), name=f"nabla({self.G.name})")
        n = len(one)
        left, right = {}, {}
        for g in B.generators:
            gq = zero[g]
            L = [F.zero] * (n * n)
            R = [F.zero] * (n * n)
            for a, k in enumerate(one):
                for kk, c in Q.basis_product(gq, k).items():
                    L[a * n + pos1[kk]] = c
                for kk, c in Q.basis_product(k, gq).items():
                    R[a * n + pos1[kk]] = c
            left[g] = Matrix(F, n, n, L)
            right[g] = Matrix(F, n, n, R)
        cells = [Q.ends[k] for k in one]
        D = Bimodule.from_actions(B, cells, left, right, name=f"Delta({self.G.name})")
        return B, D

    def trivial_extension(self) -> TrivialExtension:
        B, D = self.beilinson()
        return TrivialExtension(B, D, check=True)

    def transport(self, gm: GradedModule) -> GradedModule:
        """``qv(M)_i = M_{il} + ... + M_{(i+1)l - 1}``."""
        if gm.algebra is not self.G:
            raise ValueError("module is over a different algebra")
        Q = self.algebra
        F = Q.field
        ell = self.ell
        n = gm.dim
        vert = [self.vertex(v, d % ell) for v, d in zip(gm.module.vert, gm.degrees)]
        degs = tuple(d // ell for d in gm.degrees)
        gact = {}
        for g in Q.generators:
            b, r = self.basis[g]
            A = gm.module.act(b).tolist()
            flat = [F.zero] * (n * n)
            for i in range(n):
                if gm.degrees[i] % ell != r:
                    continue
                for j in range(n):
                    if A[i][j] != 0:
                        flat[i * n + j] = A[i][j]
            gact[g] = Matrix(F, n, n, flat)
        return GradedModule(FDModule(Q, vert, gact, name=gm.module.name), degs)


def build_beilinson(G: FDAlgebra, ell: int) -> tuple[FDAlgebra, Bimodule]:
    return QuasiVeronese(G, ell).beilinson()


def build_quasi_veronese(G: FDAlgebra, ell: int) -> TrivialExtension:
    return QuasiVeronese(G, ell).trivial_extension()


def qv_transport(gm: GradedModule, ell: int, qv: QuasiVeronese | None = None) -> GradedModule:
    qv = qv or QuasiVeronese(gm.algebra, ell)
    return qv.transport(gm)
