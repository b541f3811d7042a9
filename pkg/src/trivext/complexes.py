"""Bounded cochain complexes of modules, chain maps, cones and projective resolutions.

Differentials go up in degree, ``d^n : X^n -> X^{n+1}``, and act on row
vectors like module maps do.  Complexes whose terms are standard projective
modules are the perfect complexes; ``resolve`` produces them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebra import FDAlgebra, point_algebra
from .linalg import (Field, Matrix, block_diag, block_matrix, hstack, inverse, left_kernel, rank, row_basis,
                     solve_rows, vstack)
from .modules import (FDModule, ResolutionStatus, direct_sum, is_isomorphic, kernel, proj_map_matrix,
                      projective_cover, quotient)


class Complex:
    """A bounded complex; absent degrees are zero."""

    def __init__(self, algebra: FDAlgebra, terms: Mapping[int, FDModule], diffs: Mapping[int, Matrix] | None = None,
                 check: bool = False):
        self.algebra = algebra
        self.field = algebra.field
        self.terms = {n: m for n, m in terms.items() if m.dim > 0}
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if n in self.terms and n + 1 in self.terms:
                self.diffs[n] = d
        if check:
            self.check()

    # access ------------------------------------------------------------------

    def term(self, n: int) -> FDModule:
        m = self.terms.get(n)
        return m if m is not None else FDModule.zero(self.algebra)

    def diff(self, n: int) -> Matrix:
        d = self.diffs.get(n)
        if d is not None:
            return d
        return Matrix.zeros(self.field, self.term(n).dim, self.term(n + 1).dim)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def lo(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        return max(self.terms) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def is_projective(self) -> bool:
        return all(m.proj is not None for m in self.terms.values())

    def total_dim(self) -> int:
        return sum(m.dim for m in self.terms.values())

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {m.vdims}" for n, m in sorted(self.terms.items()))
        return f"Complex({body})"

    def check(self) -> None:
        for n, d in self.diffs.items():
            src, tgt = self.term(n), self.term(n + 1)
            if d.shape != (src.dim, tgt.dim):
                raise ValueError(f"differential {n} has shape {d.shape}")
            for g in self.algebra.generators:
                if src.act(g) @ d != d @ tgt.act(g):
                    raise ValueError(f"differential {n} is not a module map")
        for n in self.terms:
            if not (self.diff(n) @ self.diff(n + 1)).is_zero():
                raise ValueError(f"d^{n + 1} d^{n} is not zero")

    # constructions -------------------------------------------------------------

    @classmethod
    def stalk(cls, m: FDModule, degree: int = 0) -> "Complex":
        return cls(m.algebra, {degree: m})

    @classmethod
    def zero(cls, algebra: FDAlgebra) -> "Complex":
        return cls(algebra, {})

    def shift(self, k: int) -> "Complex":
        """``X[k]``: ``X[k]^n = X^{n+k}`` with differential ``(-1)^k d``."""
        sign = -1 if k % 2 else 1
        return Complex(self.algebra, {n - k: m for n, m in self.terms.items()},
                       {n - k: d.scale(sign) if sign < 0 else d for n, d in self.diffs.items()})

    # homology --------------------------------------------------------------------

    def cohomology_dims(self) -> dict[int, int]:
        out = {}
        for n, m in self.terms.items():
            h = m.dim - rank(self.diff(n)) - rank(self.diff(n - 1))
            if h:
                out[n] = h
        return out

    def cohomology_vdims(self) -> dict[int, tuple[int, ...]]:
        """Per-vertex cohomology dimensions."""
        out = {}
        nv = self.algebra.n_vertices
        for n, m in self.terms.items():
            dims = []
            for v in range(nv):
                idx = m.indices(v)
                nxt = self.term(n + 1).indices(v)
                prv = self.term(n - 1).indices(v)
                r_out = rank(self.diff(n).submatrix(idx, nxt)) if idx and nxt else 0
                r_in = rank(self.diff(n - 1).submatrix(prv, idx)) if idx and prv else 0
                dims.append(len(idx) - r_out - r_in)
            if any(dims):
                out[n] = tuple(dims)
        return out

    def is_acyclic(self) -> bool:
        return not self.cohomology_dims()

    def euler_class(self) -> tuple[int, ...]:
        """Alternating sum of the dimension vectors of the terms."""
        out = [0] * self.algebra.n_vertices
        for n, m in self.terms.items():
            for v, d in enumerate(m.vdims):
                out[v] += d if n % 2 == 0 else -d
        return tuple(out)


def cohomology_module(X: Complex, n: int) -> FDModule:
    """``H^n(X)`` as a module: cocycles modulo coboundaries."""
    Xn = X.term(n)
    if Xn.dim == 0:
        return FDModule.zero(X.algebra)
    Z, inc = kernel(X.diff(n), Xn) if X.term(n + 1).dim else (Xn, Matrix.identity(X.field, Xn.dim))
    if X.term(n - 1).dim and Z.dim:
        B = X.diff(n - 1)
        coords = solve_rows(inc, B)
        if coords is None:
            raise ArithmeticError("coboundaries are not cocycles")
        return quotient(Z, coords)[0]
    return Z


@dataclass
class ChainMap:
    source: Complex
    target: Complex
    maps: dict[int, Matrix]

    def at(self, n: int) -> Matrix:
        m = self.maps.get(n)
        if m is not None and m.shape == (self.source.term(n).dim, self.target.term(n).dim):
            return m
        return Matrix.zeros(self.source.field, self.source.term(n).dim, self.target.term(n).dim)

    def check(self) -> None:
        X, Y = self.source, self.target
        for n in set(X.terms) | set(Y.terms):
            if not X.term(n).dim or not Y.term(n).dim:
                continue
            f = self.at(n)
            for g in X.algebra.generators:
                if X.term(n).act(g) @ f != f @ Y.term(n).act(g):
                    raise ValueError(f"component {n} is not a module map")
        for n in set(X.terms) | {k - 1 for k in Y.terms}:
            if X.diff(n) @ self.at(n + 1) != self.at(n) @ Y.diff(n):
                raise ValueError(f"not a chain map at degree {n}")

    def then(self, other: "ChainMap") -> "ChainMap":
        """``other o self``."""
        degs = set(self.source.terms)
        return ChainMap(self.source, other.target, {n: self.at(n) @ other.at(n) for n in degs})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.maps.items()})

    def shift(self, k: int) -> "ChainMap":
        return ChainMap(self.source.shift(k), self.target.shift(k), {n - k: m for n, m in self.maps.items()})


def identity_map(X: Complex) -> ChainMap:
    return ChainMap(X, X, {n: Matrix.identity(X.field, m.dim) for n, m in X.terms.items()})


def zero_map(X: Complex, Y: Complex) -> ChainMap:
    return ChainMap(X, Y, {})


@dataclass
class Cone:
    complex: Complex
    inclusion: ChainMap  # target -> cone
    projection: ChainMap  # cone -> source[1]


def cone_of(f: ChainMap) -> Cone:
    """Mapping cone: ``cone^n = X^{n+1} + Y^n``, ``(x, y) -> (-x d_X, x f + y d_Y)``."""
    X, Y = f.source, f.target
    F = X.field
    degs = {n - 1 for n in X.terms} | set(Y.terms)
    terms, diffs, inc, proj = {}, {}, {}, {}
    for n in degs:
        a, b = X.term(n + 1), Y.term(n)
        if a.dim + b.dim == 0:
            continue
        terms[n] = direct_sum([a, b]) if a.dim and b.dim else (a if a.dim else b)
    for n in terms:
        if n + 1 not in terms:
            continue
        a, b = X.term(n + 1), Y.term(n)
        a2, b2 = X.term(n + 2), Y.term(n + 1)
        grid = [[X.diff(n + 1).scale(-1), f.at(n + 1)], [None, Y.diff(n)]]
        diffs[n] = block_matrix(F, grid, [a.dim, b.dim], [a2.dim, b2.dim])
    C = Complex(X.algebra, terms, diffs)
    for n in terms:
        a, b = X.term(n + 1), Y.term(n)
        if b.dim:
            inc[n] = hstack(F, [Matrix.zeros(F, b.dim, a.dim), Matrix.identity(F, b.dim)])
        if a.dim:
            proj[n] = vstack(F, [Matrix.identity(F, a.dim), Matrix.zeros(F, b.dim, a.dim)])
    return Cone(C, ChainMap(Y, C, inc), ChainMap(C, X.shift(1), proj))


def cone(f: ChainMap) -> Complex:
    return cone_of(f).complex


def is_quasi_iso(f: ChainMap) -> bool:
    return cone(f).is_acyclic()


def cohomology_map_ranks(f: ChainMap) -> dict[int, tuple[int, int, int]]:
    """Per degree: ``(dim H^n X, dim H^n Y, rank H^n f)``, from explicit cocycle bases."""
    X, Y = f.source, f.target
    F = X.field
    out = {}
    for n in set(X.terms) | set(Y.terms):
        hx = X.cohomology_dims().get(n, 0)
        hy = Y.cohomology_dims().get(n, 0)
        r = 0
        if hx and hy:
            Zx = left_kernel(X.diff(n))
            By = row_basis(Y.diff(n - 1)) if Y.term(n - 1).dim else Matrix.zeros(F, 0, Y.term(n).dim)
            img = Zx @ f.at(n)
            stack = vstack(F, [By, img]) if By.rows else img
            r = rank(stack) - By.rows
        if hx or hy:
            out[n] = (hx, hy, r)
    return out


def induces_iso_on_cohomology(f: ChainMap) -> bool:
    return all(hx == hy == r for hx, hy, r in cohomology_map_ranks(f).values())


# vector spaces -------------------------------------------------------------------

def vector_space(field: Field, n: int) -> FDModule:
    return FDModule(point_algebra(field), [0] * n, {})


def direct_sum_complex(parts: list[Complex]) -> Complex:
    alg = parts[0].algebra
    degs = sorted({n for X in parts for n, t in X.terms.items() if t.dim})
    terms = {n: direct_sum([X.term(n) for X in parts]) for n in degs}
    diffs = {n: block_diag(alg.field, [X.diff(n) for X in parts]) for n in degs if n + 1 in terms}
    return Complex(alg, terms, diffs)


def vector_complex(field: Field, dims: Mapping[int, int], diffs: Mapping[int, Matrix]) -> Complex:
    return Complex(point_algebra(field), {n: vector_space(field, d) for n, d in dims.items()}, diffs)


# projective resolutions of complexes -------------------------------------------------

@dataclass
class ComplexResolution:
    """A perfect complex ``P`` with a quasi-isomorphism ``q : P -> X``."""

    projective: Complex
    comparison: ChainMap
    status: ResolutionStatus


def resolve(X: Complex, cap: int = 8, minimal: bool = True, seed: int = 0) -> ComplexResolution:
    """Projective resolution of a bounded complex, built from the top degree down.

    At degree ``n`` the cocycles ``Z`` of the partial cone on ``P^{n+1} + X^n``
    modulo the image of ``X^{n-1}`` are covered by a projective ``P^n``.  Below
    the bottom of ``X`` this is an ordinary resolution, which stops once the
    cocycles vanish (``finite``), once a syzygy recurs (``infinite``), or after
    ``cap`` further steps (``undetermined``).
    """
    alg, F = X.algebra, X.field
    if X.is_zero():
        z = Complex.zero(alg)
        return ComplexResolution(z, ChainMap(z, X, {}), ResolutionStatus("finite", length=0))
    lo, hi = X.lo, X.hi
    P: dict[int, FDModule] = {}
    dP: dict[int, Matrix] = {}
    q: dict[int, Matrix] = {}
    zero = FDModule.zero(alg)
    syz: dict[int, FDModule] = {}
    status = None
    n = hi
    while True:
        Pn1 = P.get(n + 1, zero)
        Xn = X.term(n)
        if n < lo - cap:
            status = ResolutionStatus("undetermined", cap=cap)
            break
        V = direct_sum([Pn1, Xn]) if Pn1.dim and Xn.dim else (Pn1 if Pn1.dim else Xn)
        if V.dim == 0:
            if n < lo:
                status = ResolutionStatus("finite", length=hi - n - 1)
                break
            n -= 1
            continue
        Pn2, Xn1 = P.get(n + 2, zero), X.term(n + 1)
        dP1 = dP.get(n + 1, Matrix.zeros(F, Pn1.dim, Pn2.dim))
        q1 = q.get(n + 1, Matrix.zeros(F, Pn1.dim, Xn1.dim))
        dcone = block_matrix(F, [[dP1.scale(-1), q1], [None, X.diff(n)]], [Pn1.dim, Xn.dim], [Pn2.dim, Xn1.dim])
        Zm, Zinc = kernel(dcone, V)
        if n < lo:
            if Zm.dim == 0:
                status = ResolutionStatus("finite", length=hi - n - 1)
                break
            for k, prev in syz.items():
                if prev.vdims == Zm.vdims and is_isomorphic(prev, Zm, seed=seed):
                    status = ResolutionStatus("infinite", witness=(lo - k, lo - n))
                    break
            if status is not None:
                break
            syz[n] = Zm
        Xp = X.term(n - 1)
        if Xp.dim and Zm.dim:
            Brows = hstack(F, [Matrix.zeros(F, Xp.dim, Pn1.dim), X.diff(n - 1)]) if Pn1.dim else X.diff(n - 1)
            Bz = solve_rows(Zinc, Brows)
            if Bz is None:
                raise ArithmeticError("boundary not inside cocycles")
        else:
            Bz = Matrix.zeros(F, 0, Zm.dim)
        if Zm.dim:
            Qm, pi = quotient(Zm, Bz)
        else:
            Qm = zero
        if Qm.dim:
            # lift a basis of the quotient back into Z: rows of the complement
            Kz = _quotient_lift(Zm, Bz)
            Pc, cover = projective_cover(Qm)
            lifts = {}
            for j in range(len(Pc.proj)):
                row = Matrix(F, 1, Qm.dim, list(cover.row(Pc.generator_row(j))))
                lifts[j] = list((row @ Kz @ Zinc).row(0))
            g = proj_map_matrix(Pc, V, lifts)
            P[n] = Pc
            if Pn1.dim:
                dP[n] = g.submatrix(range(Pc.dim), range(Pn1.dim)).scale(-1)
            if Xn.dim:
                q[n] = g.submatrix(range(Pc.dim), range(Pn1.dim, V.dim))
        n -= 1
    Pc = Complex(alg, P, dP)
    res = ComplexResolution(Pc, ChainMap(Pc, X, q), status)
    if minimal:
        res = minimize(res)
    return res


def _quotient_lift(Z: FDModule, Bz: Matrix) -> Matrix:
    """Rows (in ``Z`` coordinates) lifting the basis used by ``quotient(Z, Bz)``."""
    from .modules import _vertex_adapted
    from .linalg import complement_rows
    S = _vertex_adapted(Z, Bz)
    return complement_rows(S, Z.dim) if S.rows else Matrix.identity(Z.field, Z.dim)


def _find_unit(P: Complex) -> tuple[int, int, int] | None:
    alg = P.algebra
    for n in sorted(P.diffs):
        d = P.diffs[n]
        src, tgt = P.term(n), P.term(n + 1)
        tpos = {jb: i for i, jb in enumerate(tgt._layout)}
        for j, v in enumerate(src.proj):
            row = d.tolist()[src.generator_row(j)]
            e = alg.idempotents[v]
            for i, w in enumerate(tgt.proj):
                if w == v and row[tpos[(i, e)]] != 0:
                    return n, j, i
    return None


def minimize(res: ComplexResolution) -> ComplexResolution:
    """Gaussian elimination of isomorphism components; keeps the comparison map."""
    P, q = res.projective, res.comparison
    F = P.field
    maps = dict(q.maps)
    while True:
        hit = _find_unit(P)
        if hit is None:
            break
        n, j, i = hit
        src, tgt = P.term(n), P.term(n + 1)
        A = src.summand_rows(j)
        B = [k for k in range(src.dim) if k not in set(A)]
        A2 = tgt.summand_rows(i)
        B2 = [k for k in range(tgt.dim) if k not in set(A2)]
        d = P.diff(n)
        phi = d.submatrix(A, A2)
        beta = d.submatrix(A, B2)
        gamma = d.submatrix(B, A2)
        delta = d.submatrix(B, B2)
        phinv = inverse(phi)
        newsrc = FDModule.projective(P.algebra, [v for k, v in enumerate(src.proj) if k != j])
        newtgt = FDModule.projective(P.algebra, [v for k, v in enumerate(tgt.proj) if k != i])
        terms = dict(P.terms)
        diffs = dict(P.diffs)
        terms[n], terms[n + 1] = newsrc, newtgt
        if B and B2:
            diffs[n] = delta - gamma @ phinv @ beta
        else:
            diffs.pop(n, None)
        if n - 1 in diffs:
            diffs[n - 1] = diffs[n - 1].submatrix(range(P.term(n - 1).dim), B)
        if n + 1 in diffs:
            diffs[n + 1] = diffs[n + 1].submatrix(B2, range(P.term(n + 2).dim))
        # inclusion iota : new -> old, then compose with q
        if n in maps and B:
            old = maps[n]
            oldA = old.submatrix(A, range(old.cols))
            oldB = old.submatrix(B, range(old.cols))
            maps[n] = (gamma @ phinv).scale(-1) @ oldA + oldB
        elif n in maps:
            maps.pop(n)
        if n + 1 in maps:
            old = maps[n + 1]
            maps[n + 1] = old.submatrix(B2, range(old.cols)) if B2 else Matrix.zeros(F, 0, old.cols)
        P = Complex(P.algebra, terms, diffs)
    return ComplexResolution(P, ChainMap(P, q.target, maps), res.status)


# Hom complexes out of perfect complexes ------------------------------------------------

@dataclass
class HomComplex:
    """``Hom^n(P, Z) = prod_m Hom(P^m, Z^{m+n})`` in generator coordinates.

    ``coords[n]`` lists ``(m, j, k)``: the ``k``-th basis vector of ``Z^{m+n}``
    as the value on the ``j``-th generator of ``P^m``.
    """

    source: Complex
    target: Complex
    complex: Complex
    coords: dict[int, list[tuple[int, int, int]]]

    def position(self, n: int) -> dict[tuple[int, int, int], int]:
        return {c: i for i, c in enumerate(self.coords.get(n, []))}


def _algebra_entry(P: FDModule, row: list, i: int) -> dict:
    """Component in summand ``i`` of a vector of a standard projective, as an algebra element."""
    out = {}
    for pos, (ii, b) in enumerate(P._layout):
        if ii == i and row[pos] != 0:
            out[b] = row[pos]
    return out


def differential_entries(P: Complex, n: int) -> list[list[dict]]:
    """``lam[j][i]``: the image of generator ``j`` of ``P^n`` in summand ``i`` of ``P^{n+1}``."""
    src, tgt = P.term(n), P.term(n + 1)
    d = P.diff(n).tolist()
    out = []
    for j in range(len(src.proj or ())):
        row = d[src.generator_row(j)] if tgt.dim else []
        out.append([_algebra_entry(tgt, row, i) for i in range(len(tgt.proj))] if tgt.dim else [])
    return out


def hom_complex(P: Complex, Z: Complex) -> HomComplex:
    if not P.is_projective():
        raise ValueError("source must be a complex of standard projectives")
    F = P.field
    coords: dict[int, list[tuple[int, int, int]]] = {}
    for m, Pm in P.terms.items():
        for n in range((Z.lo or 0) - m, (Z.hi or 0) - m + 1) if not Z.is_zero() else ():
            Zt = Z.term(m + n)
            for j, v in enumerate(Pm.proj):
                for k in Zt.indices(v):
                    coords.setdefault(n, []).append((m, j, k))
    lam = {m: differential_entries(P, m) for m in P.terms}
    pos = {n: {c: i for i, c in enumerate(cs)} for n, cs in coords.items()}
    diffs = {}
    for n, cs in coords.items():
        if n + 1 not in coords:
            continue
        tpos = pos[n + 1]
        sign = -1 if n % 2 else 1
        flat = [F.zero] * (len(cs) * len(coords[n + 1]))
        width = len(coords[n + 1])
        for r, (m, j, k) in enumerate(cs):
            Zt = Z.term(m + n)
            unit = Matrix(F, 1, Zt.dim, [F.one if x == k else F.zero for x in range(Zt.dim)])
            # d_Z o f: value on generator j of P^m moves to Z^{m+n+1}
            if (m + n) in Z.diffs:
                img = (unit @ Z.diff(m + n)).row(0)
                for kk, x in enumerate(img):
                    if x != 0:
                        flat[r * width + tpos[(m, j, kk)]] += x
            # -(-1)^n f o d_P: generators j' of P^{m-1} with a component in summand j
            if m - 1 in P.terms:
                for jp, row in enumerate(lam[m - 1]):
                    el = row[j] if row else {}
                    if not el:
                        continue
                    img = (unit @ Zt.act_element(el)).row(0)
                    for kk, x in enumerate(img):
                        if x != 0:
                            flat[r * width + tpos[(m - 1, jp, kk)]] -= sign * x
        diffs[n] = Matrix(F, len(cs), width, [F(x) for x in flat])
    C = vector_complex(F, {n: len(cs) for n, cs in coords.items()}, diffs)
    return HomComplex(P, Z, C, coords)


def hom_postcompose(H1: HomComplex, H2: HomComplex, g: ChainMap) -> ChainMap:
    """``Hom(P, g) : Hom(P, Z1) -> Hom(P, Z2)`` for a chain map ``g : Z1 -> Z2``."""
    F = H1.source.field
    maps = {}
    for n, cs in H1.coords.items():
        tpos = H2.position(n)
        width = len(H2.coords.get(n, []))
        if not width:
            continue
        flat = [F.zero] * (len(cs) * width)
        for r, (m, j, k) in enumerate(cs):
            row = g.at(m + n).row(k) if g.source.term(m + n).dim else ()
            for kk, x in enumerate(row):
                if x != 0:
                    flat[r * width + tpos[(m, j, kk)]] = x
        maps[n] = Matrix(F, len(cs), width, flat)
    return ChainMap(H1.complex, H2.complex, maps)


def rhom_dims(P: Complex, Z: Complex) -> dict[int, int]:
    """Cohomology dimensions of ``Hom(P, Z)`` for perfect ``P``."""
    return hom_complex(P, Z).complex.cohomology_dims()
