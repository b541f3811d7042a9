"""Finite-dimensional right modules over an ``FDAlgebra``.

A module is a vector space with a basis in which every vector belongs to a
single vertex (``vert[i]``), together with one matrix per generator of the
algebra.  Vectors are rows and ``v -> v @ act(b)`` is the action of ``b``.
Actions of the remaining basis elements are derived from the generator
matrices on demand.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import flint

from .algebra import FDAlgebra
from .linalg import (Matrix, block_diag, complement_rows, inverse, left_kernel, rank, row_basis, solve_rows,
                     vstack, nullspace_basis)


class NonSplitError(ValueError):
    """The endomorphism algebra is not split over the base field."""


class FDModule:
    def __init__(self, algebra: FDAlgebra, vert: Sequence[int], gact: Mapping[int, Matrix],
                 proj: tuple[int, ...] | None = None, name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.vert = tuple(vert)
        n = len(self.vert)
        self.gact = {}
        for g in algebra.generators:
            m = gact.get(g)
            self.gact[g] = m if m is not None else Matrix.zeros(self.field, n, n)
        self.proj = proj
        self.name = name
        self._act: dict[int, Matrix] = {}
        self._words: dict[int, Matrix] = {}
        self._idx: dict[int, tuple[int, ...]] | None = None
        self._layout: list[tuple[int, int]] | None = None

    # shape -------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.vert)

    @property
    def vdims(self) -> tuple[int, ...]:
        out = [0] * self.algebra.n_vertices
        for v in self.vert:
            out[v] += 1
        return tuple(out)

    def indices(self, v: int) -> tuple[int, ...]:
        if self._idx is None:
            idx: dict[int, list[int]] = {w: [] for w in range(self.algebra.n_vertices)}
            for i, w in enumerate(self.vert):
                idx[w].append(i)
            self._idx = {w: tuple(l) for w, l in idx.items()}
        return self._idx[v]

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self) -> str:
        return f"FDModule({self.name or '?'}, dims={self.vdims})"

    # action ------------------------------------------------------------------

    def _word(self, w: int) -> Matrix:
        m = self._words.get(w)
        if m is None:
            words, _ = self.algebra.word_plan
            parent, g = words[w]
            m = self.gact[g] if parent < 0 else self._word(parent) @ self.gact[g]
            self._words[w] = m
        return m

    def act(self, b: int) -> Matrix:
        m = self._act.get(b)
        if m is not None:
            return m
        alg, F = self.algebra, self.field
        if b in self.gact:
            m = self.gact[b]
        elif b in alg.idempotents:
            v = alg.ends[b][0]
            flat = [F.zero] * (self.dim * self.dim)
            for i in self.indices(v):
                flat[i * self.dim + i] = F.one
            m = Matrix(F, self.dim, self.dim, flat)
        else:
            _, expr = alg.word_plan
            m = Matrix.zeros(F, self.dim, self.dim)
            for w, c in expr[b]:
                m = m + self._word(w).scale(c)
        self._act[b] = m
        return m

    def act_element(self, x: Mapping[int, object]) -> Matrix:
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for b, c in x.items():
            m = m + self.act(b).scale(c)
        return m

    def projector(self, v: int) -> Matrix:
        return self.act(self.algebra.idempotents[v])

    def check(self) -> None:
        """Verify that the generator matrices define a module."""
        alg = self.algebra
        for g, m in self.gact.items():
            s, t = alg.ends[g]
            data = m.tolist()
            for i in range(self.dim):
                for j in range(self.dim):
                    if data[i][j] != 0 and (self.vert[i] != s or self.vert[j] != t):
                        raise ValueError(f"generator {alg.labels[g]} does not respect vertices")
        for x in range(alg.dim):
            ax = self.act(x)
            for y in range(alg.dim):
                if alg.ends[x][1] != alg.ends[y][0]:
                    continue
                if ax @ self.act(y) != self.act_element(alg.basis_product(x, y)):
                    raise ValueError(f"relation fails on {alg.labels[x]}*{alg.labels[y]}")

    # constructors --------------------------------------------------------------

    @classmethod
    def from_generators(cls, algebra: FDAlgebra, vert: Sequence[int], gact: Mapping[int, Matrix],
                        name: str = "", check: bool = True) -> "FDModule":
        m = cls(algebra, vert, gact, name=name)
        if check:
            m.check()
        return m

    @classmethod
    def from_representation(cls, algebra: FDAlgebra, dims: Sequence[int],
                            arrows: Mapping[str, Sequence[Sequence]], name: str = "",
                            check: bool = True) -> "FDModule":
        """Build from per-vertex dimensions and one ``dim_s x dim_t`` matrix per generator label."""
        F = algebra.field
        vert = [v for v, d in enumerate(dims) for _ in range(d)]
        off = [sum(dims[:v]) for v in range(len(dims))]
        n = len(vert)
        gact = {}
        for g in algebra.generators:
            label = algebra.labels[g]
            s, t = algebra.ends[g]
            rows = arrows.get(label)
            flat = [F.zero] * (n * n)
            if rows is not None:
                rows = [list(r) for r in rows]
                if len(rows) != dims[s] or any(len(r) != dims[t] for r in rows):
                    raise ValueError(f"matrix for {label} must be {dims[s]}x{dims[t]}")
                for i, r in enumerate(rows):
                    for j, x in enumerate(r):
                        flat[(off[s] + i) * n + off[t] + j] = F(x)
            gact[g] = Matrix(F, n, n, flat)
        unknown = set(arrows) - {algebra.labels[g] for g in algebra.generators}
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        return cls.from_generators(algebra, vert, gact, name=name, check=check)

    @classmethod
    def zero(cls, algebra: FDAlgebra) -> "FDModule":
        m = cls(algebra, (), {}, proj=(), name="0")
        m._layout = []
        return m

    @classmethod
    def projective(cls, algebra: FDAlgebra, vertices: Sequence[int], name: str = "") -> "FDModule":
        """``e_{v_1} A + ... + e_{v_r} A`` in its standard basis (summand, basis element)."""
        F = algebra.field
        layout = [(j, b) for j, v in enumerate(vertices) for b in algebra.starting_at(v)]
        pos = {jb: i for i, jb in enumerate(layout)}
        n = len(layout)
        vert = [algebra.ends[b][1] for _, b in layout]
        gact = {}
        for g in algebra.generators:
            flat = [F.zero] * (n * n)
            for i, (j, b) in enumerate(layout):
                for k, c in algebra.basis_product(b, g).items():
                    flat[i * n + pos[(j, k)]] = c
            gact[g] = Matrix(F, n, n, flat)
        if not name:
            name = "+".join(f"P{algebra.vertices[v]}" for v in vertices) or "0"
        m = cls(algebra, vert, gact, proj=tuple(vertices), name=name)
        m._layout = layout
        return m

    @classmethod
    def simple(cls, algebra: FDAlgebra, v: int) -> "FDModule":
        return cls(algebra, (v,), {}, name=f"S{algebra.vertices[v]}")

    @classmethod
    def injective(cls, algebra: FDAlgebra, v: int) -> "FDModule":
        """``D(A e_v)``, in the basis dual to ``A e_v``."""
        F = algebra.field
        basis = algebra.ending_at(v)
        pos = {x: i for i, x in enumerate(basis)}
        n = len(basis)
        vert = [algebra.ends[x][0] for x in basis]
        gact = {}
        for g in algebra.generators:
            flat = [F.zero] * (n * n)
            # (x^* . g)(y) = coefficient of x in g*y
            for y in basis:
                for x, c in algebra.basis_product(g, y).items():
                    if x in pos:
                        flat[pos[x] * n + pos[y]] = c
            gact[g] = Matrix(F, n, n, flat)
        return cls(algebra, vert, gact, name=f"I{algebra.vertices[v]}")

    @classmethod
    def regular(cls, algebra: FDAlgebra) -> "FDModule":
        return cls.projective(algebra, range(algebra.n_vertices), name="A")

    # projective helpers --------------------------------------------------------

    def generator_row(self, j: int) -> int:
        """Row index of the ``j``-th generator ``e_{v_j}`` of a standard projective."""
        if self.proj is None:
            raise ValueError("not a standard projective module")
        layout = self._layout
        return layout.index((j, self.algebra.idempotents[self.proj[j]]))

    def summand_rows(self, j: int) -> list[int]:
        return [i for i, (jj, _) in enumerate(self._layout) if jj == j]

    def element_of_row(self, vec: Sequence, j: int) -> dict:
        """Read the ``j``-th summand component of ``vec`` as an algebra element."""
        out = {}
        for i, (jj, b) in enumerate(self._layout):
            if jj == j and vec[i] != 0:
                out[b] = vec[i]
        return out


@dataclass(frozen=True)
class ModuleMap:
    source: FDModule
    target: FDModule
    matrix: Matrix

    def check(self) -> None:
        for g in self.source.algebra.generators:
            if self.source.act(g) @ self.matrix != self.matrix @ self.target.act(g):
                raise ValueError("matrix does not intertwine the actions")

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """``self @ other`` is "self, then other" (row convention)."""
        return ModuleMap(self.source, other.target, self.matrix @ other.matrix)


def zero_matrix(m: FDModule, n: FDModule) -> Matrix:
    return Matrix.zeros(m.field, m.dim, n.dim)


def direct_sum(mods: Sequence[FDModule], name: str = "") -> FDModule:
    if not mods:
        raise ValueError("empty direct sum needs an algebra")
    alg = mods[0].algebra
    vert = [v for m in mods for v in m.vert]
    gact = {g: block_diag(alg.field, [m.gact[g] for m in mods]) for g in alg.generators}
    proj = None
    if all(m.proj is not None for m in mods):
        proj = tuple(v for m in mods for v in m.proj)
    out = FDModule(alg, vert, gact, name=name or "+".join(m.name or "?" for m in mods))
    if proj is not None:
        layout = []
        k = 0
        for m in mods:
            layout.extend((j + k, b) for j, b in m._layout)
            k += len(m.proj)
        out.proj = proj
        out._layout = layout
    return out


# Hom -------------------------------------------------------------------------

def hom_matrices(m: FDModule, n: FDModule) -> list[Matrix]:
    """Basis of ``Hom(m, n)`` as ``dim m x dim n`` matrices."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    F = m.field
    if m.dim == 0 or n.dim == 0:
        return []
    if m.proj is not None:
        out = []
        for j, v in enumerate(m.proj):
            for k in n.indices(v):
                vals = {jj: None for jj in range(len(m.proj))}
                vec = [F.zero] * n.dim
                vec[k] = F.one
                vals[j] = vec
                out.append(proj_map_matrix(m, n, vals))
        return out
    # unknowns: F[i][j] with vert match
    var = {}
    for i, v in enumerate(m.vert):
        for j in n.indices(v):
            var[(i, j)] = len(var)
    if not var:
        return []
    rows = []
    for g in m.algebra.generators:
        A = m.gact[g].tolist()
        B = n.gact[g].tolist()
        s, t = m.algebra.ends[g]
        for r in m.indices(s):
            for c in n.indices(t):
                eq = {}
                # (A F)[r][c] = sum_i A[r][i] F[i][c]
                for i in m.indices(t):
                    a = A[r][i]
                    if a != 0:
                        eq[var[(i, c)]] = eq.get(var[(i, c)], 0) + a
                # (F B)[r][c] = sum_j F[r][j] B[j][c]
                for j in n.indices(s):
                    b = B[j][c]
                    if b != 0:
                        eq[var[(r, j)]] = eq.get(var[(r, j)], 0) - b
                if any(F(x) != 0 for x in eq.values()):
                    rows.append(eq)
    nv = len(var)
    flat = [F.zero] * (len(rows) * nv)
    for k, eq in enumerate(rows):
        for j, x in eq.items():
            flat[k * nv + j] = F(x)
    sols = nullspace_basis(Matrix(F, len(rows), nv, flat)) if rows else \
        [tuple(F.one if i == j else F.zero for i in range(nv)) for j in range(nv)]
    out = []
    for sol in sols:
        mat = [F.zero] * (m.dim * n.dim)
        for (i, j), k in var.items():
            mat[i * n.dim + j] = sol[k]
        out.append(Matrix(F, m.dim, n.dim, mat))
    return out


def hom_space(m: FDModule, n: FDModule) -> list[ModuleMap]:
    return [ModuleMap(m, n, x) for x in hom_matrices(m, n)]


def proj_map_matrix(p: FDModule, n: FDModule, values: Mapping[int, Sequence | None]) -> Matrix:
    """The map from a standard projective sending generator ``j`` to ``values[j]``."""
    F = p.field
    rows = []
    cache: dict[int, list] = {}
    for j, b in p._layout:
        val = values.get(j)
        if val is None:
            rows.append([F.zero] * n.dim)
            continue
        if j not in cache:
            cache[j] = Matrix(F, 1, n.dim, list(val))
        rows.append(list((cache[j] @ n.act(b)).row(0)))
    return Matrix(F, p.dim, n.dim, [x for r in rows for x in r])


def generator_values(p: FDModule, f: Matrix) -> list[tuple]:
    """Images of the generators of a standard projective under ``f``."""
    return [f.row(p.generator_row(j)) for j in range(len(p.proj))]


# sub and quotient modules ------------------------------------------------------

def _vertex_adapted(m: FDModule, rows: Matrix) -> Matrix:
    F = m.field
    blocks = []
    for v in range(m.algebra.n_vertices):
        if rows.rows == 0:
            break
        part = rows @ m.projector(v)
        b = row_basis(part)
        if b.rows:
            blocks.append(b)
    return vstack(F, blocks, cols=m.dim) if blocks else Matrix.zeros(F, 0, m.dim)


def _basis_vert(m: FDModule, S: Matrix) -> list[int]:
    out = []
    for row in S.tolist():
        vs = {m.vert[i] for i, x in enumerate(row) if x != 0}
        if len(vs) != 1:
            raise ValueError("basis vector is not vertex-homogeneous")
        out.append(vs.pop())
    return out


def submodule(m: FDModule, rows: Matrix, name: str = "") -> tuple[FDModule, Matrix]:
    """The submodule spanned by ``rows`` (which must be closed under the action).

    Returns the submodule and its inclusion matrix.
    """
    F = m.field
    S = _vertex_adapted(m, rows)
    vert = _basis_vert(m, S)
    gact = {}
    for g in m.algebra.generators:
        if S.rows == 0:
            gact[g] = Matrix.zeros(F, 0, 0)
            continue
        X = solve_rows(S, S @ m.gact[g])
        if X is None:
            raise ValueError("rows do not span a submodule")
        gact[g] = X
    return FDModule(m.algebra, vert, gact, name=name), S


def generated_submodule(m: FDModule, vectors: Matrix) -> tuple[FDModule, Matrix]:
    """Smallest submodule containing the given row vectors."""
    F = m.field
    if vectors.rows == 0:
        return submodule(m, vectors)
    parts = [m.act(b) for b in range(m.algebra.dim)]
    span = vstack(F, [vectors @ p for p in parts], cols=m.dim)
    return submodule(m, row_basis(span))


def quotient(m: FDModule, rows: Matrix, name: str = "") -> tuple[FDModule, Matrix]:
    """``m / span(rows)``; returns the quotient and the projection matrix."""
    F = m.field
    S = _vertex_adapted(m, rows)
    K = complement_rows(S, m.dim) if S.rows else Matrix.identity(F, m.dim)
    T = vstack(F, [S, K], cols=m.dim) if S.rows else K
    Tinv = inverse(T)
    pi = Tinv.submatrix(range(m.dim), range(S.rows, m.dim))
    vert = _basis_vert(m, K)
    gact = {g: K @ m.gact[g] @ pi for g in m.algebra.generators}
    q = FDModule(m.algebra, vert, gact, name=name)
    return q, pi


def kernel(f: ModuleMap | Matrix, source: FDModule | None = None) -> tuple[FDModule, Matrix]:
    if isinstance(f, ModuleMap):
        source, f = f.source, f.matrix
    return submodule(source, left_kernel(f))


def image(f: ModuleMap | Matrix, target: FDModule | None = None) -> tuple[FDModule, Matrix]:
    if isinstance(f, ModuleMap):
        target, f = f.target, f.matrix
    return submodule(target, row_basis(f) if f.rows else Matrix.zeros(target.field, 0, target.dim))


def cokernel(f: ModuleMap | Matrix, target: FDModule | None = None) -> tuple[FDModule, Matrix]:
    if isinstance(f, ModuleMap):
        target, f = f.target, f.matrix
    return quotient(target, f if f.rows else Matrix.zeros(target.field, 0, target.dim))


def radical_rows(m: FDModule) -> Matrix:
    """Spanning rows of ``m * rad A``."""
    F = m.field
    if not m.algebra.generators or m.dim == 0:
        return Matrix.zeros(F, 0, m.dim)
    return row_basis(vstack(F, [m.gact[g] for g in m.algebra.generators], cols=m.dim))


def top_dims(m: FDModule) -> tuple[int, ...]:
    R = radical_rows(m)
    out = []
    for v in range(m.algebra.n_vertices):
        out.append(len(m.indices(v)) - rank(R @ m.projector(v)) if R.rows else len(m.indices(v)))
    return tuple(out)


def is_radical_map(f: Matrix, target: FDModule) -> bool:
    """Whether the image of ``f`` lies in ``rad(target)``."""
    if f.rows == 0 or f.is_zero():
        return True
    R = radical_rows(target)
    if R.rows == 0:
        return False
    return rank(vstack(target.field, [R, f])) == R.rows


def projective_cover(m: FDModule) -> tuple[FDModule, Matrix]:
    """Projective cover ``P -> m``: the standard projective on a lift of the top."""
    if m.dim == 0:
        raise ValueError("projective cover of the zero module")
    F = m.field
    R = radical_rows(m)
    tops = complement_rows(R, m.dim) if R.rows else Matrix.identity(F, m.dim)
    verts = []
    images = []
    for row in tops.tolist():
        v = next(m.vert[i] for i, x in enumerate(row) if x != 0)
        verts.append(v)
        images.append(row)
    order = sorted(range(len(verts)), key=lambda k: verts[k])
    verts = [verts[k] for k in order]
    images = [images[k] for k in order]
    P = FDModule.projective(m.algebra, verts)
    pi = proj_map_matrix(P, m, dict(enumerate(images)))
    return P, pi


def syzygy(m: FDModule) -> tuple[FDModule, Matrix, FDModule, Matrix]:
    """``(Omega m, inclusion into P, P, cover P -> m)``."""
    if m.dim == 0:
        z = FDModule.zero(m.algebra)
        return z, Matrix.zeros(m.field, 0, 0), z, Matrix.zeros(m.field, 0, 0)
    P, pi = projective_cover(m)
    K, inc = kernel(pi, P)
    return K, inc, P, pi


# resolutions ---------------------------------------------------------------------

@dataclass
class ResolutionStatus:
    kind: str  # "finite" | "infinite" | "undetermined"
    length: int | None = None
    witness: tuple[int, int] | None = None
    cap: int | None = None

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"finite({self.length})"
        if self.kind == "infinite":
            return f"infinite(witness={self.witness})"
        return f"undetermined(cap={self.cap})"


@dataclass
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> M``.

    ``projectives[k] = P_k``, ``differentials[k] : P_{k+1} -> P_k`` and
    ``augmentation : P_0 -> M``; ``syzygies[k] = Omega^k M``.
    """

    module: FDModule
    projectives: list[FDModule]
    differentials: list[Matrix]
    augmentation: Matrix
    syzygies: list[FDModule]
    status: ResolutionStatus

    @property
    def pd(self) -> int | None:
        return self.status.length if self.status.kind == "finite" else None


def minimal_projective_resolution(m: FDModule, cap: int = 8, seed: int = 0,
                                  detect_recurrence: bool = True) -> Resolution:
    """Resolve ``m`` up to ``cap`` steps.

    Stops with ``finite`` once a syzygy vanishes, with ``infinite`` once a
    nonzero syzygy is isomorphic to an earlier one, else ``undetermined``.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    F = m.field
    syz = [m]
    projs: list[FDModule] = []
    diffs: list[Matrix] = []
    aug = Matrix.zeros(F, 0, m.dim)
    prev_inc = None
    for k in range(cap + 1):
        cur = syz[-1]
        if cur.dim == 0:
            return Resolution(m, projs, diffs, aug, syz, ResolutionStatus("finite", length=max(k - 1, 0)))
        if detect_recurrence and k >= 1:
            for i in range(1, k):
                if syz[i].vdims == cur.vdims and is_isomorphic(syz[i], cur, seed=seed):
                    return Resolution(m, projs, diffs, aug, syz,
                                      ResolutionStatus("infinite", witness=(i, k)))
        if k == cap:
            break
        K, inc, P, pi = syzygy(cur)
        if k == 0:
            aug = pi
        else:
            diffs.append(pi @ prev_inc)
        projs.append(P)
        syz.append(K)
        prev_inc = inc
    if syz[-1].dim == 0:
        return Resolution(m, projs, diffs, aug, syz, ResolutionStatus("finite", length=len(projs) - 1))
    return Resolution(m, projs, diffs, aug, syz, ResolutionStatus("undetermined", cap=cap))


def ext_dim(m: FDModule, n: FDModule, degree: int, cap: int | None = None) -> int:
    """``dim Ext^degree(m, n)`` from the minimal projective resolution of ``m``."""
    if degree < 0:
        return 0
    if degree == 0:
        return len(hom_matrices(m, n))
    res = minimal_projective_resolution(m, cap=max(cap or 0, degree + 2), detect_recurrence=False)
    if res.status.kind == "finite" and res.status.length < degree:
        return 0
    if len(res.projectives) <= degree:
        if res.syzygies[-1].dim == 0:
            return 0
        raise ValueError("resolution undetermined at the requested degree")
    # Hom(P_k, n) = sum_j n e_{v_j}; maps f -> d o f
    def hom_dim(P):
        return sum(len(n.indices(v)) for v in P.proj)

    def hom_diff(k):
        # Hom(P_k, n) -> Hom(P_{k+1}, n), f |-> d_k f where d_k : P_{k+1} -> P_k
        if k >= len(res.differentials):
            return None
        return _restriction_matrix(res.projectives[k], res.projectives[k + 1], res.differentials[k], n)

    dk = hom_diff(degree)
    dk1 = hom_diff(degree - 1)
    dimk = hom_dim(res.projectives[degree])
    r_out = rank(dk) if dk is not None else 0
    r_in = rank(dk1) if dk1 is not None else 0
    return dimk - r_out - r_in


def _restriction_matrix(P: FDModule, Q: FDModule, d: Matrix, n: FDModule) -> Matrix:
    """Matrix of ``Hom(P, n) -> Hom(Q, n)``, ``f -> d f``, in generator coordinates."""
    F = n.field
    src = [(j, k) for j, v in enumerate(P.proj) for k in n.indices(v)]
    tgt = [(j, k) for j, v in enumerate(Q.proj) for k in n.indices(v)]
    tpos = {jk: i for i, jk in enumerate(tgt)}
    qrows = [d.row(Q.generator_row(j)) for j in range(len(Q.proj))]
    flat = [F.zero] * (len(src) * len(tgt))
    for s, (j, k) in enumerate(src):
        vec = [F.zero] * n.dim
        vec[k] = F.one
        fm = proj_map_matrix(P, n, {j: vec})
        for jq, row in enumerate(qrows):
            img = Matrix(F, 1, P.dim, list(row)) @ fm
            for kk in n.indices(Q.proj[jq]):
                x = img[0, kk]
                if x != 0:
                    flat[s * len(tgt) + tpos[(jq, kk)]] = x
    return Matrix(F, len(src), len(tgt), flat)


# isomorphism and decomposition ------------------------------------------------------

def _is_invertible(f: Matrix) -> bool:
    return f.rows == f.cols and rank(f) == f.rows


def _combine(basis: Sequence[Matrix], coeffs: Sequence) -> Matrix:
    out = basis[0].scale(coeffs[0])
    for b, c in zip(basis[1:], coeffs[1:]):
        if c != 0:
            out = out + b.scale(c)
    return out


def find_isomorphism(m: FDModule, n: FDModule, seed: int = 0, tries: int = 64) -> Matrix | None:
    """An invertible intertwiner ``m -> n``, or ``None``.

    Random combinations of a Hom basis are tried first; over a finite field
    with at most 4096 combinations the search is exhaustive.
    """
    if m.vdims != n.vdims:
        return None
    if m.dim == 0:
        return Matrix.zeros(m.field, 0, 0)
    H = hom_matrices(m, n)
    if not H:
        return None
    F = m.field
    rng = random.Random(seed)
    for _ in range(tries):
        f = _combine(H, [F.random_element(rng, height=5) for _ in H])
        if _is_invertible(f):
            return f
    if F.is_finite and F.characteristic ** len(H) <= 4096:
        for coeffs in itertools.product(F.elements(), repeat=len(H)):
            if any(coeffs):
                f = _combine(H, coeffs)
                if _is_invertible(f):
                    return f
    return None


def is_isomorphic(m: FDModule, n: FDModule, seed: int = 0) -> bool:
    return find_isomorphism(m, n, seed=seed) is not None


def _to_fraction(x) -> Fraction:
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(int(x))


def _roots_and_split(f: Matrix) -> list:
    """Eigenvalues of ``f`` in the base field; raises if some are outside it."""
    F = f.field
    if f.rows == 0:
        return []
    if F.characteristic == 0:
        poly = f._m.charpoly()
        _, factors = poly.factor()
        roots = []
        for fac, _ in factors:
            if fac.degree() == 1:
                c = [_to_fraction(x) for x in fac.coeffs()]
                roots.append(-c[0] / c[1])
            else:
                raise NonSplitError("endomorphism has an eigenvalue outside the base field")
        return roots
    poly = f._m.charpoly()
    _, factors = poly.factor()
    roots = []
    for fac, _ in factors:
        if fac.degree() == 1:
            c = [int(x) for x in fac.coeffs()]
            roots.append((-c[0] * pow(c[1], -1, F.characteristic)) % F.characteristic)
        else:
            raise NonSplitError("endomorphism has an eigenvalue outside the base field")
    return roots


def _fitting_split(m: FDModule, f: Matrix, lam) -> tuple[Matrix, Matrix] | None:
    """Kernel and image of ``(f - lam)^dim`` as row spaces, if both are proper."""
    F = m.field
    g = f - Matrix.identity(F, m.dim).scale(lam)
    p = Matrix.identity(F, m.dim)
    for _ in range(m.dim):
        p = p @ g
    K = left_kernel(p)
    if K.rows == 0 or K.rows == m.dim:
        return None
    return K, row_basis(p)


def _is_local(m: FDModule, E: Sequence[Matrix], shifts: Sequence) -> bool:
    F = m.field
    gens = [f - Matrix.identity(F, m.dim).scale(l) for f, l in zip(E, shifts)]
    gens = [g for g in gens if not g.is_zero()]
    power = gens
    for _ in range(m.dim + 1):
        if not power:
            return True
        prod = [a @ b for a in power for b in gens]
        prod = [p for p in prod if not p.is_zero()]
        if not prod:
            return True
        flat = vstack(F, [Matrix(F, 1, m.dim * m.dim, list(p.entries)) for p in prod])
        basis = row_basis(flat)
        power = [Matrix(F, m.dim, m.dim, list(basis.row(i))) for i in range(basis.rows)]
    return False


def _split_once(m: FDModule, rng: random.Random) -> tuple[Matrix, Matrix] | None:
    E = hom_matrices(m, m)
    F = m.field
    candidates = list(E)
    for _ in range(8):
        candidates.append(_combine(E, [F.random_element(rng, height=5) for _ in E]))
    shifts = []
    for f in candidates:
        roots = sorted(set(_roots_and_split(f)))
        if len(roots) >= 2:
            return _fitting_split(m, f, roots[0])
        shifts.append(roots[0])
    if _is_local(m, E, shifts[:len(E)]):
        return None
    # a non-local algebra spanned by elements with one eigenvalue: keep sampling
    for _ in range(256):
        f = _combine(E, [F.random_element(rng, height=7) for _ in E])
        g = f @ _combine(E, [F.random_element(rng, height=7) for _ in E])
        for h in (f, g):
            roots = sorted(set(_roots_and_split(h)))
            if len(roots) >= 2:
                return _fitting_split(m, h, roots[0])
    raise NonSplitError("could not split a module with non-local endomorphism ring")


@dataclass
class Decomposition:
    summands: list[tuple[FDModule, int]]
    inclusions: list[Matrix]  # one per copy, in summand order
    projections: list[Matrix]

    @property
    def count(self) -> int:
        return sum(k for _, k in self.summands)


def decompose(m: FDModule, seed: int = 0) -> Decomposition:
    """Krull-Schmidt decomposition with explicit split inclusions and projections."""
    rng = random.Random(seed)
    F = m.field
    pieces: list[tuple[FDModule, Matrix]] = []
    stack = [(m, Matrix.identity(F, m.dim))]
    while stack:
        x, inc = stack.pop()
        if x.dim == 0:
            continue
        sp = _split_once(x, rng)
        if sp is None:
            pieces.append((x, inc))
            continue
        K, I = sp
        for rows in (K, I):
            sub, S = submodule(x, rows)
            stack.append((sub, S @ inc))
    # group isomorphic pieces
    groups: list[tuple[FDModule, list[Matrix]]] = []
    for x, inc in pieces:
        for rep, incs in groups:
            iso = find_isomorphism(rep, x, seed=seed)
            if iso is not None:
                incs.append(iso @ inc)
                break
        else:
            groups.append((x, [inc]))
    inclusions = [i for _, incs in groups for i in incs]
    total = vstack(F, inclusions, cols=m.dim) if inclusions else Matrix.zeros(F, 0, m.dim)
    inv = inverse(total)
    projections = []
    c = 0
    for i in inclusions:
        projections.append(inv.submatrix(range(m.dim), range(c, c + i.rows)))
        c += i.rows
    return Decomposition([(rep, len(incs)) for rep, incs in groups], inclusions, projections)


def is_indecomposable(m: FDModule, seed: int = 0) -> bool:
    if m.dim == 0:
        return False
    return _split_once(m, random.Random(seed)) is None


# duality -----------------------------------------------------------------------------

def dual_module(m: FDModule) -> FDModule:
    """``D(m) = Hom_k(m, k)`` as a right module over the opposite algebra."""
    op = m.algebra.op
    gact = {g: m.gact[g].T for g in m.algebra.generators}
    return FDModule(op, m.vert, gact, name=f"D({m.name})" if m.name else "")


def random_quotient_of_projective(algebra: FDAlgebra, vertices: Sequence[int], n_relations: int,
                                  rng: random.Random) -> FDModule:
    """``P / U`` with ``U`` generated by random vertex-homogeneous radical elements."""
    F = algebra.field
    P = FDModule.projective(algebra, vertices)
    R = radical_rows(P)
    vecs = []
    for _ in range(n_relations):
        v = rng.randrange(algebra.n_vertices)
        idx = [i for i in P.indices(v)]
        if not idx or R.rows == 0:
            continue
        coeffs = [F.random_element(rng) for _ in range(R.rows)]
        row = Matrix(F, 1, R.rows, coeffs) @ R @ P.projector(v)
        if not row.is_zero():
            vecs.append(row)
    if not vecs:
        return P
    U, S = generated_submodule(P, vstack(F, vecs))
    Q, _ = quotient(P, S)
    return Q
