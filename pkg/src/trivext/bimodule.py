"""Bimodules as modules over the enveloping algebra, tensor products and Homs over the base.

A bimodule over ``L`` is an ``FDModule`` over ``L^op (x) L`` whose basis
vectors sit in single cells ``e_i C e_j`` (vertex ``i * n + j``).  Tensor
products over ``L`` are computed as explicit quotients of the vertex-matched
part of the tensor product over the field; Homs as solution spaces of the
intertwining equations.  Both work termwise on complexes with the usual
Koszul signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import EnvelopingAlgebra, FDAlgebra
from .complexes import ChainMap, Complex, ComplexResolution, resolve
from .linalg import Field, Matrix, rref, solve_rows
from .modules import FDModule, hom_matrices, top_dims


# structure adapters -----------------------------------------------------------

class Sides:
    """The two base-algebra actions on a right module or a bimodule.

    ``left_vert``/``right_vert`` give the cell of each basis vector (the left
    vertex is ``None`` for a one-sided module); ``left(g)`` and ``right(g)``
    are the matrices of ``c -> g c`` and ``c -> c g`` for a generator ``g``.
    """

    def __init__(self, module: FDModule, base: FDAlgebra):
        self.module = module
        self.base = base
        alg = module.algebra
        self.is_bimodule = isinstance(alg, EnvelopingAlgebra)
        if self.is_bimodule:
            nv = base.n_vertices
            self.left_vert = tuple(v // nv for v in module.vert)
            self.right_vert = tuple(v % nv for v in module.vert)
        else:
            if alg is not base:
                raise ValueError("module is over a different algebra")
            self.left_vert = None
            self.right_vert = module.vert
        self._left: dict[int, Matrix] = {}
        self._right: dict[int, Matrix] = {}

    @property
    def dim(self) -> int:
        return self.module.dim

    def right(self, b: int) -> Matrix:
        if b not in self._right:
            m = self.module
            if self.is_bimodule:
                env = m.algebra
                base = self.base
                out = Matrix.zeros(m.field, m.dim, m.dim)
                for w in range(base.n_vertices):
                    out = out + m.act(env.pair(base.idempotents[w], b))
                self._right[b] = out
            else:
                self._right[b] = m.act(b)
        return self._right[b]

    def left(self, b: int) -> Matrix:
        if not self.is_bimodule:
            raise ValueError("one-sided module has no left action")
        if b not in self._left:
            m = self.module
            env = m.algebra
            base = self.base
            out = Matrix.zeros(m.field, m.dim, m.dim)
            for w in range(base.n_vertices):
                out = out + m.act(env.pair(b, base.idempotents[w]))
            self._left[b] = out
        return self._left[b]

    def left_element(self, x: Mapping[int, object]) -> Matrix:
        out = Matrix.zeros(self.module.field, self.dim, self.dim)
        for b, c in x.items():
            out = out + self.left(b).scale(c)
        return out


# the bimodule type ------------------------------------------------------------

class Bimodule:
    def __init__(self, base: FDAlgebra, module: FDModule, name: str = ""):
        if module.algebra is not base.env:
            raise ValueError("carrier must be a module over the enveloping algebra")
        self.base = base
        self.module = module
        self.name = name or module.name
        self.sides = Sides(module, base)

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def grid(self) -> list[list[int]]:
        nv = self.base.n_vertices
        g = [[0] * nv for _ in range(nv)]
        for v in self.module.vert:
            g[v // nv][v % nv] += 1
        return g

    def left_matrix(self, x: Mapping[int, object] | int) -> Matrix:
        if isinstance(x, int):
            return self.sides.left(x)
        return self.sides.left_element(x)

    def right_matrix(self, y: Mapping[int, object] | int) -> Matrix:
        if isinstance(y, int):
            return self.sides.right(y)
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for b, c in y.items():
            out = out + self.sides.right(b).scale(c)
        return out

    def _blocks(self, left: bool) -> dict[str, dict[tuple[int, int], list[list]]]:
        base = self.base
        nv = base.n_vertices
        cell = {}
        for k, v in enumerate(self.module.vert):
            cell.setdefault((v // nv, v % nv), []).append(k)
        out: dict[str, dict] = {}
        for g in base.generators:
            s, t = base.ends[g]
            M = (self.left_matrix(g) if left else self.right_matrix(g)).tolist()
            for k in range(nv):
                src, tgt = ((t, k), (s, k)) if left else ((k, s), (k, t))
                rows, cols = cell.get(src, []), cell.get(tgt, [])
                if rows and cols:
                    out.setdefault(base.labels[g], {})[src] = [[M[r][c] for c in cols] for r in rows]
        return out

    def left_blocks(self) -> dict[str, dict[tuple[int, int], list[list]]]:
        """Matrices of ``c -> a c`` between cells, keyed as in :meth:`from_grid`."""
        return self._blocks(True)

    def right_blocks(self) -> dict[str, dict[tuple[int, int], list[list]]]:
        return self._blocks(False)

    def rows_at(self, u: int) -> tuple[int, ...]:
        """Basis indices of ``e_u C``."""
        return tuple(i for i, v in enumerate(self.sides.left_vert) if v == u)

    def cols_at(self, w: int) -> tuple[int, ...]:
        """Basis indices of ``C e_w``."""
        return tuple(i for i, v in enumerate(self.sides.right_vert) if v == w)

    def right_view(self) -> FDModule:
        base = self.base
        gact = {g: self.sides.right(g) for g in base.generators}
        return FDModule(base, self.sides.right_vert, gact, name=f"{self.name}_R")

    def left_view(self) -> FDModule:
        """The bimodule as a right module over the opposite algebra."""
        base = self.base
        gact = {g: self.sides.left(g) for g in base.generators}
        return FDModule(base.op, self.sides.left_vert, gact, name=f"{self.name}_L")

    def row_module(self, u: int) -> tuple[FDModule, tuple[int, ...]]:
        """``e_u C`` as a right module, with the indices it occupies."""
        idx = self.rows_at(u)
        base = self.base
        gact = {g: self.sides.right(g).submatrix(idx, idx) for g in base.generators}
        return FDModule(base, [self.sides.right_vert[i] for i in idx], gact), idx

    def opposite(self) -> "Bimodule":
        """The same space as a bimodule over the opposite algebra (sides swapped)."""
        base, op = self.base, self.base.op
        env, openv = base.env, op.env
        nv = base.n_vertices
        gact = {}
        for g in openv.generators:
            x, y = divmod(g, base.dim)
            gact[g] = self.module.act(env.pair(y, x))
        vert = [(v % nv) * nv + v // nv for v in self.module.vert]
        return Bimodule(op, FDModule(openv, vert, gact), name=f"{self.name}^op")

    def check(self) -> None:
        self.module.check()

    def __repr__(self) -> str:
        return f"Bimodule({self.name or '?'}, grid={self.grid})"

    # constructors -----------------------------------------------------------

    @classmethod
    def from_actions(cls, base: FDAlgebra, cells: Sequence[tuple[int, int]],
                     left: Mapping[int, Matrix], right: Mapping[int, Matrix], name: str = "",
                     check: bool = True) -> "Bimodule":
        """Cells of the basis vectors plus full left/right matrices of the generators."""
        env = base.env
        nv = base.n_vertices
        F = base.field
        n = len(cells)
        vert = [i * nv + j for i, j in cells]
        col = {w: _diag(F, n, [k for k, (_, j) in enumerate(cells) if j == w]) for w in range(nv)}
        row = {w: _diag(F, n, [k for k, (i, _) in enumerate(cells) if i == w]) for w in range(nv)}
        gact = {}
        idem = set(base.idempotents)
        for g in env.generators:
            x, y = divmod(g, base.dim)
            if x in idem and y not in idem:
                w = base.ends[x][0]
                gact[g] = row[w] @ right.get(y, Matrix.zeros(F, n, n))
            elif y in idem and x not in idem:
                w = base.ends[y][0]
                gact[g] = left.get(x, Matrix.zeros(F, n, n)) @ col[w]
            else:
                raise ValueError("unexpected generator of the enveloping algebra")
        mod = FDModule(env, vert, gact, name=name)
        if check:
            mod.check()
        return cls(base, mod, name=name)

    @classmethod
    def from_grid(cls, base: FDAlgebra, grid: Sequence[Sequence[int]],
                  left: Mapping[str, Mapping[tuple[int, int], Sequence[Sequence]]] | None = None,
                  right: Mapping[str, Mapping[tuple[int, int], Sequence[Sequence]]] | None = None,
                  name: str = "", check: bool = True) -> "Bimodule":
        """Cell dimensions plus arrow matrices, each keyed by its source cell.

        ``left[a][(i, j)]`` is the matrix of ``c -> a c`` from cell ``(t, j)``
        to cell ``(s, j)`` where ``a`` lies in ``e_s L e_t`` and ``i = t``;
        ``right[a][(i, j)]`` is ``c -> c a`` from ``(i, s)`` to ``(i, t)`` with
        ``j = s``.  Rows index the source cell.
        """
        F = base.field
        nv = base.n_vertices
        cells = [(i, j) for i in range(nv) for j in range(nv) for _ in range(grid[i][j])]
        offset = {}
        k = 0
        for i in range(nv):
            for j in range(nv):
                offset[(i, j)] = k
                k += grid[i][j]
        n = len(cells)
        label_to_gen = {base.labels[g]: g for g in base.generators}

        def build(spec, is_left):
            out = {}
            for label, blocks in (spec or {}).items():
                if label not in label_to_gen:
                    raise ValueError(f"unknown arrow {label!r}")
                g = label_to_gen[label]
                s, t = base.ends[g]
                flat = [F.zero] * (n * n)
                for (i, j), mat in blocks.items():
                    if is_left:
                        if i != t:
                            raise ValueError(f"left {label} must start in row {base.vertices[t]}")
                        src, tgt = (t, j), (s, j)
                    else:
                        if j != s:
                            raise ValueError(f"right {label} must start in column {base.vertices[s]}")
                        src, tgt = (i, s), (i, t)
                    rows = [list(r) for r in mat]
                    if len(rows) != grid[src[0]][src[1]] or any(len(r) != grid[tgt[0]][tgt[1]] for r in rows):
                        raise ValueError(f"matrix for {label} at {src} has the wrong shape")
                    for a, r in enumerate(rows):
                        for b, x in enumerate(r):
                            flat[(offset[src] + a) * n + offset[tgt] + b] = F(x)
                out[g] = Matrix(F, n, n, flat)
            return out

        return cls.from_actions(base, cells, build(left, True), build(right, False), name=name, check=check)

    @classmethod
    def regular(cls, base: FDAlgebra) -> "Bimodule":
        F = base.field
        n = base.dim
        cells = list(base.ends)
        left, right = {}, {}
        for g in base.generators:
            L = [F.zero] * (n * n)
            R = [F.zero] * (n * n)
            for b in range(n):
                for k, c in base.basis_product(g, b).items():
                    L[b * n + k] = c
                for k, c in base.basis_product(b, g).items():
                    R[b * n + k] = c
            left[g] = Matrix(F, n, n, L)
            right[g] = Matrix(F, n, n, R)
        return cls.from_actions(base, cells, left, right, name="L", check=False)

    @classmethod
    def dual(cls, base: FDAlgebra) -> "Bimodule":
        """``D(L)`` with ``(x f y)(z) = f(y z x)``, in the basis dual to that of ``L``."""
        F = base.field
        n = base.dim
        cells = [(t, s) for s, t in base.ends]
        left, right = {}, {}
        for g in base.generators:
            L = [F.zero] * (n * n)
            R = [F.zero] * (n * n)
            for b in range(n):
                for z in range(n):
                    # (g . b*)(z) = b*(z g); (b* . g)(z) = b*(g z)
                    c = base.basis_product(z, g).get(b)
                    if c:
                        L[b * n + z] = c
                    c = base.basis_product(g, z).get(b)
                    if c:
                        R[b * n + z] = c
            left[g] = Matrix(F, n, n, L)
            right[g] = Matrix(F, n, n, R)
        return cls.from_actions(base, cells, left, right, name="D(L)", check=False)

    @classmethod
    def projective(cls, base: FDAlgebra, i: int, j: int) -> "Bimodule":
        """``L e_i (x) e_j L``."""
        F = base.field
        xs = base.ending_at(i)
        ys = base.starting_at(j)
        pairs = [(x, y) for x in xs for y in ys]
        pos = {p: k for k, p in enumerate(pairs)}
        n = len(pairs)
        cells = [(base.ends[x][0], base.ends[y][1]) for x, y in pairs]
        left, right = {}, {}
        for g in base.generators:
            L = [F.zero] * (n * n)
            R = [F.zero] * (n * n)
            for k, (x, y) in enumerate(pairs):
                for x2, c in base.basis_product(g, x).items():
                    L[k * n + pos[(x2, y)]] = c
                for y2, c in base.basis_product(y, g).items():
                    R[k * n + pos[(x, y2)]] = c
            left[g] = Matrix(F, n, n, L)
            right[g] = Matrix(F, n, n, R)
        name = f"Le{base.vertices[i]}(x)e{base.vertices[j]}L"
        return cls.from_actions(base, cells, left, right, name=name, check=False)

    @classmethod
    def tensor_of(cls, left_module: FDModule, right_module: FDModule, name: str = "") -> "Bimodule":
        """``N (x)_k M`` for a left module ``N`` (over the opposite algebra) and a right module ``M``."""
        base = right_module.algebra
        if left_module.algebra is not base.op:
            raise ValueError("left factor must be a module over the opposite algebra")
        F = base.field
        pairs = [(a, b) for a in range(left_module.dim) for b in range(right_module.dim)]
        n = len(pairs)
        cells = [(left_module.vert[a], right_module.vert[b]) for a, b in pairs]
        dn, dm = left_module.dim, right_module.dim
        left, right = {}, {}
        for g in base.generators:
            A = left_module.gact[g].tolist()
            B = right_module.gact[g].tolist()
            L = [F.zero] * (n * n)
            R = [F.zero] * (n * n)
            for a in range(dn):
                for a2 in range(dn):
                    if A[a][a2] != 0:
                        for b in range(dm):
                            L[(a * dm + b) * n + a2 * dm + b] = A[a][a2]
            for b in range(dm):
                for b2 in range(dm):
                    if B[b][b2] != 0:
                        for a in range(dn):
                            R[(a * dm + b) * n + a * dm + b2] = B[b][b2]
            left[g] = Matrix(F, n, n, L)
            right[g] = Matrix(F, n, n, R)
        nm = name or f"{left_module.name}(x){right_module.name}"
        return cls.from_actions(base, cells, left, right, name=nm, check=False)

    @classmethod
    def zero(cls, base: FDAlgebra) -> "Bimodule":
        return cls(base, FDModule.zero(base.env), name="0")

    @classmethod
    def direct_sum(cls, parts: Sequence["Bimodule"], name: str = "") -> "Bimodule":
        from .modules import direct_sum
        base = parts[0].base
        return cls(base, direct_sum([p.module for p in parts]), name=name or "+".join(p.name for p in parts))


def _diag(F: Field, n: int, idx: Sequence[int]) -> Matrix:
    flat = [F.zero] * (n * n)
    for k in idx:
        flat[k * n + k] = F.one
    return Matrix(F, n, n, flat)


def dual_bimodule(base: FDAlgebra) -> Bimodule:
    return Bimodule.dual(base)


def left_simple(base: FDAlgebra, v: int) -> FDModule:
    """The simple left module at ``v``, as a right module over the opposite algebra."""
    return FDModule.simple(base.op, v)


def simple_tensor(base: FDAlgebra, i: int, j: int) -> Bimodule:
    """``S_i (x) S_j`` with the left simple at ``i`` and the right simple at ``j``."""
    return Bimodule.tensor_of(left_simple(base, i), FDModule.simple(base, j),
                              name=f"S{base.vertices[i]}l(x)S{base.vertices[j]}r")


# tensor products over the base -----------------------------------------------------

class TensorSpace:
    """``X (x)_L Y`` for a right module or bimodule ``X`` and a bimodule ``Y``."""

    def __init__(self, X: Sides, Y: Sides):
        if not Y.is_bimodule:
            raise ValueError("right factor must be a bimodule")
        self.X, self.Y = X, Y
        base = Y.base
        F = base.field
        self.field = F
        self.pairs = [(m, y) for m in range(X.dim) for y in range(Y.dim) if X.right_vert[m] == Y.left_vert[y]]
        self.pos = {p: k for k, p in enumerate(self.pairs)}
        nV = len(self.pairs)
        rels = []
        for g in base.generators:
            s, t = base.ends[g]
            Rg = X.right(g).tolist()
            Lg = Y.left(g).tolist()
            for m in range(X.dim):
                if X.right_vert[m] != s:
                    continue
                for y in range(Y.dim):
                    if Y.left_vert[y] != t:
                        continue
                    row = {}
                    for m2, c in enumerate(Rg[m]):
                        if c != 0:
                            row[self.pos[(m2, y)]] = row.get(self.pos[(m2, y)], 0) + c
                    for y2, c in enumerate(Lg[y]):
                        if c != 0:
                            k = self.pos[(m, y2)]
                            row[k] = row.get(k, 0) - c
                    row = {k: F(c) for k, c in row.items() if F(c) != 0}
                    if row:
                        rels.append(row)
        flat = [F.zero] * (len(rels) * nV)
        for r, row in enumerate(rels):
            for k, c in row.items():
                flat[r * nV + k] = c
        R, piv = rref(Matrix(F, len(rels), nV, flat)) if rels and nV else (None, ())
        pivset = set(piv)
        self.basis = [k for k in range(nV) if k not in pivset]
        qpos = {k: i for i, k in enumerate(self.basis)}
        nQ = len(self.basis)
        pflat = [F.zero] * (nV * nQ)
        for k in self.basis:
            pflat[k * nQ + qpos[k]] = F.one
        if R is not None:
            data = R.tolist()
            for r, pc in enumerate(piv):
                for k in self.basis:
                    c = data[r][k]
                    if c != 0:
                        pflat[pc * nQ + qpos[k]] = F(-c)
        self.proj = Matrix(F, nV, nQ, pflat)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def induced(self, A: Matrix, B: Matrix, target: "TensorSpace") -> Matrix:
        """Matrix of the map induced by ``A (x) B`` from this space to ``target``."""
        F = self.field
        Ad, Bd = A.tolist(), B.tolist()
        nT = len(target.pairs)
        flat = [F.zero] * (self.dim * nT)
        for i, k in enumerate(self.basis):
            m, y = self.pairs[k]
            for m2, a in enumerate(Ad[m]):
                if a == 0:
                    continue
                for y2, b in enumerate(Bd[y]):
                    if b == 0:
                        continue
                    t = target.pos.get((m2, y2))
                    if t is not None:
                        flat[i * nT + t] += a * b
        M = Matrix(F, self.dim, nT, [F(x) for x in flat])
        return M @ target.proj

    def module(self) -> FDModule:
        """The tensor product with its induced module structure."""
        X, Y = self.X, self.Y
        base = Y.base
        F = self.field
        I_X = Matrix.identity(F, X.dim)
        if not X.is_bimodule:
            vert = [Y.right_vert[self.pairs[k][1]] for k in self.basis]
            gact = {g: self.induced(I_X, Y.right(g), self) for g in base.generators}
            return FDModule(base, vert, gact)
        env = base.env
        nv = base.n_vertices
        vert = [X.left_vert[self.pairs[k][0]] * nv + Y.right_vert[self.pairs[k][1]] for k in self.basis]
        colY = {w: _diag(F, Y.dim, [k for k in range(Y.dim) if Y.right_vert[k] == w]) for w in range(nv)}
        rowX = {w: _diag(F, X.dim, [k for k in range(X.dim) if X.left_vert[k] == w]) for w in range(nv)}
        idem = set(base.idempotents)
        gact = {}
        for g in env.generators:
            x, y = divmod(g, base.dim)
            if x in idem:
                gact[g] = self.induced(rowX[base.ends[x][0]], Y.right(y), self)
            else:
                gact[g] = self.induced(X.left(x), colY[base.ends[y][0]], self)
        return FDModule(env, vert, gact)


def tensor_modules(X: FDModule, Y: FDModule, base: FDAlgebra) -> FDModule:
    return TensorSpace(Sides(X, base), Sides(Y, base)).module()


def tensor_bimodules(X: Bimodule, Y: Bimodule) -> Bimodule:
    m = TensorSpace(X.sides, Y.sides).module()
    return Bimodule(X.base, m, name=f"{X.name}(x){Y.name}")


@dataclass
class TensorComplex:
    """Total complex of ``X (x)_L Y`` with the tensor spaces of each bidegree."""

    complex: Complex
    spaces: dict[tuple[int, int], TensorSpace]
    offsets: dict[int, dict[tuple[int, int], int]]
    X: Complex
    Y: Complex


def tensor_complex(X: Complex, Y: Complex, base: FDAlgebra) -> TensorComplex:
    """``X (x)_L Y`` for a complex ``X`` of right modules or bimodules and a bimodule complex ``Y``.

    The differential is ``d(x (x) y) = dx (x) y + (-1)^p x (x) dy`` on ``X^p (x) Y^q``.
    """
    F = base.field
    out_alg = X.algebra
    sx = {p: Sides(m, base) for p, m in X.terms.items()}
    sy = {q: Sides(m, base) for q, m in Y.terms.items()}
    spaces = {}
    for p in sx:
        for q in sy:
            T = TensorSpace(sx[p], sy[q])
            if T.dim:
                spaces[(p, q)] = T
    by_deg: dict[int, list[tuple[int, int]]] = {}
    for (p, q) in sorted(spaces):
        by_deg.setdefault(p + q, []).append((p, q))
    terms, offsets = {}, {}
    from .modules import direct_sum
    mods = {pq: T.module() for pq, T in spaces.items()}
    for n, pqs in by_deg.items():
        terms[n] = direct_sum([mods[pq] for pq in pqs]) if len(pqs) > 1 else mods[pqs[0]]
        off, k = {}, 0
        for pq in pqs:
            off[pq] = k
            k += spaces[pq].dim
        offsets[n] = off
    diffs = {}
    for n, pqs in by_deg.items():
        if n + 1 not in by_deg:
            continue
        src_dim = terms[n].dim
        tgt_dim = terms[n + 1].dim
        flat = [[F.zero] * tgt_dim for _ in range(src_dim)]
        for (p, q) in pqs:
            T = spaces[(p, q)]
            r0 = offsets[n][(p, q)]
            if (p + 1, q) in spaces and p in X.diffs:
                T2 = spaces[(p + 1, q)]
                M = T.induced(X.diff(p), Matrix.identity(F, sy[q].dim), T2).tolist()
                c0 = offsets[n + 1][(p + 1, q)]
                for i, row in enumerate(M):
                    for j, x in enumerate(row):
                        if x != 0:
                            flat[r0 + i][c0 + j] += x
            if (p, q + 1) in spaces and q in Y.diffs:
                T2 = spaces[(p, q + 1)]
                dy = Y.diff(q) if p % 2 == 0 else Y.diff(q).scale(-1)
                M = T.induced(Matrix.identity(F, sx[p].dim), dy, T2).tolist()
                c0 = offsets[n + 1][(p, q + 1)]
                for i, row in enumerate(M):
                    for j, x in enumerate(row):
                        if x != 0:
                            flat[r0 + i][c0 + j] += x
        diffs[n] = Matrix(F, src_dim, tgt_dim, [F(x) for row in flat for x in row])
    return TensorComplex(Complex(out_alg, terms, diffs), spaces, offsets, X, Y)


def tensor_chain_map_left(f: ChainMap, TX: TensorComplex, TX2: TensorComplex) -> ChainMap:
    """``f (x) Y : X (x) Y -> X' (x) Y`` for a chain map ``f : X -> X'``."""
    F = f.source.field
    maps = {}
    for n, off in TX.offsets.items():
        if n not in TX2.offsets:
            continue
        rows = TX.complex.term(n).dim
        cols = TX2.complex.term(n).dim
        flat = [[F.zero] * cols for _ in range(rows)]
        for (p, q), r0 in off.items():
            if (p, q) not in TX2.offsets[n]:
                continue
            T, T2 = TX.spaces[(p, q)], TX2.spaces[(p, q)]
            M = T.induced(f.at(p), Matrix.identity(F, T.Y.dim), T2).tolist()
            c0 = TX2.offsets[n][(p, q)]
            for i, row in enumerate(M):
                for j, x in enumerate(row):
                    if x != 0:
                        flat[r0 + i][c0 + j] += x
        maps[n] = Matrix(F, rows, cols, [F(x) for row in flat for x in row])
    return ChainMap(TX.complex, TX2.complex, maps)


def tensor_chain_map_right(g: ChainMap, TX: TensorComplex, TX2: TensorComplex) -> ChainMap:
    """``X (x) g : X (x) Y -> X (x) Y'`` for a chain map ``g : Y -> Y'`` of degree zero."""
    F = g.source.field
    maps = {}
    for n, off in TX.offsets.items():
        if n not in TX2.offsets:
            continue
        rows = TX.complex.term(n).dim
        cols = TX2.complex.term(n).dim
        flat = [[F.zero] * cols for _ in range(rows)]
        for (p, q), r0 in off.items():
            if (p, q) not in TX2.offsets[n]:
                continue
            T, T2 = TX.spaces[(p, q)], TX2.spaces[(p, q)]
            M = T.induced(Matrix.identity(F, T.X.dim), g.at(q), T2).tolist()
            c0 = TX2.offsets[n][(p, q)]
            for i, row in enumerate(M):
                for j, x in enumerate(row):
                    if x != 0:
                        flat[r0 + i][c0 + j] += x
        maps[n] = Matrix(F, rows, cols, [F(x) for row in flat for x in row])
    return ChainMap(TX.complex, TX2.complex, maps)


# Homs over the base ---------------------------------------------------------------------

class HomSpace:
    """``Hom_L(U, W)`` between right views.

    If ``U`` is a bimodule the result is a right module via ``(f y)(u) = f(y u)``;
    if ``W`` is a bimodule as well it is a bimodule via ``(x f)(u) = x f(u)``.
    Basis maps are ``dim U x dim W`` matrices, one cell block at a time.
    """

    def __init__(self, U: Sides, W: Sides):
        self.U, self.W = U, W
        base = W.base
        F = base.field
        self.field = F
        self.base = base
        ul = U.left_vert if U.is_bimodule else (None,) * U.dim
        wl = W.left_vert if W.is_bimodule else (None,) * W.dim
        self.entries = [(a, b) for a in range(U.dim) for b in range(W.dim) if U.right_vert[a] == W.right_vert[b]]
        self.epos = {e: k for k, e in enumerate(self.entries)}
        ukeys = sorted({v for v in ul}, key=lambda v: -1 if v is None else v)
        wkeys = sorted({v for v in wl}, key=lambda v: -1 if v is None else v)
        self.basis: list[Matrix] = []
        self.cell: list[tuple] = []
        for j in ukeys:
            uidx = [a for a in range(U.dim) if ul[a] == j]
            Uj = FDModule(base, [U.right_vert[a] for a in uidx],
                          {g: U.right(g).submatrix(uidx, uidx) for g in base.generators})
            for i in wkeys:
                widx = [b for b in range(W.dim) if wl[b] == i]
                Wi = FDModule(base, [W.right_vert[b] for b in widx],
                              {g: W.right(g).submatrix(widx, widx) for g in base.generators})
                for h in hom_matrices(Uj, Wi):
                    flat = [F.zero] * (U.dim * W.dim)
                    hd = h.tolist()
                    for x, a in enumerate(uidx):
                        for y, b in enumerate(widx):
                            if hd[x][y] != 0:
                                flat[a * W.dim + b] = hd[x][y]
                    self.basis.append(Matrix(F, U.dim, W.dim, flat))
                    self.cell.append((i, j))
        ne = len(self.entries)
        rows = []
        for h in self.basis:
            hd = h.tolist()
            rows.append([hd[a][b] for a, b in self.entries])
        self._B = Matrix(F, len(rows), ne, [x for r in rows for x in r]) if rows else Matrix.zeros(F, 0, ne)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, mats: Sequence[Matrix]) -> Matrix:
        """Coordinates of Hom elements given as ``dim U x dim W`` matrices (one row each)."""
        F = self.field
        ne = len(self.entries)
        if not mats:
            return Matrix.zeros(F, 0, self.dim)
        flat = []
        for m in mats:
            md = m.tolist()
            flat.extend(md[a][b] if md else F.zero for a, b in self.entries)
        X = solve_rows(self._B, Matrix(F, len(mats), ne, flat)) if self.dim else None
        if X is None:
            if all(x == 0 for x in flat):
                return Matrix.zeros(F, len(mats), self.dim)
            raise ArithmeticError("matrix is not in the Hom space")
        return X

    def module(self) -> FDModule:
        U, W, base = self.U, self.W, self.base
        F = self.field
        if not U.is_bimodule:
            from .complexes import vector_space
            return vector_space(F, self.dim)
        nv = base.n_vertices
        if not W.is_bimodule:
            vert = [j for _, j in self.cell]
            gact = {}
            for g in base.generators:
                gact[g] = self.coordinates([U.left(g) @ h for h in self.basis])
            return FDModule(base, vert, gact)
        env = base.env
        vert = [i * nv + j for i, j in self.cell]
        idem = set(base.idempotents)
        rowW = {w: _diag(F, W.dim, [k for k in range(W.dim) if W.left_vert[k] == w]) for w in range(nv)}
        rowU = {w: _diag(F, U.dim, [k for k in range(U.dim) if U.left_vert[k] == w]) for w in range(nv)}
        gact = {}
        for g in env.generators:
            x, y = divmod(g, base.dim)
            # (x f y)(u) = x f(y u)
            if x in idem:
                Ly = U.left(y)
                Lx = rowW[base.ends[x][0]]
            else:
                Ly = rowU[base.ends[y][0]]
                Lx = W.left(x)
            gact[g] = self.coordinates([Ly @ h @ Lx for h in self.basis])
        return FDModule(env, vert, gact)


@dataclass
class HomTotal:
    complex: Complex
    spaces: dict[tuple[int, int], HomSpace]  # (m, m + n) -> Hom(U^m, W^{m+n})
    offsets: dict[int, dict[tuple[int, int], int]]
    U: Complex
    W: Complex


def hom_total(U: Complex, W: Complex, base: FDAlgebra) -> HomTotal:
    """``Hom^n(U, W) = prod_m Hom_L(U^m, W^{m+n})`` with ``df = d_W f - (-1)^n f d_U``."""
    F = base.field
    su = {m: Sides(x, base) for m, x in U.terms.items()}
    sw = {k: Sides(x, base) for k, x in W.terms.items()}
    spaces = {}
    for m in su:
        for k in sw:
            H = HomSpace(su[m], sw[k])
            if H.dim:
                spaces[(m, k)] = H
    by_deg: dict[int, list[tuple[int, int]]] = {}
    for (m, k) in sorted(spaces):
        by_deg.setdefault(k - m, []).append((m, k))
    from .modules import direct_sum
    mods = {mk: H.module() for mk, H in spaces.items()}
    terms, offsets = {}, {}
    for n, mks in by_deg.items():
        terms[n] = direct_sum([mods[mk] for mk in mks]) if len(mks) > 1 else mods[mks[0]]
        off, c = {}, 0
        for mk in mks:
            off[mk] = c
            c += spaces[mk].dim
        offsets[n] = off
    diffs = {}
    for n, mks in by_deg.items():
        if n + 1 not in by_deg:
            continue
        sign = -1 if n % 2 else 1
        rows = terms[n].dim
        cols = terms[n + 1].dim
        flat = [[F.zero] * cols for _ in range(rows)]
        for (m, k) in mks:
            H = spaces[(m, k)]
            r0 = offsets[n][(m, k)]
            if (m, k + 1) in spaces and k in W.diffs:
                H2 = spaces[(m, k + 1)]
                X = H2.coordinates([h @ W.diff(k) for h in H.basis]).tolist()
                c0 = offsets[n + 1][(m, k + 1)]
                for i, row in enumerate(X):
                    for j, x in enumerate(row):
                        if x != 0:
                            flat[r0 + i][c0 + j] += x
            if (m - 1, k) in spaces and (m - 1) in U.diffs:
                H2 = spaces[(m - 1, k)]
                X = H2.coordinates([U.diff(m - 1) @ h for h in H.basis]).tolist()
                c0 = offsets[n + 1][(m - 1, k)]
                for i, row in enumerate(X):
                    for j, x in enumerate(row):
                        if x != 0:
                            flat[r0 + i][c0 + j] -= sign * x
        diffs[n] = Matrix(F, rows, cols, [F(x) for row in flat for x in row])
    return HomTotal(Complex(_hom_algebra(U, W, base), terms, diffs), spaces, offsets, U, W)


def _hom_algebra(U: Complex, W: Complex, base: FDAlgebra) -> FDAlgebra:
    from .algebra import point_algebra
    u_bi = isinstance(U.algebra, EnvelopingAlgebra)
    w_bi = isinstance(W.algebra, EnvelopingAlgebra)
    if not u_bi:
        return point_algebra(base.field)
    return base.env if w_bi else base


def evaluation_map(H: HomTotal, T: TensorComplex) -> ChainMap:
    """``Hom(U, W) (x) U -> W``, ``f (x) u -> f(u)``; ``T`` must be ``tensor_complex(H.complex, U)``."""
    F = H.U.field
    W = H.W
    maps = {}
    for n, off in T.offsets.items():
        Wn = W.term(n)
        if not Wn.dim:
            continue
        rows = T.complex.term(n).dim
        flat = [[F.zero] * Wn.dim for _ in range(rows)]
        for (p, q), r0 in off.items():
            S = T.spaces[(p, q)]
            # p indexes Hom degree, q the degree of U; f in Hom(U^q, W^{q+p})
            if q + p != n:
                continue
            Hs_off = H.offsets[p]
            for i, k in enumerate(S.basis):
                fidx, u = S.pairs[k]
                # locate which Hom block fidx belongs to
                for (m, kk), c0 in Hs_off.items():
                    Hs = H.spaces[(m, kk)]
                    if c0 <= fidx < c0 + Hs.dim and m == q:
                        val = Hs.basis[fidx - c0].tolist()[u]
                        for j, x in enumerate(val):
                            if x != 0:
                                flat[r0 + i][j] += x
                        break
        maps[n] = Matrix(F, rows, Wn.dim, [F(x) for row in flat for x in row])
    return ChainMap(T.complex, W, maps)


# resolutions and derived tensors ------------------------------------------------------

def bimodule_complex(B: Bimodule) -> Complex:
    return Complex.stalk(B.module)


def right_view_complex(X: Complex, base: FDAlgebra) -> Complex:
    terms = {n: Bimodule(base, m).right_view() for n, m in X.terms.items()}
    return Complex(base, terms, dict(X.diffs))


def left_view_complex(X: Complex, base: FDAlgebra) -> Complex:
    terms = {n: Bimodule(base, m).left_view() for n, m in X.terms.items()}
    return Complex(base.op, terms, dict(X.diffs))


def opposite_complex(X: Complex, base: FDAlgebra) -> Complex:
    """A bimodule complex over ``L`` read as one over ``L^op``."""
    terms = {n: Bimodule(base, m).opposite().module for n, m in X.terms.items()}
    return Complex(base.op.env, terms, dict(X.diffs))


def is_projective_module(m: FDModule) -> bool:
    """Projective iff the projective cover has the same dimension."""
    if m.dim == 0:
        return True
    alg = m.algebra
    top = top_dims(m)
    return sum(t * len(alg.starting_at(v)) for v, t in enumerate(top)) == m.dim


def bimodule_projective_resolution(c: Bimodule, cap: int = 8) -> ComplexResolution:
    """Minimal projective resolution over the enveloping algebra.

    Both restrictions of every term are asserted to be projective.
    """
    res = resolve(bimodule_complex(c), cap=cap)
    for n, m in res.projective.terms.items():
        B = Bimodule(c.base, m)
        if not is_projective_module(B.right_view()) or not is_projective_module(B.left_view()):
            raise AssertionError("restriction of a projective bimodule is not projective")
    return res


def derived_tensor(x: Complex, y: Complex, base: FDAlgebra, cap: int = 8) -> Complex:
    """``x (x)^L y`` for bimodule complexes: resolve ``x`` over the enveloping algebra."""
    P = resolve(x, cap=cap).projective
    return tensor_complex(P, y, base).complex


def tensor_power(c: Bimodule, a: int, cap: int = 8) -> Complex:
    """A complex of projective bimodules quasi-isomorphic to ``C^a`` (``C^0`` is the regular bimodule)."""
    base = c.base
    if a < 0:
        raise ValueError("a must be non-negative")
    if a == 0:
        return bimodule_complex(Bimodule.regular(base))
    P = bimodule_projective_resolution(c, cap=cap).projective
    out = P
    for _ in range(a - 1):
        out = tensor_complex(out, P, base).complex
        out = resolve(out, cap=cap).projective
    return out
