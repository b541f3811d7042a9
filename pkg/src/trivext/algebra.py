"""Quivers, path algebras with relations and finite-dimensional algebras.

Convention: an arrow ``a: i -> j`` satisfies ``a = e_i a e_j``.  Paths are
written left to right, first arrow first, so ``b*a`` means "b, then a" and
lives in ``e_{src b} A e_{tgt a}``.  Right modules therefore carry a linear
map ``M_i -> M_j`` along ``a``.

Every algebra here is basic and comes with a basis that is homogeneous with
respect to the vertex idempotents: each basis element ``b`` has *ends*
``(s, t)`` with ``b = e_s b e_t``, the idempotents themselves are basis
elements, and all other basis elements span the Jacobson radical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .linalg import Field, Matrix, rref, rank

Element = dict  # sparse {basis index: coefficient}


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow labels")
        if set(names) & set(self.vertices):
            raise ValueError("arrow and vertex labels must differ")
        for name, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise ValueError(f"arrow {name} has an undeclared endpoint")

    def arrow(self, name: str) -> tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)

    def is_acyclic(self) -> bool:
        out = {v: [t for _, s, t in self.arrows if s == v] for v in self.vertices}
        state: dict[str, int] = {}

        def visit(v):
            state[v] = 1
            for w in out[v]:
                if state.get(w) == 1 or (w not in state and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(v in state or visit(v) for v in self.vertices)


@dataclass(frozen=True)
class PathPresentation:
    quiver: Quiver
    relations: tuple[tuple[tuple[tuple[str, ...], object], ...], ...] = ()
    # each relation: ((path, coeff), ...), a path being a tuple of arrow names


class FDAlgebra:
    """A basic finite-dimensional algebra given by structure constants."""

    def __init__(self, field: Field, labels: Sequence[str], ends: Sequence[tuple[int, int]],
                 vertices: Sequence[str], idempotents: Sequence[int],
                 products: Mapping[tuple[int, int], Mapping[int, object]],
                 degrees: Sequence[int] | None = None, name: str = "", check: bool = False):
        self.field = field
        self.labels = tuple(labels)
        self.ends = tuple(tuple(e) for e in ends)
        self.vertices = tuple(vertices)
        self.idempotents = tuple(idempotents)
        self.name = name
        self.degrees = tuple(degrees) if degrees is not None else None
        self.products = {k: {i: field(c) for i, c in v.items() if field(c) != 0}
                         for k, v in products.items()}
        self.products = {k: v for k, v in self.products.items() if v}
        n = len(self.labels)
        if len(self.ends) != n:
            raise ValueError("ends must match the basis")
        for v, e in enumerate(self.idempotents):
            if self.ends[e] != (v, v):
                raise ValueError(f"idempotent of vertex {v} has ends {self.ends[e]}")
        if check:
            self.check()

    # basic data --------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def radical(self) -> tuple[int, ...]:
        idem = set(self.idempotents)
        return tuple(i for i in range(self.dim) if i not in idem)

    @cached_property
    def by_ends(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for i, e in enumerate(self.ends):
            out.setdefault(e, []).append(i)
        return {k: tuple(v) for k, v in out.items()}

    def between(self, s: int, t: int) -> tuple[int, ...]:
        """Basis of ``e_s A e_t``."""
        return self.by_ends.get((s, t), ())

    def starting_at(self, v: int) -> tuple[int, ...]:
        """Basis of the right ideal ``e_v A``."""
        return tuple(i for i, (s, _) in enumerate(self.ends) if s == v)

    def ending_at(self, v: int) -> tuple[int, ...]:
        """Basis of the left ideal ``A e_v``."""
        return tuple(i for i, (_, t) in enumerate(self.ends) if t == v)

    def cartan(self) -> list[list[int]]:
        """``[s][t] = dim e_s A e_t``."""
        n = self.n_vertices
        return [[len(self.between(s, t)) for t in range(n)] for s in range(n)]

    # arithmetic --------------------------------------------------------------

    def basis_product(self, i: int, j: int) -> dict:
        return self.products.get((i, j), {})

    def mul(self, x: Element, y: Element) -> Element:
        F = self.field
        out: dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.products.get((i, j), {}).items():
                    out[k] = out.get(k, F.zero) + a * b * c
        if F.characteristic:
            p = F.characteristic
            return {k: v % p for k, v in out.items() if v % p}
        return {k: v for k, v in out.items() if v}

    def add(self, x: Element, y: Element, scale=1) -> Element:
        F = self.field
        out = dict(x)
        s = F(scale)
        for k, v in y.items():
            out[k] = F(out.get(k, F.zero) + s * v)
        return {k: v for k, v in out.items() if v != 0}

    @property
    def unit(self) -> Element:
        return {e: self.field.one for e in self.idempotents}

    def basis_element(self, i: int) -> Element:
        return {i: self.field.one}

    def vector(self, x: Element) -> tuple:
        v = [self.field.zero] * self.dim
        for k, c in x.items():
            v[k] = c
        return tuple(v)

    def left_mult_matrix(self, x: Element) -> Matrix:
        """Row-convention matrix of ``y -> x*y`` on the whole algebra."""
        F = self.field
        flat = []
        for j in range(self.dim):
            flat.extend(self.vector(self.mul(x, {j: F.one})))
        return Matrix(F, self.dim, self.dim, flat)

    def right_mult_matrix(self, x: Element) -> Matrix:
        """Row-convention matrix of ``y -> y*x``."""
        F = self.field
        flat = []
        for j in range(self.dim):
            flat.extend(self.vector(self.mul({j: F.one}, x)))
        return Matrix(F, self.dim, self.dim, flat)

    # structure ---------------------------------------------------------------

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Radical basis elements whose classes span ``rad / rad^2``."""
        F = self.field
        rad = self.radical
        sq_rows = []
        for i in rad:
            for j in rad:
                p = self.basis_product(i, j)
                if p:
                    sq_rows.append(self.vector(p))
        chosen: list[int] = []
        current = list(sq_rows)
        r = rank(Matrix(F, len(current), self.dim, [x for v in current for x in v])) if current else 0
        for i in rad:
            trial = current + [self.vector({i: F.one})]
            r2 = rank(Matrix(F, len(trial), self.dim, [x for v in trial for x in v]))
            if r2 > r:
                chosen.append(i)
                current = trial
                r = r2
        return tuple(chosen)

    def check(self) -> None:
        """Exhaustive associativity, unit and idempotent checks."""
        F = self.field
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.basis_product(i, j)
                if ij and self.ends[i][1] != self.ends[j][0]:
                    raise ValueError(f"product {self.labels[i]}*{self.labels[j]} ignores the ends")
                for k in range(n):
                    left = self.mul(ij, {k: F.one})
                    right = self.mul({i: F.one}, self.basis_product(j, k))
                    if left != right:
                        raise ValueError(f"not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")
        u = self.unit
        for i in range(n):
            if self.mul(u, {i: F.one}) != {i: F.one} or self.mul({i: F.one}, u) != {i: F.one}:
                raise ValueError(f"unit fails on {self.labels[i]}")
        for v, e in enumerate(self.idempotents):
            for w, f in enumerate(self.idempotents):
                expect = {e: F.one} if v == w else {}
                if self.basis_product(e, f) != expect:
                    raise ValueError("idempotents are not orthogonal")

    @cached_property
    def word_plan(self) -> tuple[tuple[tuple[int, int], ...], dict[int, tuple[tuple[int, object], ...]]]:
        """Generator words spanning the radical.

        Returns ``(words, expr)``: ``words[w] = (parent, g)`` means word ``w`` is
        word ``parent`` (or nothing when ``parent == -1``) followed by
        generator ``g``; ``expr[b]`` writes the radical basis element ``b`` as a
        combination ``((w, coeff), ...)`` of words.
        """
        F = self.field
        gens = self.generators
        words: list[tuple[int, int]] = []
        vecs: list[tuple] = []
        r = 0
        frontier = [(-1, g, {g: F.one}) for g in gens]
        while frontier:
            nxt = []
            for parent, g, el in frontier:
                if not el:
                    continue
                v = self.vector(el)
                trial = vecs + [v]
                r2 = rank(Matrix(F, len(trial), self.dim, [x for row in trial for x in row]))
                if r2 == r:
                    continue
                r = r2
                vecs.append(v)
                words.append((parent, g))
                wid = len(words) - 1
                t = self.ends[g][1]
                for h in gens:
                    if self.ends[h][0] == t:
                        nxt.append((wid, h, self.mul(el, {h: F.one})))
            frontier = nxt
        if r != len(self.radical):
            raise ValueError("generators do not span the radical")
        W = Matrix(F, len(vecs), self.dim, [x for row in vecs for x in row])
        expr: dict[int, tuple[tuple[int, object], ...]] = {}
        from .linalg import solve_rows
        units = Matrix(F, len(self.radical), self.dim,
                       [F.one if j == b else F.zero for b in self.radical for j in range(self.dim)])
        X = solve_rows(W, units)
        for row, b in enumerate(self.radical):
            expr[b] = tuple((w, c) for w, c in enumerate(X.row(row)) if c != 0)
        return tuple(words), expr

    @cached_property
    def op(self) -> "FDAlgebra":
        if getattr(self, "_op_source", None) is not None:
            return self._op_source
        products = {(j, i): v for (i, j), v in self.products.items()}
        ends = [(t, s) for s, t in self.ends]
        name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
        o = FDAlgebra(self.field, self.labels, ends, self.vertices, self.idempotents, products,
                      degrees=self.degrees, name=name)
        o._op_source = self
        return o

    @cached_property
    def env(self) -> "EnvelopingAlgebra":
        return EnvelopingAlgebra(self)

    def is_graded(self) -> bool:
        if self.degrees is None:
            return True
        for (i, j), prod in self.products.items():
            for k in prod:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    return False
        return True

    def __repr__(self) -> str:
        return f"FDAlgebra({self.name or '?'}, dim={self.dim}, vertices={self.n_vertices}, field={self.field.name})"


# path algebras ---------------------------------------------------------------

def _paths_of_length(q: Quiver, length: int) -> list[tuple[str, ...]]:
    if length == 0:
        return [()]
    out = [(a[0],) for a in q.arrows]
    tgt = {a[0]: a[2] for a in q.arrows}
    src = {a[0]: a[1] for a in q.arrows}
    for _ in range(length - 1):
        out = [p + (a,) for p in out for a in tgt if src[a] == tgt[p[-1]]]
    return out


def _path_ends(q: Quiver, path: tuple[str, ...]) -> tuple[str, str]:
    return q.arrow(path[0])[1], q.arrow(path[-1])[2]


def build_path_algebra(p: PathPresentation, field: Field, max_length: int = 32, name: str = "") -> FDAlgebra:
    """Path algebra of ``p.quiver`` modulo the ideal generated by ``p.relations``.

    Relations must be combinations of paths of a common length ``>= 2`` with a
    common source and target; anything else is rejected.
    """
    q = p.quiver
    rels = []
    for rel in p.relations:
        terms = [(tuple(path), field(c)) for path, c in rel if field(c) != 0]
        if not terms:
            continue
        lengths = {len(path) for path, _ in terms}
        if min(lengths) < 2:
            raise ValueError("relation is not admissible: it contains a path of length < 2")
        if len(lengths) != 1:
            raise ValueError("relations must be homogeneous in path length")
        for path, _ in terms:
            for a, b in zip(path, path[1:]):
                if q.arrow(a)[2] != q.arrow(b)[1]:
                    raise ValueError(f"path {'*'.join(path)} is not composable")
        ends = {_path_ends(q, path) for path, _ in terms}
        if len(ends) != 1:
            raise ValueError("relation mixes paths with different endpoints")
        rels.append((lengths.pop(), terms))

    vidx = {v: i for i, v in enumerate(q.vertices)}
    # graded pieces: for each length, the standard basis paths and a reducer
    basis_paths: list[tuple[str, ...]] = []
    pieces: dict[int, tuple[list[tuple[str, ...]], dict[tuple[str, ...], int], Matrix, tuple[int, ...]]] = {}
    length = 0
    while True:
        if length > max_length:
            raise ValueError("quotient appears infinite-dimensional (path length cap reached)")
        paths = _paths_of_length(q, length)
        if not paths:
            top = length
            break
        index = {pt: i for i, pt in enumerate(paths)}
        ideal_rows = []
        for rl, terms in rels:
            if rl > length:
                continue
            for lu in range(length - rl + 1):
                lw = length - rl - lu
                for u in _paths_of_length(q, lu):
                    for w in _paths_of_length(q, lw):
                        row = [field.zero] * len(paths)
                        hit = False
                        for path, c in terms:
                            full = u + path + w
                            if full in index:
                                row[index[full]] = field(row[index[full]] + c)
                                hit = True
                        if hit:
                            ideal_rows.append(row)
        if ideal_rows:
            R, piv = rref(Matrix(field, len(ideal_rows), len(paths), [x for r in ideal_rows for x in r]))
        else:
            R, piv = Matrix.zeros(field, 0, len(paths)), ()
        if length >= 1 and len(piv) == len(paths):
            top = length
            break
        pieces[length] = (paths, index, R, piv)
        basis_paths.extend(pt for i, pt in enumerate(paths) if i not in set(piv))
        length += 1

    bidx = {pt: i for i, pt in enumerate(basis_paths)}
    # vertex idempotents first in the basis order
    n_v = len(q.vertices)

    def normal_form(path: tuple[str, ...]) -> dict[int, object]:
        L = len(path)
        if L >= top:
            return {}
        paths, index, R, piv = pieces[L]
        if path in bidx:
            return {bidx[path]: field.one}
        i = index[path]
        row_of = {pc: r for r, pc in enumerate(piv)}
        r = row_of[i]
        data = R.tolist()[r]
        out = {}
        for j, c in enumerate(data):
            if j != i and c != 0:
                out[bidx[paths[j]]] = field(-c)
        return out

    labels, ends = [], []
    # length-0 paths carry their vertex implicitly; rebuild them explicitly
    trivial = [("__e", v) for v in q.vertices]
    full_basis: list = list(trivial) + [pt for pt in basis_paths if pt]
    for item in full_basis:
        if item and item[0] == "__e":
            labels.append(f"e{item[1]}")
            ends.append((vidx[item[1]], vidx[item[1]]))
        else:
            labels.append("*".join(item))
            s, t = _path_ends(q, item)
            ends.append((vidx[s], vidx[t]))
    pos = {item: i for i, item in enumerate(full_basis)}
    products: dict[tuple[int, int], dict[int, object]] = {}
    for i, x in enumerate(full_basis):
        for j, y in enumerate(full_basis):
            if ends[i][1] != ends[j][0]:
                continue
            if x[0] == "__e":
                products[(i, j)] = {j: field.one}
                continue
            if y[0] == "__e":
                products[(i, j)] = {i: field.one}
                continue
            nf = normal_form(x + y)
            if nf:
                products[(i, j)] = {pos[basis_paths[k]]: c for k, c in nf.items()}
    return FDAlgebra(field, labels, ends, list(q.vertices), list(range(n_v)), products,
                     degrees=[0 if it[0] == "__e" else len(it) for it in full_basis],
                     name=name or "path algebra", check=False)


def path_algebra_element(alg: FDAlgebra, label: str) -> dict:
    return {alg.labels.index(label): alg.field.one}


def opposite(a: FDAlgebra) -> FDAlgebra:
    """Same basis, transposed multiplication.  Cached, so ``opposite(opposite(a)) is a``."""
    return a.op


class EnvelopingAlgebra(FDAlgebra):
    """``A^op (x) A``; basis pairs ``(x, y)`` acting on a bimodule by ``c -> x c y``."""

    def __init__(self, base: FDAlgebra):
        self.base = base
        n, nv = base.dim, base.n_vertices
        F = base.field
        labels, ends = [], []
        for x in range(n):
            for y in range(n):
                labels.append(f"{base.labels[x]}|{base.labels[y]}")
                sx, tx = base.ends[x]
                sy, ty = base.ends[y]
                ends.append((tx * nv + sy, sx * nv + ty))
        products: dict[tuple[int, int], dict[int, object]] = {}
        # (x^op (x) y)(x'^op (x) y') = (x' x)^op (x) (y y')
        for x in range(n):
            for xp in range(n):
                left = base.products.get((xp, x))
                if not left:
                    continue
                for y in range(n):
                    for yp in range(n):
                        right = base.products.get((y, yp))
                        if not right:
                            continue
                        out = {}
                        for k1, c1 in left.items():
                            for k2, c2 in right.items():
                                out[k1 * n + k2] = F(out.get(k1 * n + k2, F.zero) + c1 * c2)
                        products[(x * n + y, xp * n + yp)] = out
        verts = [f"({base.vertices[i]},{base.vertices[j]})" for i in range(nv) for j in range(nv)]
        idem = [base.idempotents[i] * n + base.idempotents[j] for i in range(nv) for j in range(nv)]
        super().__init__(F, labels, ends, verts, idem, products, name=f"{base.name}^e")

    def pair(self, x: int, y: int) -> int:
        return x * self.base.dim + y

    def vertex(self, i: int, j: int) -> int:
        return i * self.base.n_vertices + j


def enveloping(a: FDAlgebra) -> EnvelopingAlgebra:
    return a.env


_POINTS: dict[Field, FDAlgebra] = {}


def point_algebra(field: Field) -> FDAlgebra:
    """The base field as a one-vertex algebra; modules over it are vector spaces."""
    if field not in _POINTS:
        _POINTS[field] = FDAlgebra(field, ["e"], [(0, 0)], ["pt"], [0], {(0, 0): {0: 1}}, name="k")
    return _POINTS[field]


def k_dual_bimodule(a: FDAlgebra):
    """``D(A) = Hom_k(A, k)`` with its canonical bimodule structure."""
    from .bimodule import dual_bimodule
    return dual_bimodule(a)


# standard quivers -----------------------------------------------------------

def quiver_a2() -> PathPresentation:
    """``1 <-a- 2``."""
    return PathPresentation(Quiver(("1", "2"), (("a", "2", "1"),)))


def quiver_a3() -> PathPresentation:
    """``1 <-a- 2 -b-> 3``."""
    return PathPresentation(Quiver(("1", "2", "3"), (("a", "2", "1"), ("b", "2", "3"))))


def quiver_a3_linear_with_relation() -> PathPresentation:
    """``1 <-a- 2 <-b- 3`` with the length-two path ``b*a`` killed."""
    q = Quiver(("1", "2", "3"), (("a", "2", "1"), ("b", "3", "2")))
    return PathPresentation(q, (((("b", "a"), 1),),))


def dual_numbers() -> PathPresentation:
    """``k[x]/(x^2)``: one loop squared to zero."""
    return PathPresentation(Quiver(("1",), (("x", "1", "1"),)), (((("x", "x"), 1),),))


def point() -> PathPresentation:
    return PathPresentation(Quiver(("1",), ()))
