"""Exact computations over hereditary algebras of Dynkin type.

Every object of ``D^b(mod L)`` is a sum of shifted indecomposable modules,
and there are finitely many of those.  Functors, thick subcategories and
orthogonals can therefore be tabulated on a finite inventory.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .algebra import FDAlgebra
from .bimodule import Bimodule
from .complexes import Complex, cohomology_module, resolve
from .derived import derived_tensor_power
from .linalg import Matrix, hstack, rank
from .modules import (FDModule, cokernel, decompose, ext_dim, hom_matrices, is_isomorphic, kernel,
                      minimal_projective_resolution, syzygy)

Obj = tuple[int, int]  # (inventory index, shift): the object X_i[s]


def is_hereditary(lam: FDAlgebra, cap: int = 4) -> bool:
    for v in range(lam.n_vertices):
        res = minimal_projective_resolution(FDModule.simple(lam, v), cap=cap, detect_recurrence=False)
        if res.status.kind != "finite" or res.status.length > 1:
            return False
    return True


def dynkin_type(lam: FDAlgebra) -> str | None:
    """``"A3"``, ``"D4"``, ... when ``L`` is hereditary with Dynkin underlying graph, else ``None``."""
    n = lam.n_vertices
    edges = set()
    for g in lam.generators:
        s, t = lam.ends[g]
        if s == t:
            return None
        e = (min(s, t), max(s, t))
        if e in edges:
            return None
        edges.add(e)
    if len(edges) != n - 1 or not is_hereditary(lam):
        return None
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for s, t in edges:
        adj[s].append(t)
        adj[t].append(s)
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return None
    branch = [v for v in range(n) if len(adj[v]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        return None
    arms = []
    c = branch[0]
    for w in adj[c]:
        length, prev = 1, c
        while len(adj[w]) == 2:
            nxt = adj[w][0] if adj[w][0] != prev else adj[w][1]
            prev, w = w, nxt
            length += 1
        arms.append(length + 1)
    p, q, r = sorted(arms)
    if p == 2 and q == 2:
        return f"D{n}"
    if p == 2 and q == 3 and r in (3, 4, 5):
        return f"E{n}"
    return None


def _stalk_resolution(m: FDModule, cap: int) -> Complex:
    return resolve(Complex.stalk(m), cap=cap).projective


class Inventory:
    """Indecomposable modules of a Dynkin hereditary algebra, gathered from Nakayama orbits of projectives."""

    def __init__(self, lam: FDAlgebra, cap: int = 8, seed: int = 0):
        if dynkin_type(lam) is None:
            raise ValueError("algebra is not hereditary of Dynkin type")
        self.lam = lam
        self.cap = cap
        self.seed = seed
        self.modules: list[FDModule] = []
        nu = Bimodule.dual(lam)
        queue = [FDModule.projective(lam, [v]) for v in range(lam.n_vertices)]
        queue += [FDModule.simple(lam, v) for v in range(lam.n_vertices)]
        while queue:
            m = queue.pop(0)
            if self._find(m) is not None:
                continue
            self.modules.append(m)
            moved = derived_tensor_power(Complex.stalk(m), nu, 1, cap=cap)
            for n in moved.cohomology_dims():
                for s, k in decompose(cohomology_module(moved, n), seed=seed).summands:
                    queue.append(s)
        self.modules.sort(key=lambda m: (m.dim, m.vdims))
        for i, m in enumerate(self.modules):
            if not m.name:
                m.name = "M" + "".join(map(str, m.vdims))
        self._hom: dict[tuple[int, int, int], int] = {}

    def __len__(self) -> int:
        return len(self.modules)

    def _find(self, m: FDModule) -> int | None:
        for i, x in enumerate(self.modules):
            if x.vdims == m.vdims and is_isomorphic(x, m, seed=self.seed):
                return i
        return None

    def locate(self, m: FDModule) -> int:
        i = self._find(m)
        if i is None:
            raise KeyError("module is not an indecomposable of the inventory")
        return i

    def name(self, i: int) -> str:
        return self.modules[i].name

    @cached_property
    def resolutions(self) -> list[Complex]:
        return [_stalk_resolution(m, self.cap) for m in self.modules]

    def hom(self, i: int, j: int, k: int) -> int:
        """``dim Hom(X_i, X_j[k])``."""
        if k not in (0, 1):
            return 0
        key = (i, j, k)
        if key not in self._hom:
            self._hom[key] = ext_dim(self.modules[i], self.modules[j], k)
        return self._hom[key]

    def obj_hom(self, x: Obj, y: Obj, k: int = 0) -> int:
        """``dim Hom(X_i[s], X_j[t][k])``."""
        return self.hom(x[0], y[0], y[1] + k - x[1])

    def dimension_vector(self, i: int) -> tuple[int, ...]:
        return self.modules[i].vdims

    def split(self, X: Complex) -> list[Obj]:
        """Indecomposable summands of a complex, as ``(index, shift)``."""
        out: list[Obj] = []
        for n in sorted(X.cohomology_dims()):
            for s, k in decompose(cohomology_module(X, n), seed=self.seed).summands:
                out.extend([(self.locate(s), -n)] * k)
        return sorted(out)

    def obj_complex(self, x: Obj) -> Complex:
        return self.resolutions[x[0]].shift(x[1])

    # thick subcategories -------------------------------------------------------------

    def _cone_pieces(self, i: int, j: int) -> set[int]:
        """Summands of kernels, cokernels and extension middle terms between ``X_i`` and ``X_j``."""
        Mi, Mj = self.modules[i], self.modules[j]
        out: set[int] = set()
        F = self.lam.field
        maps = hom_matrices(Mi, Mj)
        cands = list(maps)
        if len(maps) > 1:
            total = maps[0]
            for f in maps[1:]:
                total = total + f
            cands.append(total)
        for f in cands:
            if f.is_zero():
                continue
            K, _ = kernel(f, Mi)
            Q, _ = cokernel(f, Mj)
            for piece in (K, Q):
                if piece.dim:
                    out.update(self.locate(s) for s, _ in decompose(piece, seed=self.seed).summands)
        # extensions 0 -> X_j -> E -> X_i -> 0 as pushouts along Omega X_i -> X_j
        if self.hom(i, j, 1):
            K, inc, P, _ = syzygy(Mi)
            gs = hom_matrices(K, Mj)
            through = [inc @ h for h in hom_matrices(P, Mj)]
            cands = list(gs)
            if len(gs) > 1:
                total = gs[0]
                for g in gs[1:]:
                    total = total + g
                cands.append(total)
            base_rank = rank(_stack(F, through, K.dim * Mj.dim)) if through else 0
            for g in cands:
                if rank(_stack(F, through + [g], K.dim * Mj.dim)) == base_rank:
                    continue  # split extension
                E, _ = cokernel(hstack(F, [inc, g.scale(-1)]), _direct_sum(P, Mj))
                out.update(self.locate(s) for s, _ in decompose(E, seed=self.seed).summands)
        return out

    def thick_closure(self, gens: Iterable[int]) -> frozenset[int]:
        S = set(gens)
        while True:
            new = set()
            for i in S:
                for j in S:
                    new |= self._cone_pieces(i, j) - S
            if not new:
                return frozenset(S)
            S |= new

    def thick_subcategories(self) -> list[frozenset[int]]:
        found = {frozenset()}
        frontier = [frozenset()]
        while frontier:
            nxt = []
            for S in frontier:
                for i in range(len(self)):
                    if i in S:
                        continue
                    T = self.thick_closure(S | {i})
                    if T not in found:
                        found.add(T)
                        nxt.append(T)
            frontier = nxt
        return sorted(found, key=lambda S: (len(S), sorted(S)))

    def right_orthogonal(self, S: Iterable[int]) -> frozenset[int]:
        S = list(S)
        return frozenset(j for j in range(len(self)) if all(self.hom(i, j, k) == 0 for i in S for k in (0, 1)))

    def left_orthogonal(self, S: Iterable[int]) -> frozenset[int]:
        S = list(S)
        return frozenset(j for j in range(len(self)) if all(self.hom(j, i, k) == 0 for i in S for k in (0, 1)))

    def k0_rank(self, S: Iterable[int]) -> int:
        S = list(S)
        if not S:
            return 0
        F = self.lam.field
        return rank(Matrix.from_rows(F, [self.dimension_vector(i) for i in S]))

    def is_admissible(self, S: Iterable[int]) -> bool:
        """Both orthogonals complement ``S`` in the Grothendieck group."""
        S = frozenset(S)
        n = self.lam.n_vertices
        return (self.k0_rank(S) + self.k0_rank(self.right_orthogonal(S)) == n
                and self.k0_rank(S) + self.k0_rank(self.left_orthogonal(S)) == n)


def _stack(F, mats: Sequence[Matrix], width: int) -> Matrix:
    return Matrix(F, len(mats), width, [x for m in mats for x in m.entries])


def _direct_sum(P: FDModule, M: FDModule) -> FDModule:
    from .modules import direct_sum
    return direct_sum([P, M])


# the functor - (x) C on the inventory --------------------------------------------------------

@dataclass
class DynkinAnalysis:
    """``- (x)^L C`` tabulated on the inventory and the resulting asid decision."""

    inventory: Inventory
    table: list[list[Obj]]  # X_i (x) C as a list of shifted indecomposables
    kernels: list[frozenset[int]]  # Ker(- (x) C^a), a = 0, 1, ..., up to stabilization
    alpha: int
    ker_varpi: frozenset[int]
    t_part: frozenset[int]
    is_asid: bool
    reason: str = ""
    permutation: dict[int, Obj] = dc_field(default_factory=dict)

    def names(self, S: Iterable[int]) -> list[str]:
        return [self.inventory.name(i) for i in sorted(S)]


def tensor_table(inv: Inventory, c: Bimodule) -> list[list[Obj]]:
    return [inv.split(derived_tensor_power(Complex.stalk(m), c, 1, cap=inv.cap)) for m in inv.modules]


def _power_vanishes(table: list[list[Obj]], a: int) -> set[int]:
    dead: set[int] = set()
    for _ in range(a):
        dead = {i for i, img in enumerate(table) if all(j in dead for j, _ in img)}
    return dead


def analyze_dynkin(lam: FDAlgebra, c: Bimodule, inv: Inventory | None = None) -> DynkinAnalysis:
    inv = inv or Inventory(lam)
    table = tensor_table(inv, c)
    kernels = [frozenset()]
    while True:
        nxt = frozenset(_power_vanishes(table, len(kernels)))
        if nxt == kernels[-1]:
            break
        kernels.append(nxt)
    alpha = len(kernels) - 1
    ker = kernels[-1]
    t_part = inv.left_orthogonal(ker)
    perm: dict[int, Obj] = {}
    ok, reason = True, ""
    for i in sorted(t_part):
        img = table[i]
        if len(img) != 1 or img[0][0] not in t_part:
            ok, reason = False, f"{inv.name(i)} (x) C is not an indecomposable object of T"
            break
        perm[i] = img[0]
    if ok and len({j for j, _ in perm.values()}) != len(perm):
        ok, reason = False, "- (x) C is not injective on T"
    if ok:
        for i, j in product(sorted(t_part), repeat=2):
            for k in (-1, 0, 1, 2):
                a = inv.obj_hom((i, 0), (j, 0), k)
                b = inv.obj_hom(perm[i], perm[j], k)
                if a != b:
                    ok = False
                    reason = f"Hom({inv.name(i)}, {inv.name(j)}[{k}]) changes dimension"
                    break
            if not ok:
                break
    return DynkinAnalysis(inv, table, kernels, alpha, ker, t_part, ok, reason, perm)
