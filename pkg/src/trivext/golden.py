"""Reference data: the A2 classification, the A3 table of grid pictures and the negative A3 example.

Grid pictures are strings ``"r1 / r2 / r3 : arrows"``.  Row ``i`` lists the
dimensions of ``e_i C e_1, e_i C e_2, e_i C e_3`` with ``n`` standing for the
family parameter.  The listed arrows act as identities, every other arrow is
zero.  For the quiver ``1 <-a- 2 -b-> 3``:

* ``A<j>`` is ``a .`` from row 1 to row 2 in column ``j``;
* ``B<j>`` is ``b .`` from row 3 to row 2 in column ``j``;
* ``a<i>`` is ``. a`` from column 2 to column 1 in row ``i``;
* ``b<i>`` is ``. b`` from column 2 to column 3 in row ``i``.

An entry with several pictures is their direct sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import FDAlgebra, PathPresentation, build_path_algebra, quiver_a2, quiver_a3, \
    quiver_a3_linear_with_relation
from .bimodule import Bimodule, left_simple, simple_tensor
from .linalg import Field
from .modules import FDModule


@dataclass(frozen=True)
class GoldenEntry:
    family: str
    name: str
    build: Callable[[FDAlgebra], Bimodule]
    verdict: str
    alpha: int
    t_part: tuple[str, ...]  # indecomposables of T, by inventory name
    ker_varpi: tuple[str, ...]


def _tensor_p1_s2(lam: FDAlgebra) -> Bimodule:
    return Bimodule.tensor_of(FDModule.projective(lam.op, [0]), FDModule.simple(lam, 1))


def _tensor_s1_p2(lam: FDAlgebra) -> Bimodule:
    return Bimodule.tensor_of(left_simple(lam, 0), FDModule.projective(lam, [1]))


ALL_A2 = ("S2", "P1", "P2")

A2_GOLDEN: tuple[GoldenEntry, ...] = (
    GoldenEntry("1", "L", Bimodule.regular, "ig_infinite_gldim", 0, ALL_A2, ()),
    GoldenEntry("1", "D(L)", Bimodule.dual, "ig_infinite_gldim", 0, ALL_A2, ()),
    GoldenEntry("2", "Le1(x)e1L", lambda lam: Bimodule.projective(lam, 0, 0), "ig_infinite_gldim", 1,
                ("P1",), ("S2",)),
    GoldenEntry("3", "Le2(x)e2L", lambda lam: Bimodule.projective(lam, 1, 1), "ig_infinite_gldim", 1,
                ("P2",), ("P1",)),
    GoldenEntry("4", "S1(x)S2", lambda lam: simple_tensor(lam, 0, 1), "ig_infinite_gldim", 1,
                ("S2",), ("P2",)),
    GoldenEntry("5", "Le2(x)e1L", lambda lam: Bimodule.projective(lam, 1, 0), "finite_gldim", 2, (), ALL_A2),
    GoldenEntry("5", "S1(x)P2", _tensor_s1_p2, "finite_gldim", 2, (), ALL_A2),
    GoldenEntry("5", "P1(x)S2", _tensor_p1_s2, "finite_gldim", 2, (), ALL_A2),
)

# transcribed from the published grid pictures, one string per direct summand
TABLE2: dict[str, tuple[str, ...]] = {
    "1-1": ("1 0 0 / 1 1 1 / 0 0 1 : A1 a2 b2 B3",),
    "1-2": ("0 0 1 / 1 1 1 / 1 0 0 : A3 a2 b2 B1",),
    "1-3": ("0 1 1 / 0 1 0 / 1 1 0 : b1 A2 a3 B2",),
    "1-4": ("1 1 0 / 0 1 0 / 0 1 1 : a1 A2 b3 B2",),
    "2-1": ("1 1 0 / 1 1 0 / 1 0 0 : A1 a1 A2 a2 B1",),
    "2-2": ("0 1 0 / 0 1 0 / 1 1 0 : A2 a3 B2",),
    "3-1": ("0 0 1 / 0 1 1 / 0 1 1 : A3 b2 b3 B2 B3",),
    "3-2": ("0 1 1 / 0 1 0 / 0 1 0 : b1 A2 B2",),
    "4-1": ("1 0 0 / 1 1 1 / 0 0 0 : A1 a2 b2",),
    "4-2": ("1 1 1 / 0 1 1 / 0 0 0 : a1 b1 A2 A3 b2",),
    "5-1": ("0 0 0 / 1 1 1 / 0 0 1 : a2 b2 B3",),
    "5-2": ("0 0 0 / 1 1 0 / 1 1 1 : a2 B1 a3 b3 B2",),
    "6-1": ("1 0 0 / 1 0 1 / 0 0 1 : A1 B3",),
    "6-2": ("0 0 1 / 1 0 1 / 1 0 0 : A3 B1",),
    "7-1": ("0 1 1 / 0 0 0 / 1 1 0 : b1 a3",),
    "7-2": ("1 1 0 / 0 0 0 / 0 1 1 : a1 b3",),
    "8-1": ("0 0 0 / n 0 1 / 0 0 1 : B3",),
    "8-2": ("n n 0 / 0 0 1 / 0 0 1 : a1 B3",),
    "8-3": ("0 n 0 / 0 n 1 / 0 0 1 : A2 B3",),
    "9-1": ("1 0 0 / 1 0 n / 0 0 0 : A1",),
    "9-2": ("1 0 0 / 1 0 0 / 0 n n : A1 b3",),
    "9-3": ("1 0 0 / 1 n 0 / 0 n 0 : A1 B2",),
    "10-1": ("0 0 0 / n 0 0 / n 0 0 : B1", "0 0 0 / 0 0 0 / 1 1 0 : a3"),
    "10-2": ("0 n n / 0 n n / 0 n n : b1 A2 A3 b2 b3 B2 B3", "0 0 0 / 0 0 0 / 1 1 0 : a3"),
    "10-3": ("n n n / 0 0 0 / 1 1 0 : a1 b1 a3",),
    "11-1": ("0 0 n / 0 0 n / 0 0 0 : A3", "0 1 1 / 0 0 0 / 0 0 0 : b1"),
    "11-2": ("n n 0 / n n 0 / n n 0 : A1 a1 A2 a2 B1 a3 B2", "0 1 1 / 0 0 0 / 0 0 0 : b1"),
    "11-3": ("0 1 1 / 0 0 0 / n n n : b1 a3 b3",),
    "12-1": ("0 0 0 / 1 1 1 / n 0 0 : a2 b2",),
    "12-2": ("0 0 0 / 0 0 0 / n 0 0 : ", "0 0 0 / 1 1 1 / 1 0 0 : a2 b2 B1"),
    "12-3": ("0 0 n / 1 1 1 / 0 0 0 : a2 b2",),
    "12-4": ("0 0 n / 0 0 0 / 0 0 0 : ", "0 0 1 / 1 1 1 / 0 0 0 : A3 a2 b2"),
    "13-1": ("0 n n / 0 n n / 0 0 0 : b1 A2 A3 b2", "0 1 0 / 0 1 0 / 0 1 0 : A2 B2"),
    "13-2": ("0 0 0 / n n 0 / n n 0 : a2 B1 a3 B2", "0 1 0 / 0 1 0 / 0 1 0 : A2 B2"),
}

TABLE2_FAMILIES: tuple[str, ...] = tuple(sorted({k.split("-")[0] for k in TABLE2}, key=int))

# the negative example: T = thick(P1 + S3) is admissible but no bimodule has it as asid subcategory
NEGATIVE_T_MEMBERS = ("P1", "S3")
NEGATIVE_KER_MEMBER = "P3"


def a2_algebra(field: Field | None = None) -> FDAlgebra:
    return build_path_algebra(quiver_a2(), field or Field.rationals(), name="kA2")


def a3_algebra(field: Field | None = None) -> FDAlgebra:
    return build_path_algebra(quiver_a3(), field or Field.rationals(), name="kA3")


def negative_algebra(field: Field | None = None) -> FDAlgebra:
    return build_path_algebra(quiver_a3_linear_with_relation(), field or Field.rationals(), name="kA3/(ba)")


def negative_presentation() -> PathPresentation:
    return quiver_a3_linear_with_relation()


def _arrow_blocks(code: str) -> tuple[str, bool, int, int]:
    """``(label, is_left, source row, source column)``, 0-indexed, for one arrow code."""
    kind, k = code[0], int(code[1:]) - 1
    if kind == "A":
        return "a", True, 0, k
    if kind == "B":
        return "b", True, 2, k
    if kind == "a":
        return "a", False, k, 1
    if kind == "b":
        return "b", False, k, 1
    raise ValueError(f"unknown arrow code {code!r}")


def grid_bimodule(lam: FDAlgebra, picture: str, n: int = 1, name: str = "") -> Bimodule:
    """The bimodule drawn by one grid picture over ``1 <-a- 2 -b-> 3``."""
    dims_part, _, arrows_part = picture.partition(":")
    rows = [r.split() for r in dims_part.split("/")]
    grid = [[n if x == "n" else int(x) for x in r] for r in rows]
    left: dict[str, dict] = {}
    right: dict[str, dict] = {}
    for code in arrows_part.split():
        label, is_left, i, j = _arrow_blocks(code)
        d = grid[i][j]
        ident = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
        (left if is_left else right).setdefault(label, {})[(i, j)] = ident
    return Bimodule.from_grid(lam, grid, left=left, right=right, name=name)


def table2_bimodule(lam: FDAlgebra, key: str, n: int = 1) -> Bimodule:
    parts = [grid_bimodule(lam, p, n, name=f"{key}[{k}]") for k, p in enumerate(TABLE2[key])]
    name = f"T2:{key}(n={n})"
    if len(parts) == 1:
        parts[0].name = name
        return parts[0]
    return Bimodule.direct_sum(parts, name=name)
