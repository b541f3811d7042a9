"""Exact linear algebra over the rationals and prime fields.

Matrices are immutable and backed by FLINT (``fmpq_mat`` over Q, ``nmod_mat``
over F_p).  Python-side field elements are ``Fraction`` for Q and ``int`` in
``range(p)`` for F_p.

Two conventions coexist in the code base.  The public helpers ``rank``,
``nullspace_basis`` and ``solve`` follow the usual column convention
(``m @ x = b``).  Module maps elsewhere act on row vectors (``v -> v @ M``),
so a few row-oriented helpers (``left_kernel``, ``row_basis``, ``solve_rows``)
are provided as well.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Base field: ``Field.rationals()`` or ``Field.prime(p)``."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def from_name(cls, name: str) -> "Field":
        """Parse ``Q`` or ``F2``/``F3``/``Fp`` style names."""
        name = name.strip()
        if name.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        if name[:1] in ("F", "f") and name[1:].isdigit():
            return cls(int(name[1:]))
        raise ValueError(f"unknown field {name!r}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def fmt(self, x) -> str:
        if self.characteristic == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def elements(self) -> list:
        if self.characteristic == 0:
            raise ValueError("the rationals are infinite")
        return list(range(self.characteristic))

    def random_element(self, rng: random.Random, height: int = 3):
        if self.characteristic == 0:
            return Fraction(rng.randint(-height, height))
        return rng.randrange(self.characteristic)

    # flint bridges
    def _flint(self, rows: int, cols: int, flat: Sequence):
        if self.characteristic == 0:
            return flint.fmpq_mat(rows, cols, [flint.fmpq(int(x.numerator), int(x.denominator))
                                               if isinstance(x, Fraction) else int(x) for x in flat])
        return flint.nmod_mat(rows, cols, [int(x) for x in flat], self.characteristic)

    def _from_flint_entry(self, x):
        if self.characteristic == 0:
            return Fraction(int(x.p), int(x.q))
        return int(x)


QQ = Field(0)
F2 = Field(2)
F3 = Field(3)


class Matrix:
    """Immutable dense matrix over a ``Field``."""

    __slots__ = ("field", "rows", "cols", "_m", "_list")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence | None = None, _m=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if _m is None:
            flat = [field.zero] * (rows * cols) if entries is None else list(entries)
            if len(flat) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
            _m = field._flint(rows, cols, flat)
        self._m = _m
        self._list = None

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty row list")
            ncols = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(field(x) for x in r)
        return cls(field, len(rows), ncols, flat)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        if field.characteristic == 0:
            return cls(field, rows, cols, _m=flint.fmpq_mat(rows, cols))
        return cls(field, rows, cols, _m=flint.nmod_mat(rows, cols, field.characteristic))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        flat = [field.zero] * (n * n)
        for i in range(n):
            flat[i * n + i] = field.one
        return cls(field, n, n, flat)

    @classmethod
    def _wrap(cls, field: Field, m) -> "Matrix":
        return cls(field, m.nrows(), m.ncols(), _m=m)

    def tolist(self) -> list[list]:
        if self._list is None:
            if self.rows == 0 or self.cols == 0:
                self._list = [[] for _ in range(self.rows)]
            else:
                conv = self.field._from_flint_entry
                self._list = [[conv(x) for x in row] for row in self._m.tolist()]
        return self._list

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.tolist() for x in row)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.tolist()[i][j]

    def row(self, i: int) -> tuple:
        return tuple(self.tolist()[i])

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.tolist())

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise ValueError("field mismatch")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix._wrap(self.field, self._m * other._m)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix._wrap(self.field, self._m + other._m)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix._wrap(self.field, self._m - other._m)

    def __neg__(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix._wrap(self.field, -self._m)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if self.rows == 0 or self.cols == 0:
            return self
        if self.field.characteristic == 0:
            return Matrix._wrap(self.field, self._m * flint.fmpq(c.numerator, c.denominator))
        return Matrix._wrap(self.field, self._m * int(c))

    @property
    def T(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.cols, self.rows)
        return Matrix._wrap(self.field, self._m.transpose())

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.tolist() for x in row)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "Matrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        data = self.tolist()
        return Matrix(self.field, len(row_idx), len(col_idx), [data[i][j] for i in row_idx for j in col_idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.tolist() == other.tolist()

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.entries))

    def __repr__(self) -> str:
        f = self.field.fmt
        body = "; ".join(" ".join(f(x) for x in r) for r in self.tolist())
        return f"Matrix[{self.field.name}]({self.rows}x{self.cols}: {body})"


def hstack(field: Field, blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(field, rows or 0, 0)
    r = blocks[0].rows
    data = [[] for _ in range(r)]
    for b in blocks:
        if b.rows != r:
            raise ValueError("hstack row mismatch")
        for i, row in enumerate(b.tolist()):
            data[i].extend(row)
    cols = sum(b.cols for b in blocks)
    return Matrix(field, r, cols, [x for row in data for x in row])


def vstack(field: Field, blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(field, 0, cols or 0)
    c = blocks[0].cols
    flat = []
    for b in blocks:
        if b.cols != c:
            raise ValueError("vstack column mismatch")
        for row in b.tolist():
            flat.extend(row)
    return Matrix(field, sum(b.rows for b in blocks), c, flat)


def block_matrix(field: Field, grid: Sequence[Sequence[Matrix | None]], row_sizes: Sequence[int],
                 col_sizes: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    rows, cols = sum(row_sizes), sum(col_sizes)
    flat = [field.zero] * (rows * cols)
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            b = grid[bi][bj]
            if b is not None and rs and cs:
                if b.shape != (rs, cs):
                    raise ValueError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                for i, row in enumerate(b.tolist()):
                    base = (r0 + i) * cols + c0
                    flat[base:base + cs] = row
            c0 += cs
        r0 += rs
    return Matrix(field, rows, cols, flat)


def block_diag(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    n = len(blocks)
    grid = [[blocks[i] if i == j else None for j in range(n)] for i in range(n)]
    return block_matrix(field, grid, [b.rows for b in blocks], [b.cols for b in blocks])


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.  Deterministic."""
    if m.rows == 0 or m.cols == 0:
        return m, ()
    r, rk = m._m.rref()
    R = Matrix._wrap(m.field, r)
    pivots = []
    data = R.tolist()
    for i in range(rk):
        row = data[i]
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    return R, tuple(pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return int(m._m.rank())


def nullspace_basis(m: Matrix) -> list[tuple]:
    """Basis of ``{v : m @ v = 0}`` as tuples; one vector per free column."""
    F = m.field
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(F.one if i == j else F.zero for i in range(m.cols)) for j in range(m.cols)]
    R, piv = rref(m)
    data = R.tolist()
    pivset = set(piv)
    out = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [F.zero] * m.cols
        v[free] = F.one
        for i, pc in enumerate(piv):
            v[pc] = -data[i][free]
            if F.characteristic:
                v[pc] %= F.characteristic
        out.append(tuple(v))
    return out


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """Some ``x`` with ``m @ x = b``, or ``None`` if the system is inconsistent."""
    F = m.field
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    if m.cols == 0:
        return () if all(F(x) == 0 for x in b) else None
    aug = hstack(F, [m, Matrix(F, m.rows, 1, [F(x) for x in b])])
    R, piv = rref(aug)
    if m.cols in piv:
        return None
    x = [F.zero] * m.cols
    data = R.tolist()
    for i, pc in enumerate(piv):
        x[pc] = data[i][m.cols]
    return tuple(x)


# row-vector helpers ---------------------------------------------------------

def row_basis(m: Matrix) -> Matrix:
    """Independent rows spanning the row space (the nonzero rows of the rref)."""
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.field, 0, m.cols)
    R, piv = rref(m)
    return R.submatrix(range(len(piv)), range(m.cols))


def left_kernel(m: Matrix) -> Matrix:
    """Rows spanning ``{v : v @ m = 0}``."""
    vecs = nullspace_basis(m.T)
    return Matrix(m.field, len(vecs), m.rows, [x for v in vecs for x in v])


def solve_rows(m: Matrix, b: Matrix) -> Matrix | None:
    """``X`` with ``X @ m = b`` (row by row), or ``None``."""
    F = m.field
    if b.cols != m.cols:
        raise ValueError("column mismatch")
    if b.rows == 0:
        return Matrix.zeros(F, 0, m.rows)
    if m.rows == 0:
        return Matrix.zeros(F, b.rows, 0) if b.is_zero() else None
    # transpose: m^T X^T = b^T, solve all columns at once via one rref
    aug = hstack(F, [m.T, b.T])
    R, piv = rref(aug)
    if any(p >= m.rows for p in piv):
        return None
    data = R.tolist()
    X = [[F.zero] * m.rows for _ in range(b.rows)]
    for i, pc in enumerate(piv):
        for k in range(b.rows):
            X[k][pc] = data[i][m.rows + k]
    return Matrix(F, b.rows, m.rows, [x for row in X for x in row])


def complement_rows(sub: Matrix, n: int) -> Matrix:
    """Standard basis rows completing the row space of ``sub`` to ``F^n``."""
    F = sub.field
    if sub.rows == 0:
        return Matrix.identity(F, n)
    _, piv = rref(sub)
    free = [j for j in range(n) if j not in set(piv)]
    flat = []
    for j in free:
        flat.extend(F.one if i == j else F.zero for i in range(n))
    return Matrix(F, len(free), n, flat)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    if m.rows == 0:
        return m
    return Matrix._wrap(m.field, m._m.inv())


def random_matrix(field: Field, rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix(field, rows, cols, [field.random_element(rng) for _ in range(rows * cols)])
