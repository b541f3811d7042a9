"""Reader and writer for quiver spec files (``.alg``).

The grammar is documented in ``docs/specfile.ebnf``.  Vertex names in cells
and arrows are the names declared in the algebra block.  Paths in relations
are ``*``-separated arrow names composed left to right, the first factor
being applied first: for ``1 <-a- 2 <-b- 3`` the length-two path is ``b*a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from lark import Lark, Transformer, UnexpectedInput, v_args

from .algebra import FDAlgebra, PathPresentation, Quiver, build_path_algebra
from .bimodule import Bimodule
from .linalg import Field
from .modules import FDModule

GRAMMAR = r"""
start: block*

?block: algebra | bimodule | tensor

algebra: "algebra" STRING? "{" astmt* "}"
?astmt: vertices | arrows | relations | degrees
vertices: "vertices" ":" name ("," name)* ";"
arrows: "arrows" ":" arrow ("," arrow)* ";"
arrow: NAME ":" name "->" name
relations: "relations" ":" [relation ("," relation)*] ";"
relation: term (SIGN term)*
term: [number "*"] path
path: NAME ("*" NAME)*
degrees: "degrees" ":" degree ("," degree)* ";"
degree: NAME "=" INT

bimodule: "bimodule" STRING "over" STRING "{" bstmt* "}"
?bstmt: cell_dim | action
cell_dim: "cell" cell ":" "dim" INT ";"
action: SIDE NAME cell ":" matrix ";"
cell: "(" name "," name ")"

tensor: "tensor_bimodule" STRING "over" STRING "{" "left_module" ":" rep ";" "right_module" ":" rep ";" "}"
rep: "dims" vector ("," NAME ":" matrix)*

matrix: "[" [vector ("," vector)*] "]"
vector: "[" [number ("," number)*] "]"
number: SIGNED_NUMBER | FRACTION
name: NAME | INT

SIDE: "left" | "right"
SIGN: "+" | "-"
FRACTION: /-?\d+\/\d+/
NAME: /[A-Za-z_][A-Za-z0-9_']*/
STRING: /"[^"]*"/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_NUMBER
%import common.WS
%ignore WS
%ignore COMMENT
"""

_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


class SpecError(ValueError):
    """Malformed spec file; ``line`` and ``column`` locate the problem when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)
        self.line, self.column = line, column


@dataclass
class AlgebraSpec:
    name: str
    vertices: list[str]
    arrows: list[tuple[str, str, str]]
    relations: list[list[tuple[tuple[str, ...], Fraction]]]
    degrees: dict[str, int] = dc_field(default_factory=dict)

    @classmethod
    def from_presentation(cls, name: str, pres: PathPresentation) -> "AlgebraSpec":
        rels = [[(tuple(path), Fraction(str(c))) for path, c in rel] for rel in pres.relations]
        return cls(name, list(pres.quiver.vertices), [tuple(a) for a in pres.quiver.arrows], rels)

    def presentation(self) -> PathPresentation:
        rels = tuple(tuple((path, c) for path, c in rel) for rel in self.relations)
        return PathPresentation(Quiver(tuple(self.vertices), tuple(self.arrows)), rels)

    def build(self, field: Field) -> FDAlgebra:
        alg = build_path_algebra(self.presentation(), field, name=self.name)
        if self.degrees:
            alg = regrade(alg, self.degrees)
        return alg


@dataclass
class BimoduleSpec:
    name: str
    over: str
    grid: dict[tuple[str, str], int]
    left: dict[str, dict[tuple[str, str], list[list[Fraction]]]]
    right: dict[str, dict[tuple[str, str], list[list[Fraction]]]]
    line: int | None = None

    def build(self, lam: FDAlgebra) -> Bimodule:
        vidx = {v: i for i, v in enumerate(lam.vertices)}
        nv = lam.n_vertices

        def cell(c):
            try:
                return vidx[c[0]], vidx[c[1]]
            except KeyError as e:
                raise SpecError(f"bimodule {self.name!r}: unknown vertex {e.args[0]!r}", self.line) from None

        grid = [[0] * nv for _ in range(nv)]
        for c, d in self.grid.items():
            i, j = cell(c)
            grid[i][j] = d
        left = {a: {cell(c): m for c, m in blocks.items()} for a, blocks in self.left.items()}
        right = {a: {cell(c): m for c, m in blocks.items()} for a, blocks in self.right.items()}
        try:
            return Bimodule.from_grid(lam, grid, left=left, right=right, name=self.name)
        except (ValueError, AssertionError) as e:
            raise SpecError(f"bimodule {self.name!r}: {e}", self.line) from None


@dataclass
class RepSpec:
    dims: list[int]
    arrows: dict[str, list[list[Fraction]]]


@dataclass
class TensorSpec:
    name: str
    over: str
    left_module: RepSpec
    right_module: RepSpec
    line: int | None = None

    def modules(self, lam: FDAlgebra) -> tuple[FDModule, FDModule]:
        """``(N, M)``: ``N`` over the opposite algebra, matrices indexed as for the reversed arrows."""
        try:
            n = FDModule.from_representation(lam.op, self.left_module.dims, self.left_module.arrows, name="N")
            m = FDModule.from_representation(lam, self.right_module.dims, self.right_module.arrows, name="M")
        except (ValueError, AssertionError) as e:
            raise SpecError(f"tensor_bimodule {self.name!r}: {e}", self.line) from None
        return n, m

    def build(self, lam: FDAlgebra) -> Bimodule:
        n, m = self.modules(lam)
        return Bimodule.tensor_of(n, m, name=self.name)


@dataclass
class SpecFile:
    algebras: dict[str, AlgebraSpec]
    bimodules: dict[str, BimoduleSpec]
    tensors: dict[str, TensorSpec]

    def algebra(self, name: str | None = None) -> AlgebraSpec:
        if name is None:
            if len(self.algebras) != 1:
                raise SpecError(f"file declares {len(self.algebras)} algebras; name one")
            return next(iter(self.algebras.values()))
        try:
            return self.algebras[name]
        except KeyError:
            raise SpecError(f"no algebra named {name!r}") from None

    def bimodule_names(self) -> list[str]:
        return list(self.bimodules) + list(self.tensors)

    def bimodule(self, name: str | None, lam_by_name: dict[str, FDAlgebra]) -> tuple[str, Bimodule]:
        names = self.bimodule_names()
        if name is None:
            if len(names) != 1:
                raise SpecError(f"file declares {len(names)} bimodules; name one")
            name = names[0]
        spec = self.bimodules.get(name) or self.tensors.get(name)
        if spec is None:
            raise SpecError(f"no bimodule named {name!r}")
        if spec.over not in lam_by_name:
            raise SpecError(f"bimodule {name!r} is over unknown algebra {spec.over!r}", spec.line)
        return spec.over, spec.build(lam_by_name[spec.over])


def _str(tok) -> str:
    return str(tok)[1:-1]


@v_args(inline=True)
class _Build(Transformer):
    def name(self, tok):
        return str(tok)

    def number(self, tok):
        return Fraction(str(tok))

    def vector(self, *xs):
        return [x for x in xs if x is not None]

    def matrix(self, *rows):
        return [r for r in rows if r is not None]

    def cell(self, a, b):
        return (a, b)

    def path(self, *names):
        return tuple(str(n) for n in names)

    def term(self, coeff, path):
        return (path, Fraction(1) if coeff is None else coeff)

    def relation(self, first, *rest):
        terms = [first]
        for sign, (path, c) in zip(rest[0::2], rest[1::2]):
            terms.append((path, -c if str(sign) == "-" else c))
        return terms

    def vertices(self, *names):
        return ("vertices", list(names))

    def arrow(self, label, s, t):
        return (str(label), s, t)

    def arrows(self, *arrs):
        return ("arrows", list(arrs))

    def relations(self, *rels):
        return ("relations", [r for r in rels if r is not None])

    def degree(self, label, d):
        return (str(label), int(d))

    def degrees(self, *ds):
        return ("degrees", dict(ds))

    def cell_dim(self, c, d):
        return ("cell", c, int(d))

    def action(self, side, label, c, m):
        return (str(side), str(label), c, m)

    def rep(self, dims, *rest):
        arrows = {str(label): m for label, m in zip(rest[0::2], rest[1::2])}
        return RepSpec([int(d) for d in dims], arrows)


def _algebra(tree, items) -> AlgebraSpec:
    name, stmts = (_str(items[0]), items[1:]) if items and not isinstance(items[0], tuple) else ("", items)
    data: dict = {"vertices": [], "arrows": [], "relations": [], "degrees": {}}
    for key, val in stmts:
        if key == "degrees":
            data[key].update(val)
        else:
            data[key].extend(val)
    return AlgebraSpec(name, data["vertices"], data["arrows"], data["relations"], data["degrees"])


def parse_spec(text: str) -> SpecFile:
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        raise SpecError(f"unexpected input {_context(text, e)}", e.line, e.column) from None
    tree = _Build().transform(tree)
    algebras: dict[str, AlgebraSpec] = {}
    bimodules: dict[str, BimoduleSpec] = {}
    tensors: dict[str, TensorSpec] = {}
    for block in tree.children:
        line = block.meta.line if not block.meta.empty else None
        if block.data == "algebra":
            a = _algebra(block, block.children)
            if a.name in algebras:
                raise SpecError(f"algebra {a.name!r} declared twice", line)
            algebras[a.name] = a
        elif block.data == "bimodule":
            name, over, *stmts = block.children
            grid, left, right = {}, {}, {}
            for st in stmts:
                if st[0] == "cell":
                    grid[st[1]] = st[2]
                else:
                    side, label, c, m = st
                    (left if side == "left" else right).setdefault(label, {})[c] = m
            bimodules[_str(name)] = BimoduleSpec(_str(name), _str(over), grid, left, right, line)
        else:
            name, over, n, m = block.children
            tensors[_str(name)] = TensorSpec(_str(name), _str(over), n, m, line)
    for spec in list(bimodules.values()) + list(tensors.values()):
        if spec.over not in algebras:
            raise SpecError(f"{spec.name!r} refers to undeclared algebra {spec.over!r}", spec.line)
    return SpecFile(algebras, bimodules, tensors)


def _context(text: str, e: UnexpectedInput) -> str:
    try:
        return repr(e.get_context(text).strip().splitlines()[0])
    except Exception:
        return ""


def load_spec(path: str) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def regrade(alg: FDAlgebra, arrow_degrees: dict[str, int]) -> FDAlgebra:
    """The same path algebra graded by the sum of arrow degrees (unlisted arrows have degree 1)."""
    degs = []
    for k, label in enumerate(alg.labels):
        if k in alg.idempotents:
            degs.append(0)
        else:
            degs.append(sum(arrow_degrees.get(a, 1) for a in label.split("*")))
    return FDAlgebra(alg.field, alg.labels, alg.ends, alg.vertices, alg.idempotents, alg.products,
                     degrees=degs, name=alg.name)


# writing ------------------------------------------------------------------------------------

def _num(x) -> str:
    f = Fraction(str(x)) if not isinstance(x, Fraction) else x
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _mat(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(_num(x) for x in r) + "]" for r in rows) + "]"


def format_algebra(spec: AlgebraSpec) -> str:
    lines = [f'algebra "{spec.name}" {{', "  vertices: " + ", ".join(spec.vertices) + ";"]
    if spec.arrows:
        lines.append("  arrows: " + ", ".join(f"{a}: {s} -> {t}" for a, s, t in spec.arrows) + ";")
    if spec.relations:
        rels = []
        for rel in spec.relations:
            parts = []
            for k, (path, c) in enumerate(rel):
                c = Fraction(c)
                sign = "-" if c < 0 else "+"
                body = "*".join(path) if abs(c) == 1 else f"{_num(abs(c))}*" + "*".join(path)
                parts.append(body if k == 0 and c > 0 else (f"-{body}" if k == 0 else f" {sign} {body}"))
            rels.append("".join(parts))
        lines.append("  relations: " + ", ".join(rels) + ";")
    if spec.degrees:
        lines.append("  degrees: " + ", ".join(f"{a} = {d}" for a, d in spec.degrees.items()) + ";")
    lines.append("}")
    return "\n".join(lines)


def format_bimodule(c: Bimodule, name: str, over: str) -> str:
    """Serialize a bimodule in a basis adapted to its cells."""
    lam = c.base
    V = lam.vertices
    grid = c.grid
    lines = [f'bimodule "{name}" over "{over}" {{']
    for i in range(lam.n_vertices):
        for j in range(lam.n_vertices):
            if grid[i][j]:
                lines.append(f"  cell ({V[i]},{V[j]}): dim {grid[i][j]};")
    for side, blocks in (("left", c.left_blocks()), ("right", c.right_blocks())):
        for label, cells in blocks.items():
            for (i, j), m in sorted(cells.items()):
                if any(x != 0 for r in m for x in r):
                    lines.append(f"  {side} {label} ({V[i]},{V[j]}): {_mat(m)};")
    lines.append("}")
    return "\n".join(lines)
