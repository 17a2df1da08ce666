"""Bound quiver algebras: path bases, multiplication, opposites and tensor products.

Paths compose right to left: the path written ``("γ3", "γ2")`` means "first
γ2, then γ3".  A :class:`Path` stores its source vertex together with the
arrow names in written order, which also covers trivial paths ``e_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .linalg import Field, Mat, _rref_array


class AlgebraError(ValueError):
    """Raised for malformed quivers, relations or non-admissible ideals."""


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Path:
    source: int
    arrows: tuple = ()

    def __len__(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(self.arrows)


class Quiver:
    def __init__(self, n_vertices: int, arrows: Iterable, labels: Optional[Sequence] = None):
        self.n = int(n_vertices)
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            arrs.append(a)
        self.arrows: tuple[Arrow, ...] = tuple(arrs)
        self._by_name = {}
        for a in self.arrows:
            if a.name in self._by_name:
                raise AlgebraError(f"duplicate arrow name {a.name!r}")
            if not (0 <= a.src < self.n and 0 <= a.tgt < self.n):
                raise AlgebraError(f"arrow {a.name!r} has endpoint outside 0..{self.n - 1}")
            self._by_name[a.name] = a
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def in_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.tgt == v]

    def target(self, path: Path) -> Optional[int]:
        """End vertex of ``path`` or None when the arrows do not compose."""
        v = path.source
        for name in reversed(path.arrows):
            a = self._by_name.get(name)
            if a is None or a.src != v:
                return None
            v = a.tgt
        return v

    def path_from_arrows(self, arrows: Sequence[str]) -> Path:
        if not arrows:
            raise AlgebraError("trivial paths need an explicit vertex")
        p = Path(self.arrow(arrows[-1]).src, tuple(arrows))
        if self.target(p) is None:
            raise AlgebraError(f"arrows {list(arrows)} do not compose")
        return p

    def paths(self, max_len: int) -> list[Path]:
        """All paths of length <= max_len, grouped by length."""
        out = [Path(v) for v in range(self.n)]
        frontier = list(out)
        for _ in range(max_len):
            nxt = []
            for p in frontier:
                t = self.target(p)
                for a in self.out_arrows(t):
                    nxt.append(Path(p.source, (a.name,) + p.arrows))
            out.extend(nxt)
            frontier = nxt
        return out

    def reversed(self) -> "Quiver":
        return Quiver(self.n, [Arrow(a.name, a.tgt, a.src) for a in self.arrows], self.labels)


Relation = tuple  # tuple of (coef, arrows-tuple)


class BoundQuiverAlgebra:
    """Finite-dimensional algebra kQ/I with an explicit path basis.

    Subclasses provide :meth:`_reduce`, which maps a composable path to its
    coordinates (a sparse ``{basis index: coefficient}`` dict).
    """

    field: Field
    quiver: Quiver
    relations: tuple
    loewy_bound: int
    basis: list

    def __init__(self, field: Field, quiver: Quiver, relations, loewy_bound: int, basis, name: str = ""):
        self.field = field
        self.quiver = quiver
        self.relations = tuple(relations)
        self.loewy_bound = int(loewy_bound)
        self.basis = list(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.name = name
        self._opposite: Optional[BoundQuiverAlgebra] = None
        self._reduce_cache: dict = {}

    # basic data --------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n_vertices(self) -> int:
        return self.quiver.n

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name or '?'} dim={self.dim} over {self.field!r}>"

    def target(self, path: Path) -> int:
        t = self.quiver.target(path)
        if t is None:
            raise AlgebraError(f"path {path.label()} is not composable")
        return t

    def idempotent(self, v: int) -> int:
        return self.index[Path(v)]

    @cached_property
    def basis_by_source(self) -> list[list[int]]:
        out = [[] for _ in range(self.n_vertices)]
        for i, p in enumerate(self.basis):
            out[p.source].append(i)
        return out

    @cached_property
    def basis_by_target(self) -> list[list[int]]:
        out = [[] for _ in range(self.n_vertices)]
        for i, p in enumerate(self.basis):
            out[self.target(p)].append(i)
        return out

    # multiplication ---------------------------------------------------------
    def reduce(self, path: Path) -> dict:
        """Coordinates of a composable path in the basis."""
        hit = self._reduce_cache.get(path)
        if hit is None:
            hit = self._reduce(path)
            self._reduce_cache[path] = hit
        return hit

    def _reduce(self, path: Path) -> dict:
        raise NotImplementedError

    def multiply_basis(self, i: int, j: int) -> dict:
        x, y = self.basis[i], self.basis[j]
        if self.target(y) != x.source:
            return {}
        return self.reduce(Path(y.source, x.arrows + y.arrows))

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.multiply_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return self._clean(out)

    def _clean(self, d: dict) -> dict:
        f = self.field
        out = {}
        for k, v in d.items():
            v = f(v)
            if v != 0:
                out[k] = v
        return out

    def one(self) -> dict:
        return {self.idempotent(v): self.field.one for v in range(self.n_vertices)}

    def mult_table(self) -> dict:
        """Dense map (i, j) -> coordinates of b_i b_j; only nonzero products stored."""
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                r = self.multiply_basis(i, j)
                if r:
                    out[(i, j)] = r
        return out

    def check_associativity(self, triples: Optional[Iterable] = None) -> bool:
        rng = range(self.dim)
        triples = triples if triples is not None else itertools.product(rng, rng, rng)
        for i, j, k in triples:
            bi, bj, bk = ({i: self.field.one}, {j: self.field.one}, {k: self.field.one})
            if self.multiply(self.multiply(bi, bj), bk) != self.multiply(bi, self.multiply(bj, bk)):
                return False
        return True

    def check_identity(self) -> bool:
        one = self.one()
        for i in range(self.dim):
            e = {i: self.field.one}
            if self.multiply(one, e) != e or self.multiply(e, one) != e:
                return False
        return True

    # derived algebras --------------------------------------------------------
    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            op = OppositeAlgebra(self)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def tensor_op(self, other: "BoundQuiverAlgebra") -> "TensorAlgebra":
        return enveloping_algebra(self, other)

    def relation_paths(self) -> list:
        return [[(c, self.quiver.path_from_arrows(arrs)) for c, arrs in rel] for rel in self.relations]


class PathQuotientAlgebra(BoundQuiverAlgebra):
    """kQ/I built by degreewise saturation of the relation ideal."""

    def __init__(self, field: Field, quiver: Quiver, relations, loewy_bound: int, name: str = ""):
        rels = []
        for rel in relations:
            terms = []
            for coef, arrows in rel:
                arrows = tuple(arrows)
                quiver.path_from_arrows(arrows)
                c = field(coef)
                if c != 0:
                    terms.append((c, arrows))
            if terms:
                rels.append(tuple(terms))
        L = int(loewy_bound)
        if L < 1:
            raise AlgebraError("loewy_bound must be at least 1")
        paths = quiver.paths(L)
        # columns ordered so that long paths become pivots and short ones survive
        order = sorted(paths, key=lambda p: (-len(p), p.source, p.arrows))
        col = {p: i for i, p in enumerate(order)}
        gens = []
        for rel in rels:
            s = quiver.arrow(rel[0][1][-1]).src
            t = quiver.target(Path(s, rel[0][1]))
            for c, arrows in rel:
                p = Path(quiver.arrow(arrows[-1]).src, arrows)
                if p.source != s or quiver.target(p) != t:
                    raise AlgebraError("relations must be linear combinations of parallel paths")
            lefts = [p for p in paths if p.source == t]
            rights = [q for q in paths if quiver.target(q) == s]
            for p in lefts:
                for q in rights:
                    row = {}
                    for c, arrows in rel:
                        full = p.arrows + arrows + q.arrows
                        if len(full) > L:
                            continue
                        key = col[Path(q.source, full)]
                        row[key] = row.get(key, 0) + c
                    if row:
                        gens.append(row)
        ncols = len(order)
        arr = Mat.zeros(field, len(gens), ncols).a
        for r, row in enumerate(gens):
            for k, v in row.items():
                arr[r, k] = field(v)
        red, piv = _rref_array(field, arr) if gens else (arr, [])
        pivset = set(piv)
        for p in order:
            if len(p) == L and col[p] not in pivset:
                raise AlgebraError(
                    f"relations are not admissible within loewy_bound={L}: path {p.label()} survives")
        surviving = [p for p in order if col[p] not in pivset]
        basis = sorted(surviving, key=lambda p: (p.source, len(p), p.arrows))
        super().__init__(field, quiver, rels, L, basis, name)
        self._normal: dict = {}
        for p in basis:
            self._normal[p] = {self.index[p]: field.one}
        for i, pc in enumerate(piv):
            p = order[pc]
            if len(p) >= L:
                continue
            coords = {}
            for q in surviving:
                v = red[i, col[q]]
                if v != 0:
                    coords[self.index[q]] = field(-v)
            self._normal[p] = coords

    def _reduce(self, path: Path) -> dict:
        if len(path) >= self.loewy_bound:
            return {}
        return dict(self._normal[path])


class OppositeAlgebra(BoundQuiverAlgebra):
    """Λ^op: arrows reversed, basis element i is the reversal of Λ's basis element i."""

    def __init__(self, base: BoundQuiverAlgebra):
        q = base.quiver.reversed()
        rels = tuple(tuple((c, tuple(reversed(arrs))) for c, arrs in rel) for rel in base.relations)
        basis = [Path(base.target(p), tuple(reversed(p.arrows))) for p in base.basis]
        name = f"{base.name}^op" if base.name else ""
        super().__init__(base.field, q, rels, base.loewy_bound, basis, name)
        self.base = base

    def _reduce(self, path: Path) -> dict:
        t = self.target(path)
        return self.base.reduce(Path(t, tuple(reversed(path.arrows))))


class TensorAlgebra(BoundQuiverAlgebra):
    """A ⊗ B^op as a bound quiver algebra; its modules are A-B-bimodules.

    Vertex ``(i, j)`` (index ``i * n_B + j``) carries ``e_i M e_j``.  Left
    arrows are named ``"a⊗e{j}"`` and act by ``a`` on the left; right arrows
    are named ``"e{i}⊗b"`` and act by right multiplication with ``b``.
    """

    def __init__(self, left: BoundQuiverAlgebra, right: BoundQuiverAlgebra):
        if left.field != right.field:
            raise AlgebraError("tensor factors must share a field")
        self.left, self.right = left, right
        nA, nB = left.n_vertices, right.n_vertices
        self.nA, self.nB = nA, nB
        arrows = []
        self._kind: dict = {}
        for a in left.quiver.arrows:
            for j in range(nB):
                name = f"{a.name}⊗e{j}"
                arrows.append(Arrow(name, a.src * nB + j, a.tgt * nB + j))
                self._kind[name] = ("L", a.name, j)
        for b in right.quiver.arrows:
            for i in range(nA):
                name = f"e{i}⊗{b.name}"
                arrows.append(Arrow(name, i * nB + b.tgt, i * nB + b.src))
                self._kind[name] = ("R", i, b.name)
        labels = [(i, j) for i in range(nA) for j in range(nB)]
        quiver = Quiver(nA * nB, arrows, labels)
        rels = []
        for a in left.quiver.arrows:
            for b in right.quiver.arrows:
                # a acting after b equals b acting after a
                rels.append(((1, (self.larrow(a.name, b.src), self.rarrow(a.src, b.name))),
                             (-1, (self.rarrow(a.tgt, b.name), self.larrow(a.name, b.tgt)))))
        for rel in left.relations:
            for j in range(nB):
                rels.append(tuple((c, tuple(self.larrow(x, j) for x in arrs)) for c, arrs in rel))
        for rel in right.relations:
            for i in range(nA):
                rels.append(tuple((c, tuple(self.rarrow(i, x) for x in reversed(arrs))) for c, arrs in rel))
        basis = []
        for p in left.basis:
            for q in right.basis:
                basis.append(self._pair_path(p, q))
        name = f"{left.name}⊗{right.name}^op" if left.name and right.name else ""
        super().__init__(left.field, quiver, rels, left.loewy_bound + right.loewy_bound - 1, basis, name)
        self._rop = right.opposite()

    def larrow(self, a: str, j: int) -> str:
        return f"{a}⊗e{j}"

    def rarrow(self, i: int, b: str) -> str:
        return f"e{i}⊗{b}"

    def vertex(self, i: int, j: int) -> int:
        return i * self.nB + j

    def _pair_path(self, p: Path, q: Path) -> Path:
        i, j = p.source, q.source
        arrows = tuple(self.larrow(a, j) for a in p.arrows) + tuple(self.rarrow(i, b) for b in reversed(q.arrows))
        return Path(i * self.nB + self.right.target(q), arrows)

    def pair_index(self, ip: int, iq: int) -> int:
        return ip * self.right.dim + iq

    def _reduce(self, path: Path) -> dict:
        i, j = divmod(path.source, self.nB)
        lefts, rights = [], []
        for name in path.arrows:
            kind = self._kind[name]
            if kind[0] == "L":
                lefts.append(kind[1])
            else:
                rights.append(kind[2])
        ca = self.left.reduce(Path(i, tuple(lefts)))
        if not ca:
            return {}
        cb = self._rop.reduce(Path(j, tuple(rights)))
        out = {}
        for x, u in ca.items():
            for y, w in cb.items():
                out[self.pair_index(x, y)] = u * w
        return self._clean(out)


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------

def build_algebra(field: Field, quiver: Quiver, relations, loewy_bound: int, name: str = "") -> PathQuotientAlgebra:
    """kQ/I with relations given as lists of ``(coef, arrow-name sequence)``."""
    return PathQuotientAlgebra(field, quiver, relations, loewy_bound, name)


def nakayama_from_admissible_sequence(field: Field, n: int, c: Sequence[int],
                                      arrow_names: Optional[Sequence[str]] = None,
                                      name: str = "") -> PathQuotientAlgebra:
    """Cyclic Nakayama algebra on Z_n (arrow i -> i+1) with dim P_i = c[i]."""
    c = [int(x) for x in c]
    if len(c) != n or n < 1:
        raise AlgebraError(f"admissible sequence must have length {n}")
    for i in range(n):
        if c[i] < 2:
            raise AlgebraError(f"admissible sequence entries must be >= 2, got c[{i}]={c[i]}")
        if c[(i + 1) % n] < c[i] - 1:
            raise AlgebraError(f"not admissible: c[{(i + 1) % n}] < c[{i}] - 1")
    names = list(arrow_names) if arrow_names else [f"γ{i + 1}" for i in range(n)]
    quiver = Quiver(n, [Arrow(names[i], i, (i + 1) % n) for i in range(n)])
    rels = []
    for i in range(n):
        walk = [names[(i + k) % n] for k in range(c[i])]
        rels.append([(1, tuple(reversed(walk)))])
    alg = PathQuotientAlgebra(field, quiver, rels, max(c), name or f"Nakayama{tuple(c)}")
    for i in range(n):
        if len(alg.basis_by_source[i]) != c[i]:
            raise AlgebraError(f"sequence {c} is not admissible: dim P_{i} = {len(alg.basis_by_source[i])}")
    return alg


def truncated_polynomial(field: Field, n: int, var: str = "x") -> PathQuotientAlgebra:
    """k[x]/(x^n) as a one-loop bound quiver algebra."""
    quiver = Quiver(1, [Arrow(var, 0, 0)])
    return PathQuotientAlgebra(field, quiver, [[(1, (var,) * n)]], n, f"k[{var}]/({var}^{n})")


def linear_quiver_algebra(field: Field, n: int, zero_relations: Sequence = (), name: str = "") -> PathQuotientAlgebra:
    """Path algebra of 0 -> 1 -> ... -> n-1 with arrows a1..a_{n-1}, optionally with monomial relations."""
    arrows = [Arrow(f"a{i + 1}", i, i + 1) for i in range(n - 1)]
    quiver = Quiver(n, arrows)
    rels = [[(1, tuple(r))] for r in zero_relations]
    return PathQuotientAlgebra(field, quiver, rels, max(n, 1), name or f"A{n}")


def ground_field_algebra(field: Field) -> PathQuotientAlgebra:
    return PathQuotientAlgebra(field, Quiver(1, []), [], 1, "k")


def opposite_algebra(a: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return a.opposite()


def enveloping_algebra(a: BoundQuiverAlgebra, b: BoundQuiverAlgebra) -> TensorAlgebra:
    """a ⊗ b^op, whose modules are exactly a-b-bimodules."""
    return TensorAlgebra(a, b)


def relation_monomial(arrows: Sequence[str]) -> list:
    return [(1, tuple(arrows))]


__all__ = [
    "AlgebraError", "Arrow", "Path", "Quiver", "BoundQuiverAlgebra", "PathQuotientAlgebra",
    "OppositeAlgebra", "TensorAlgebra", "build_algebra", "nakayama_from_admissible_sequence",
    "truncated_polynomial", "linear_quiver_algebra", "ground_field_algebra", "opposite_algebra",
    "enveloping_algebra",
]
