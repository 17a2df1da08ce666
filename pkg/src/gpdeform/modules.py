"""Finite-dimensional modules as quiver representations, their morphisms and hom-spaces."""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra, Path
from .linalg import (Field, Mat, column_space_basis, complement_columns, invert, kernel_basis, kron,
                     rank, solve)


class ModuleError(ValueError):
    pass


class Representation:
    """A left module over a bound quiver algebra.

    ``action[name]`` is the ``dims[tgt] x dims[src]`` matrix of the arrow.
    Projective modules built by :func:`free_module` additionally carry
    ``gens`` (the vertex of each free generator) and ``cells``: for each
    vertex, the list of ``(generator, algebra basis index)`` labelling its
    basis vectors, so that basis vector = path * generator.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int], action: dict,
                 check: bool = True, name: str = ""):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n_vertices:
            raise ModuleError(f"expected {algebra.n_vertices} dimensions, got {len(self.dims)}")
        f = algebra.field
        act = {}
        for a in algebra.quiver.arrows:
            m = action.get(a.name)
            shape = (self.dims[a.tgt], self.dims[a.src])
            if m is None:
                m = Mat.zeros(f, *shape)
            elif not isinstance(m, Mat):
                m = Mat.from_rows(f, m, ncols=shape[1]) if len(m) else Mat.zeros(f, *shape)
            if m.shape != shape:
                raise ModuleError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            act[a.name] = m
        unknown = set(action) - set(act)
        if unknown:
            raise ModuleError(f"unknown arrows {sorted(unknown)}")
        self.action = act
        self.name = name
        self.gens: Optional[list] = None
        self.cells: Optional[list] = None
        self._path_cache: dict = {}
        if check:
            bad = self.failing_relation()
            if bad is not None:
                raise ModuleError(f"relation {bad} does not vanish on the representation")

    # basics -------------------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> list[int]:
        return list(itertools.accumulate((0,) + self.dims[:-1]))

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<Representation{nm} dims={list(self.dims)}>"

    def same_as(self, other: "Representation") -> bool:
        return (self.algebra is other.algebra and self.dims == other.dims
                and all(self.action[k] == other.action[k] for k in self.action))

    def path_matrix(self, path: Path) -> Mat:
        hit = self._path_cache.get(path)
        if hit is not None:
            return hit
        v = path.source
        m = Mat.identity(self.field, self.dims[v])
        for name in reversed(path.arrows):
            m = self.action[name] @ m
        self._path_cache[path] = m
        return m

    def evaluate_relation(self, rel) -> Mat:
        q = self.algebra.quiver
        out = None
        for c, arrows in rel:
            term = self.path_matrix(q.path_from_arrows(arrows)).scale(c)
            out = term if out is None else out + term
        return out

    def failing_relation(self):
        for rel in self.algebra.relations:
            if not self.evaluate_relation(rel).is_zero():
                return [(self.field.to_str(c), list(a)) for c, a in rel]
        return None

    def canonical_key(self) -> tuple:
        return (self.dims, tuple((k, tuple(self.action[k].a.flat)) for k in sorted(self.action)))


def zero_module(algebra: BoundQuiverAlgebra) -> Representation:
    return Representation(algebra, [0] * algebra.n_vertices, {}, check=False)


def simple_module(algebra: BoundQuiverAlgebra, i: int) -> Representation:
    dims = [0] * algebra.n_vertices
    dims[i] = 1
    return Representation(algebra, dims, {}, name=f"S{i}")


def direct_sum(modules: Sequence[Representation]) -> Representation:
    modules = list(modules)
    if not modules:
        raise ModuleError("direct_sum needs at least one summand")
    alg = modules[0].algebra
    for m in modules:
        if m.algebra is not alg:
            raise ModuleError("summands over different algebras")
    f = alg.field
    dims = [sum(m.dims[v] for m in modules) for v in range(alg.n_vertices)]
    action = {a: Mat.block_diag(f, [m.action[a] for m in modules]) for a in modules[0].action}
    out = Representation(alg, dims, action, check=False)
    if all(m.gens is not None for m in modules):
        gens, cells = [], [[] for _ in range(alg.n_vertices)]
        # per-vertex blocks are stacked summand by summand
        for m in modules:
            g0 = len(gens)
            gens.extend(m.gens)
            for v in range(alg.n_vertices):
                cells[v].extend((g + g0, b) for g, b in m.cells[v])
        out.gens, out.cells = gens, cells
    return out


def free_module(algebra: BoundQuiverAlgebra, gen_vertices: Sequence[int]) -> Representation:
    """⊕ Λ e_v over the listed vertices, with generator bookkeeping."""
    f = algebra.field
    n = algebra.n_vertices
    gens = list(gen_vertices)
    cells = [[] for _ in range(n)]
    for g, v in enumerate(gens):
        for b in algebra.basis_by_source[v]:
            cells[algebra.target(algebra.basis[b])].append((g, b))
    pos = [{c: i for i, c in enumerate(cells[v])} for v in range(n)]
    dims = [len(c) for c in cells]
    action = {}
    for a in algebra.quiver.arrows:
        m = Mat.zeros(f, dims[a.tgt], dims[a.src])
        for j, (g, b) in enumerate(cells[a.src]):
            p = algebra.basis[b]
            for k, c in algebra.reduce(Path(p.source, (a.name,) + p.arrows)).items():
                m.a[pos[a.tgt][(g, k)], j] = c
        action[a.name] = m
    out = Representation(algebra, dims, action, check=False)
    out.gens, out.cells = gens, cells
    return out


def indecomposable_projective(algebra: BoundQuiverAlgebra, i: int) -> Representation:
    p = free_module(algebra, [i])
    p.name = f"P{i}"
    return p


def regular_module(algebra: BoundQuiverAlgebra) -> Representation:
    return free_module(algebra, list(range(algebra.n_vertices)))


# --------------------------------------------------------------------------
# morphisms
# --------------------------------------------------------------------------

class Morphism:
    """Family of per-vertex matrices ``maps[v]: src_v -> tgt_v``."""

    def __init__(self, src: Representation, tgt: Representation, maps: Sequence[Mat], check: bool = False):
        if src.algebra is not tgt.algebra:
            raise ModuleError("morphism between modules over different algebras")
        self.src, self.tgt = src, tgt
        self.maps = tuple(maps)
        for v, m in enumerate(self.maps):
            if m.shape != (tgt.dims[v], src.dims[v]):
                raise ModuleError(f"vertex {v}: map shape {m.shape}, expected {(tgt.dims[v], src.dims[v])}")
        if check and not self.is_homomorphism():
            raise ModuleError("maps do not commute with the arrows")

    @property
    def field(self) -> Field:
        return self.src.field

    @classmethod
    def zero(cls, src: Representation, tgt: Representation) -> "Morphism":
        f = src.field
        return cls(src, tgt, [Mat.zeros(f, tgt.dims[v], src.dims[v]) for v in range(len(src.dims))])

    @classmethod
    def identity(cls, m: Representation) -> "Morphism":
        return cls(m, m, [Mat.identity(m.field, d) for d in m.dims])

    def is_homomorphism(self) -> bool:
        for a in self.src.algebra.quiver.arrows:
            if self.maps[a.tgt] @ self.src.action[a.name] != self.tgt.action[a.name] @ self.maps[a.src]:
                return False
        return True

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.tgt is not self.src and other.tgt.dims != self.src.dims:
            raise ModuleError("cannot compose: modules differ")
        return Morphism(other.src, self.tgt, [a @ b for a, b in zip(self.maps, other.maps)])

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.src, self.tgt, [a + b for a, b in zip(self.maps, other.maps)])

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.src, self.tgt, [a - b for a, b in zip(self.maps, other.maps)])

    def __neg__(self) -> "Morphism":
        return Morphism(self.src, self.tgt, [-a for a in self.maps])

    def scale(self, c) -> "Morphism":
        return Morphism(self.src, self.tgt, [a.scale(c) for a in self.maps])

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def is_iso(self) -> bool:
        return self.src.dims == self.tgt.dims and all(
            rank(m) == m.rows for m in self.maps)

    def inverse(self) -> "Morphism":
        inv = [invert(m) for m in self.maps]
        if any(x is None for x in inv):
            raise ModuleError("morphism is not invertible")
        return Morphism(self.tgt, self.src, inv)

    def flat(self) -> Mat:
        """All entries, vertex by vertex in row-major order, as a column."""
        f = self.field
        parts = [m.a.reshape(-1) for m in self.maps]
        arr = np.concatenate(parts) if parts else np.zeros(0, dtype=f.dtype)
        return Mat._raw(f, arr.reshape(-1, 1).copy()) if arr.size else Mat.zeros(f, 0, 1)

    def rank(self) -> int:
        return sum(rank(m) for m in self.maps)

    def kernel(self) -> tuple[Representation, "Morphism"]:
        return subrepresentation(self.src, [kernel_basis(m) for m in self.maps])

    def image(self) -> tuple[Representation, "Morphism"]:
        return subrepresentation(self.tgt, [column_space_basis(m) for m in self.maps])

    def cokernel(self) -> tuple[Representation, "Morphism"]:
        q, proj, _ = quotient(self.tgt, [column_space_basis(m) for m in self.maps])
        return q, proj

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.maps)

    def is_surjective(self) -> bool:
        return all(rank(m) == m.rows for m in self.maps)

    def __repr__(self) -> str:
        return f"<Morphism {list(self.src.dims)} -> {list(self.tgt.dims)}>"


def subrepresentation(m: Representation, bases: Sequence[Mat]) -> tuple[Representation, Morphism]:
    """Submodule spanned per vertex by the columns of ``bases`` (must be invariant and independent)."""
    f = m.field
    dims = [b.cols for b in bases]
    action = {}
    for a in m.algebra.quiver.arrows:
        src_b, tgt_b = bases[a.src], bases[a.tgt]
        if dims[a.src] == 0 or dims[a.tgt] == 0:
            if dims[a.src] and not (m.action[a.name] @ src_b).is_zero():
                raise ModuleError(f"subspace not invariant under {a.name}")
            action[a.name] = Mat.zeros(f, dims[a.tgt], dims[a.src])
            continue
        x = solve(tgt_b, m.action[a.name] @ src_b)
        if x is None:
            raise ModuleError(f"subspace not invariant under {a.name}")
        action[a.name] = x
    sub = Representation(m.algebra, dims, action, check=False)
    return sub, Morphism(sub, m, list(bases))


def quotient(m: Representation, bases: Sequence[Mat]) -> tuple[Representation, Morphism, list]:
    """M / N for the invariant subspaces spanned by ``bases``.

    Returns the quotient, the projection, and per-vertex section matrices
    (complement columns of ``M_v`` mapping isomorphically onto the quotient).
    """
    f = m.field
    n = m.algebra.n_vertices
    comps, projs = [], []
    for v in range(n):
        sub = bases[v]
        d = m.dims[v]
        cc = complement_columns(sub, d)
        comp = Mat.zeros(f, d, len(cc))
        for k, c in enumerate(cc):
            comp.a[c, k] = f.one
        full = Mat.hstack(f, [sub, comp], rows=d) if d else Mat.zeros(f, 0, 0)
        if d:
            inv = invert(full)
            projs.append(inv[sub.cols:, :])
        else:
            projs.append(Mat.zeros(f, 0, 0))
        comps.append(comp)
    dims = [c.cols for c in comps]
    action = {}
    for a in m.algebra.quiver.arrows:
        action[a.name] = projs[a.tgt] @ m.action[a.name] @ comps[a.src]
    q = Representation(m.algebra, dims, action, check=False)
    return q, Morphism(m, q, projs), comps


# --------------------------------------------------------------------------
# hom spaces
# --------------------------------------------------------------------------

class HomSpace:
    """Basis of Hom(src, tgt) with coordinate extraction."""

    def __init__(self, src: Representation, tgt: Representation, basis: list):
        self.src, self.tgt = src, tgt
        self.basis = basis
        self._mat: Optional[Mat] = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def matrix(self) -> Mat:
        """Flattened basis elements as columns."""
        if self._mat is None:
            f = self.src.field
            n = sum(a * b for a, b in zip(self.src.dims, self.tgt.dims))
            self._mat = Mat.hstack(f, [b.flat() for b in self.basis], rows=n) if self.basis else Mat.zeros(f, n, 0)
        return self._mat

    def coords(self, phi: Morphism) -> Mat:
        x = solve(self.matrix(), phi.flat())
        if x is None:
            raise ModuleError("morphism is not in this hom-space")
        return x

    def element(self, coeffs: Sequence) -> Morphism:
        out = Morphism.zero(self.src, self.tgt)
        for c, b in zip(coeffs, self.basis):
            if c != 0:
                out = out + b.scale(c)
        return out

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def unflatten(src: Representation, tgt: Representation, col) -> Morphism:
    f = src.field
    arr = col.a[:, 0] if isinstance(col, Mat) else np.asarray(col)
    maps, k = [], 0
    for v in range(len(src.dims)):
        r, c = tgt.dims[v], src.dims[v]
        blk = arr[k:k + r * c].reshape(r, c) if r * c else np.zeros((r, c), dtype=f.dtype)
        maps.append(Mat._raw(f, np.array(blk, dtype=f.dtype if f.char else object).reshape(r, c)))
        k += r * c
    return Morphism(src, tgt, maps)


def intertwining_system(m: Representation, n: Representation) -> Mat:
    """Matrix whose kernel is Hom(m, n) in flattened coordinates."""
    f = m.field
    if m.algebra is not n.algebra:
        raise ModuleError("hom between modules over different algebras")
    alg = m.algebra
    offs, k = [], 0
    for v in range(alg.n_vertices):
        offs.append(k)
        k += m.dims[v] * n.dims[v]
    blocks = []
    for a in alg.quiver.arrows:
        s, t = a.src, a.tgt
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        eq = Mat.zeros(f, rows, k)
        # phi_t A_M - A_N phi_s, row-major vectorisation
        if n.dims[t] * m.dims[t]:
            eq.a[:, offs[t]:offs[t] + n.dims[t] * m.dims[t]] = kron(
                Mat.identity(f, n.dims[t]), m.action[a.name].T).a
        if n.dims[s] * m.dims[s]:
            blk = kron(n.action[a.name], Mat.identity(f, m.dims[s])).a
            sl = slice(offs[s], offs[s] + n.dims[s] * m.dims[s])
            eq.a[:, sl] = f.reduce(eq.a[:, sl] - blk)
        blocks.append(eq)
    return Mat.vstack(f, blocks, cols=k)


def hom_basis(m: Representation, n: Representation) -> HomSpace:
    """All module maps m -> n, as the kernel of the commutation equations."""
    sysm = intertwining_system(m, n)
    ker = kernel_basis(sysm)
    basis = [unflatten(m, n, ker[:, j:j + 1]) for j in range(ker.cols)]
    return HomSpace(m, n, basis)


def hom_from_generators(p: Representation, n: Representation, images: Sequence[Mat]) -> Morphism:
    """The map from a free module sending generator g to the column ``images[g]``."""
    if p.gens is None:
        raise ModuleError("source is not a free module with generators")
    f = p.field
    alg = p.algebra
    maps = []
    for v in range(alg.n_vertices):
        m = Mat.zeros(f, n.dims[v], p.dims[v])
        for j, (g, b) in enumerate(p.cells[v]):
            if n.dims[v]:
                m.a[:, j] = (n.path_matrix(alg.basis[b]) @ images[g]).a[:, 0]
        maps.append(m)
    return Morphism(p, n, maps)


def generator_images(phi: Morphism) -> list[Mat]:
    """Inverse of :func:`hom_from_generators`: where each generator goes."""
    p = phi.src
    alg = p.algebra
    out = []
    for g, v in enumerate(p.gens):
        j = p.cells[v].index((g, alg.idempotent(v)))
        out.append(phi.maps[v][:, j:j + 1])
    return out


def free_hom_basis(p: Representation, n: Representation) -> list[Morphism]:
    """Basis of Hom(P, N) for free P by the Yoneda correspondence."""
    f = p.field
    out = []
    for g, v in enumerate(p.gens):
        for k in range(n.dims[v]):
            imgs = [Mat.zeros(f, n.dims[w], 1) for w in p.gens]
            imgs[g].a[k, 0] = f.one
            out.append(hom_from_generators(p, n, imgs))
    return out


# --------------------------------------------------------------------------
# isomorphism testing
# --------------------------------------------------------------------------

_EXHAUSTIVE_LIMIT = 4096


def find_isomorphism(m: Representation, n: Representation, trials: int = 64,
                     seed: int = 0) -> tuple[Optional[bool], Optional[Morphism]]:
    """(True, iso) / (False, None) / (None, None) when the sweep is inconclusive."""
    if m.algebra is not n.algebra or m.dims != n.dims:
        return False, None
    if m.total_dim == 0:
        return True, Morphism.identity(m)
    if m.same_as(n):
        return True, Morphism.identity(m)
    h = hom_basis(m, n)
    if h.dim == 0:
        return False, None
    if h.dim != hom_basis(m, m).dim or h.dim != hom_basis(n, n).dim:
        return False, None
    for b in h.basis:
        if b.is_iso():
            return True, b
    f = m.field
    if f.char and f.char ** h.dim <= _EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(f.char), repeat=h.dim):
            phi = h.element(coeffs)
            if phi.is_iso():
                return True, phi
        return False, None
    rng = np.random.default_rng(seed)
    for t in range(trials):
        if f.char:
            coeffs = [int(x) for x in rng.integers(0, f.char, h.dim)]
        else:
            coeffs = [int(x) for x in rng.integers(-3, 4, h.dim)]
        phi = h.element(coeffs)
        if phi.is_iso():
            return True, phi
    return None, None


def are_isomorphic(m: Representation, n: Representation) -> Optional[bool]:
    return find_isomorphism(m, n)[0]


__all__ = [
    "ModuleError", "Representation", "Morphism", "HomSpace", "zero_module", "simple_module",
    "direct_sum", "free_module", "indecomposable_projective", "regular_module", "subrepresentation",
    "quotient", "hom_basis", "hom_from_generators", "generator_images", "free_hom_basis",
    "find_isomorphism", "are_isomorphic", "unflatten", "intertwining_system",
]
