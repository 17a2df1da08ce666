"""Bimodules, balanced tensor products, singular equivalences of Morita type and transport."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Union

from .algebra import BoundQuiverAlgebra, Path, TensorAlgebra, ground_field_algebra
from .artin import ArtinLocalAlgebra
from .complexes import BoundedComplex
from .deform import VersalPresentation, versal_presentation
from .homological import (MinimalResolution, _syzygy_period, decompose, is_gorenstein_projective, is_projective)
from .linalg import Field, Mat, column_space_basis, is_invertible, kron
from .modules import (Morphism, Representation, direct_sum, find_isomorphism, free_module, hom_basis,
                      quotient, regular_module, zero_module)


class BimoduleError(ValueError):
    pass


# --------------------------------------------------------------------------
# envelopes and bimodules
# --------------------------------------------------------------------------

_ENVELOPES: dict = {}
_GROUND: dict = {}


def envelope(left: BoundQuiverAlgebra, right: BoundQuiverAlgebra) -> TensorAlgebra:
    """Cached left ⊗ right^op."""
    key = (id(left), id(right))
    hit = _ENVELOPES.get(key)
    if hit is None:
        hit = (left, right, TensorAlgebra(left, right))
        _ENVELOPES[key] = hit
    return hit[2]


def ground(field: Field) -> BoundQuiverAlgebra:
    if field not in _GROUND:
        _GROUND[field] = ground_field_algebra(field)
    return _GROUND[field]


class Bimodule:
    """A left-right bimodule stored as a representation of left ⊗ right^op.

    Vertex (i, j) carries e_i X e_j.
    """

    def __init__(self, left: BoundQuiverAlgebra, right: BoundQuiverAlgebra, rep: Representation, name: str = ""):
        env = envelope(left, right)
        if rep.algebra is not env:
            raise BimoduleError("representation is not over the enveloping algebra of (left, right)")
        self.left, self.right, self.rep = left, right, rep
        self.name = name
        self._side: dict = {}

    @property
    def envelope(self) -> TensorAlgebra:
        return self.rep.algebra

    @property
    def field(self) -> Field:
        return self.left.field

    @property
    def dim(self) -> int:
        return self.rep.total_dim

    def cell(self, i: int, j: int) -> int:
        return self.rep.dims[self.envelope.vertex(i, j)]

    def left_action(self, a: str, j: int) -> Mat:
        return self.rep.action[self.envelope.larrow(a, j)]

    def right_action(self, i: int, b: str) -> Mat:
        return self.rep.action[self.envelope.rarrow(i, b)]

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __repr__(self) -> str:
        return f"<Bimodule {self.name or ''} {self.left.name}-{self.right.name} dim {self.dim}>"

    # sides --------------------------------------------------------------------
    def column(self, j: int) -> Representation:
        """X e_j as a left module."""
        dims = [self.cell(i, j) for i in range(self.left.n_vertices)]
        action = {a.name: self.left_action(a.name, j) for a in self.left.quiver.arrows}
        return Representation(self.left, dims, action, check=False)

    def row(self, i: int) -> Representation:
        """e_i X as a right module, i.e. a left module over right^op."""
        op = self.right.opposite()
        dims = [self.cell(i, j) for j in range(self.right.n_vertices)]
        action = {b.name: self.right_action(i, b.name) for b in self.right.quiver.arrows}
        return Representation(op, dims, action, check=False)

    def left_module(self) -> Representation:
        cols = [self.column(j) for j in range(self.right.n_vertices)]
        return direct_sum(cols) if cols else zero_module(self.left)

    def right_module(self) -> Representation:
        rows = [self.row(i) for i in range(self.left.n_vertices)]
        return direct_sum(rows)

    def right_multiplication(self, b: str) -> Morphism:
        """ρ_b: X e_{tgt b} -> X e_{src b}, a map of left modules."""
        arrow = self.right.quiver.arrow(b)
        src, tgt = self.column(arrow.tgt), self.column(arrow.src)
        return Morphism(src, tgt, [self.right_action(i, b) for i in range(self.left.n_vertices)])

    def is_left_projective(self) -> bool:
        if "left" not in self._side:
            self._side["left"] = is_projective(self.left_module())
        return self._side["left"]

    def is_right_projective(self) -> bool:
        if "right" not in self._side:
            self._side["right"] = is_projective(self.right_module())
        return self._side["right"]


def regular_bimodule(alg: BoundQuiverAlgebra) -> Bimodule:
    """Λ as a Λ-Λ-bimodule."""
    env = envelope(alg, alg)
    f = alg.field
    n = alg.n_vertices
    cells = {(i, j): [] for i in range(n) for j in range(n)}
    for b, p in enumerate(alg.basis):
        cells[(alg.target(p), p.source)].append(b)
    pos = {key: {b: k for k, b in enumerate(lst)} for key, lst in cells.items()}
    dims = [len(cells[(i, j)]) for i in range(n) for j in range(n)]
    action = {}
    for a in alg.quiver.arrows:
        for j in range(n):
            src, tgt = (a.src, j), (a.tgt, j)
            m = Mat.zeros(f, len(cells[tgt]), len(cells[src]))
            for col, b in enumerate(cells[src]):
                p = alg.basis[b]
                for k, c in alg.reduce(Path(p.source, (a.name,) + p.arrows)).items():
                    m.a[pos[tgt][k], col] = c
            action[env.larrow(a.name, j)] = m
    for b_ in alg.quiver.arrows:
        for i in range(n):
            src, tgt = (i, b_.tgt), (i, b_.src)
            m = Mat.zeros(f, len(cells[tgt]), len(cells[src]))
            for col, b in enumerate(cells[src]):
                p = alg.basis[b]
                for k, c in alg.reduce(Path(b_.src, p.arrows + (b_.name,))).items():
                    m.a[pos[tgt][k], col] = c
            action[env.rarrow(i, b_.name)] = m
    rep = Representation(env, dims, action, name=alg.name)
    return Bimodule(alg, alg, rep, name=alg.name or "Λ")


def free_bimodule(left: BoundQuiverAlgebra, right: BoundQuiverAlgebra) -> Bimodule:
    """left ⊗_k right = ⊕ left e_i ⊗ e_j right, free of rank one over the envelope."""
    env = envelope(left, right)
    rep = free_module(env, list(range(env.n_vertices)))
    return Bimodule(left, right, rep, name=f"{left.name}⊗{right.name}")


def bimodule_direct_sum(parts: list) -> Bimodule:
    if not parts:
        raise BimoduleError("empty direct sum")
    l, r = parts[0].left, parts[0].right
    for p in parts:
        if p.left is not l or p.right is not r:
            raise BimoduleError("summands over different algebras")
    rep = direct_sum([p.rep for p in parts])
    rep.gens = None
    return Bimodule(l, r, rep, name="⊕".join(p.name or "?" for p in parts))


def zero_bimodule(left: BoundQuiverAlgebra, right: BoundQuiverAlgebra) -> Bimodule:
    return Bimodule(left, right, zero_module(envelope(left, right)), name="0")


def module_as_bimodule(m: Representation) -> Bimodule:
    """A left Λ-module as a Λ-k-bimodule."""
    k = ground(m.field)
    env = envelope(m.algebra, k)
    action = {env.larrow(a, 0): mat for a, mat in m.action.items()}
    return Bimodule(m.algebra, k, Representation(env, list(m.dims), action, check=False), name=m.name)


def bimodule_as_module(b: Bimodule) -> Representation:
    if b.right.n_vertices != 1 or b.right.quiver.arrows:
        raise BimoduleError("right algebra is not the ground field")
    return b.column(0)


# --------------------------------------------------------------------------
# tensor products
# --------------------------------------------------------------------------

@dataclass
class TensorData:
    """X ⊗_Λ Y with the presentation used to build it."""
    result: Bimodule
    blocks: dict          # vertex (i, l) -> list of middle vertices j, in stacking order
    offsets: dict         # (i, l) -> {j: row offset inside the big space}
    projection: Morphism  # big space -> result
    sections: list


def _tensor(x: Bimodule, y: Bimodule) -> TensorData:
    if x.right is not y.left:
        raise BimoduleError("middle algebras do not match")
    G, L, D = x.left, x.right, y.right
    f = G.field
    env = envelope(G, D)
    nG, nL, nD = G.n_vertices, L.n_vertices, D.n_vertices
    blocks, offsets, dims = {}, {}, []
    for i in range(nG):
        for l in range(nD):
            off, k = {}, 0
            for j in range(nL):
                off[j] = k
                k += x.cell(i, j) * y.cell(j, l)
            blocks[(i, l)] = list(range(nL))
            offsets[(i, l)] = off
            dims.append(k)

    def embed(i, l, j, mat):
        full = Mat.zeros(f, dims[env.vertex(i, l)], mat.cols)
        o = offsets[(i, l)][j]
        full.a[o:o + mat.rows, :] = mat.a
        return full

    action = {}
    for a in G.quiver.arrows:
        for l in range(nD):
            s, t = env.vertex(a.src, l), env.vertex(a.tgt, l)
            m = Mat.zeros(f, dims[t], dims[s])
            for j in range(nL):
                blk = kron(x.left_action(a.name, j), Mat.identity(f, y.cell(j, l)))
                ro, co = offsets[(a.tgt, l)][j], offsets[(a.src, l)][j]
                m.a[ro:ro + blk.rows, co:co + blk.cols] = blk.a
            action[env.larrow(a.name, l)] = m
    for c in D.quiver.arrows:
        for i in range(nG):
            s, t = env.vertex(i, c.tgt), env.vertex(i, c.src)
            m = Mat.zeros(f, dims[t], dims[s])
            for j in range(nL):
                blk = kron(Mat.identity(f, x.cell(i, j)), y.right_action(j, c.name))
                ro, co = offsets[(i, c.src)][j], offsets[(i, c.tgt)][j]
                m.a[ro:ro + blk.rows, co:co + blk.cols] = blk.a
            action[env.rarrow(i, c.name)] = m
    big = Representation(env, dims, action, check=False)
    # balancing: (x·b) ⊗ y - x ⊗ (b·y) for x in X(i, tgt b), y in Y(src b, l)
    bases = []
    for i in range(nG):
        for l in range(nD):
            gens = []
            for b in L.quiver.arrows:
                n = x.cell(i, b.tgt) * y.cell(b.src, l)
                if n == 0:
                    continue
                u = embed(i, l, b.src, kron(x.right_action(i, b.name), Mat.identity(f, y.cell(b.src, l))))
                w = embed(i, l, b.tgt, kron(Mat.identity(f, x.cell(i, b.tgt)), y.left_action(b.name, l)))
                gens.append(u - w)
            d = dims[env.vertex(i, l)]
            bases.append(column_space_basis(Mat.hstack(f, gens, rows=d)) if gens else Mat.zeros(f, d, 0))
    q, proj, sections = quotient(big, bases)
    q.name = ""
    res = Bimodule(G, D, q, name=f"{x.name}⊗{y.name}" if x.name and y.name else "")
    return TensorData(res, blocks, offsets, proj, sections)


def bimodule_tensor(x: Bimodule, y: Bimodule) -> Bimodule:
    """X ⊗_Λ Y as the cokernel of the balancing map into X ⊗_k Y."""
    return _tensor(x, y).result


def tensor_module(x: Bimodule, m: Representation) -> Representation:
    """X ⊗_Λ M as a left module over X's left algebra."""
    if x.right is not m.algebra:
        raise BimoduleError("module is not over the bimodule's right algebra")
    return bimodule_as_module(bimodule_tensor(x, module_as_bimodule(m)))


def tensor_morphism(x: Bimodule, phi: Morphism) -> Morphism:
    """X ⊗_Λ φ."""
    f = x.field
    ds = _tensor(x, module_as_bimodule(phi.src))
    dt = _tensor(x, module_as_bimodule(phi.tgt))
    G = x.left
    env = ds.result.envelope
    maps = []
    for i in range(G.n_vertices):
        v = env.vertex(i, 0)
        rows = dt.projection.src.dims[v]
        cols = ds.projection.src.dims[v]
        big = Mat.zeros(f, rows, cols)
        for j in range(x.right.n_vertices):
            blk = kron(Mat.identity(f, x.cell(i, j)), phi.maps[j])
            ro, co = dt.offsets[(i, 0)][j], ds.offsets[(i, 0)][j]
            big.a[ro:ro + blk.rows, co:co + blk.cols] = blk.a
        maps.append(dt.projection.maps[v] @ big @ ds.sections[v])
    src = bimodule_as_module(ds.result)
    tgt = bimodule_as_module(dt.result)
    return Morphism(src, tgt, maps, check=True)


def hom_to_regular(x: Bimodule) -> Representation:
    """Hom_Γ(X, Γ) for a Γ-Λ-bimodule X, as a left Λ-module: (λφ)(x) = φ(xλ)."""
    G, L = x.left, x.right
    f = x.field
    reg = regular_module(G)
    spaces = [hom_basis(x.column(j), reg) for j in range(L.n_vertices)]
    action = {}
    for b in L.quiver.arrows:
        rho = x.right_multiplication(b.name)
        src, tgt = spaces[b.src], spaces[b.tgt]
        mat = Mat.zeros(f, tgt.dim, src.dim)
        for k, phi in enumerate(src.basis):
            if tgt.dim:
                mat.a[:, k] = tgt.coords(phi @ rho).a[:, 0]
        action[b.name] = mat
    return Representation(L, [s.dim for s in spaces], action)


# --------------------------------------------------------------------------
# projective dimension
# --------------------------------------------------------------------------

@dataclass
class ProjDim:
    status: str                 # "Finite" | "Infinite" | "Unknown"
    value: Optional[int] = None
    certificate: dict = dc_field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return self.status == "Finite"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.value is not None:
            out["value"] = self.value
        out.update(self.certificate)
        return out


def projdim(m: Representation, cutoff: Optional[int] = None) -> ProjDim:
    """Length of the minimal projective resolution, or Infinite with a periodicity witness."""
    if cutoff is None:
        cutoff = 2 * m.algebra.dim
    if m.is_zero():
        return ProjDim("Finite", 0, {"reason": "zero module"})
    res = MinimalResolution(m)
    pd = res.projective_dimension(cutoff)
    if pd is not None:
        return ProjDim("Finite", pd, {"terms": [list(res.term(i).dims) for i in range(pd + 1)]})
    period = _syzygy_period(res, cutoff)
    if period is not None:
        return ProjDim("Infinite", None, {"start": period[0], "period": period[1]})
    return ProjDim("Unknown", None, {"cutoff": cutoff})


# --------------------------------------------------------------------------
# singular equivalences of Morita type
# --------------------------------------------------------------------------

@dataclass
class Verdict:
    status: str
    certificate: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, **self.certificate}


@dataclass
class SingEquivReport:
    conditions: dict
    Q: Optional[Bimodule] = None
    P: Optional[Bimodule] = None

    @property
    def certified(self) -> bool:
        return len(self.conditions) == 6 and all(v.status == "Yes" for v in self.conditions.values())

    def to_json(self) -> dict:
        return {"certified": self.certified,
                "conditions": {k: v.to_json() for k, v in self.conditions.items()},
                "Q_dim": None if self.Q is None else self.Q.dim,
                "P_dim": None if self.P is None else self.P.dim}


def _side_verdict(x: Bimodule) -> Verdict:
    l, r = x.is_left_projective(), x.is_right_projective()
    return Verdict("Yes" if l and r else "No", {"left_projective": l, "right_projective": r})


def split_off(m: Bimodule, unit: Bimodule) -> Optional[Bimodule]:
    """Q with m ≅ unit ⊕ Q, or None if unit is not a summand."""
    if m.dim < unit.dim:
        return None
    if m.dim == unit.dim:
        ok, _ = find_isomorphism(m.rep, unit.rep)
        return zero_bimodule(m.left, m.right) if ok else None
    parts = [[rep, mult] for rep, mult in decompose(m.rep)]
    for rep_u, mult_u in decompose(unit.rep):
        for entry in parts:
            if entry[1] >= mult_u and entry[0].dims == rep_u.dims and find_isomorphism(entry[0], rep_u)[0]:
                entry[1] -= mult_u
                break
        else:
            return None
    rest = [rep for rep, mult in parts for _ in range(mult)]
    if not rest:
        return zero_bimodule(m.left, m.right)
    rep = direct_sum(rest)
    rep.gens = None
    return Bimodule(m.left, m.right, rep, name="complement")


def _summand_verdict(prod: Bimodule, unit: Bimodule, cutoff: Optional[int]) -> tuple[Verdict, Optional[Bimodule]]:
    comp = split_off(prod, unit)
    if comp is None:
        return Verdict("No", {"reason": "the algebra is not a summand", "dim": prod.dim}), None
    pd = projdim(comp.rep, cutoff)
    status = {"Finite": "Yes", "Infinite": "No", "Unknown": "Unknown"}[pd.status]
    return Verdict(status, {"complement_dim": comp.dim, "projdim": pd.to_json()}), comp


def _projdim_verdict(m: Representation, cutoff: Optional[int]) -> Verdict:
    pd = projdim(m, cutoff)
    status = {"Finite": "Yes", "Infinite": "No", "Unknown": "Unknown"}[pd.status]
    return Verdict(status, {"dim": m.total_dim, "projdim": pd.to_json()})


def check_singular_equivalence(x: Bimodule, y: Bimodule, cutoff: Optional[int] = None) -> SingEquivReport:
    """The four defining conditions plus finite projective dimension of Hom_Γ(X,Γ) and Hom_Λ(Y,Λ)."""
    G, L = x.left, x.right
    if y.left is not L or y.right is not G:
        raise BimoduleError("X must be Γ-Λ and Y must be Λ-Γ")
    cond = {"i": _side_verdict(x), "ii": _side_verdict(y)}
    cond["iii"], Q = _summand_verdict(bimodule_tensor(x, y), regular_bimodule(G), cutoff)
    cond["iv"], P = _summand_verdict(bimodule_tensor(y, x), regular_bimodule(L), cutoff)
    cond["hom_X"] = _projdim_verdict(hom_to_regular(x), cutoff)
    cond["hom_Y"] = _projdim_verdict(hom_to_regular(y), cutoff)
    return SingEquivReport(cond, Q, P)


def transport(x: Bimodule, v: Union[Representation, BoundedComplex]) -> Union[Representation, BoundedComplex]:
    """X ⊗_Λ v, termwise for complexes."""
    if not (x.is_left_projective() and x.is_right_projective()):
        raise BimoduleError("transport needs a bimodule projective on both sides")
    if isinstance(v, Representation):
        return tensor_module(x, v)
    terms = {n: tensor_module(x, v.term(n)) for n in v.degrees}
    diffs = {n: tensor_morphism(x, v.diff(n)) for n in v.degrees if n + 1 in v.degrees}
    return BoundedComplex(x.left, terms, diffs)


def verify_p_tensor_projective(p: Optional[Bimodule], v: Representation,
                               report: Optional[SingEquivReport] = None) -> bool:
    """Is P ⊗_Λ V projective for a GP module V?"""
    if report is not None and not report.certified:
        raise BimoduleError("report is not certified")
    if is_gorenstein_projective(v).status != "Yes":
        raise BimoduleError("module is not certified Gorenstein projective")
    if p is None or p.is_zero():
        return True
    return is_projective(tensor_module(p, v))


# --------------------------------------------------------------------------
# comparing presentations up to linear substitution
# --------------------------------------------------------------------------

def _poly_mul(p: dict, q: dict, order: int, f: Field) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if sum(e) > order:
                continue
            out[e] = out.get(e, 0) + c1 * c2
    return {e: f(c) for e, c in out.items() if f(c) != 0}


def substitute(poly: dict, matrix: list, order: int, f: Field) -> dict:
    """poly(t ↦ M t) truncated above ``order``."""
    r = len(matrix)
    forms = [{tuple(1 if k == j else 0 for k in range(r)): f(matrix[i][j]) for j in range(r) if f(matrix[i][j]) != 0}
             for i in range(r)]
    out: dict = {}
    for e, c in poly.items():
        term = {(0,) * r: f(c)}
        for i, k in enumerate(e):
            for _ in range(k):
                term = _poly_mul(term, forms[i], order, f)
        for m, cm in term.items():
            out[m] = out.get(m, 0) + cm
    return {e: f(c) for e, c in out.items() if f(c) != 0}


def _substitutions(f: Field, r: int, limit: int):
    values = f.elements() if f.char else [f(k) for k in range(-2, 3)]
    if len(values) ** (r * r) > limit:
        return None
    out = []
    for entries in itertools.product(values, repeat=r * r):
        m = [list(entries[i * r:(i + 1) * r]) for i in range(r)]
        if is_invertible(Mat.from_rows(f, m, r)):
            out.append(m)
    return out


def presentations_equivalent(a: VersalPresentation, b: VersalPresentation,
                             limit: int = 200000) -> Optional[bool]:
    """Equal relation ideals after some invertible linear change of variables.

    None when the bounded substitution search is exhausted over Q or too large.
    """
    if a.nvars != b.nvars:
        return False
    r = a.nvars
    f = a.ring.field
    if r == 0:
        return True
    order = max(a.order, b.order)
    names = list(b.names)
    target = ArtinLocalAlgebra(f, names, order, b.relations)
    subs = _substitutions(f, r, limit)
    if subs is None:
        return None
    for m in subs:
        moved = [substitute(p, m, order, f) for p in a.relations]
        if ArtinLocalAlgebra(f, names, order, moved).same_ring(target):
            return True
    return False if f.char else None


def verify_transport_invariance(x: Bimodule, y: Bimodule, v: Union[Representation, BoundedComplex], order: int = 4,
                                report: Optional[SingEquivReport] = None) -> Optional[bool]:
    """Versal presentations of v and X ⊗ v agree up to variable change at every order up to ``order``."""
    from .deform import complex_versal_presentation
    report = report or check_singular_equivalence(x, y)
    if not report.certified:
        raise BimoduleError("report is not certified")
    w = transport(x, v)
    hull = versal_presentation if isinstance(v, Representation) else complex_versal_presentation
    verdict: Optional[bool] = True
    for n in range(1, order + 1):
        ok = presentations_equivalent(hull(v, n), hull(w, n))
        if ok is False:
            return False
        if ok is None:
            verdict = None
    return verdict


__all__ = [
    "BimoduleError", "Bimodule", "envelope", "regular_bimodule", "free_bimodule", "bimodule_direct_sum",
    "zero_bimodule", "module_as_bimodule", "bimodule_as_module", "bimodule_tensor", "tensor_module",
    "tensor_morphism", "hom_to_regular", "ProjDim", "projdim", "Verdict", "SingEquivReport",
    "check_singular_equivalence", "split_off", "transport", "verify_p_tensor_projective", "substitute",
    "presentations_equivalent", "verify_transport_invariance",
]
