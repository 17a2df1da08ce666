"""Lifts of modules and complexes over Artinian rings, obstruction steps and versal hulls."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .artin import (ArtinLocalAlgebra, SmallExtension, ground_ring, monomials_upto, poly_str)
from .complexes import (BoundedComplex, UnsupportedInput, cohomology, complex_to_representation, hom_singularity_dim)
from .homological import ext_dim, stable_hom
from .linalg import Mat, _rref_array, kernel_basis, kron, left_kernel_basis, solve
from .modules import Representation


class DeformationError(ValueError):
    pass


# --------------------------------------------------------------------------
# matrices over R
# --------------------------------------------------------------------------

def _rzero(field, d: int, rows: int, cols: int) -> list:
    return [Mat.zeros(field, rows, cols) for _ in range(d)]


def _rmatmul(R: ArtinLocalAlgebra, X: list, Y: list) -> list:
    """(Σ X_i b_i)(Σ Y_j b_j) on coefficient lists."""
    f = R.field
    out = _rzero(f, R.dim, X[0].rows, Y[0].cols)
    mult = R.mult
    xs = [i for i, m in enumerate(X) if not m.is_zero()]
    ys = [j for j, m in enumerate(Y) if not m.is_zero()]
    for i in xs:
        for j in ys:
            coeff = mult[i, j]
            nz = np.nonzero(coeff)[0]
            if len(nz) == 0:
                continue
            prod = X[i] @ Y[j]
            for k in nz:
                out[k] = out[k] + prod.scale(coeff[k])
    return out


def _rident(R: ArtinLocalAlgebra, n: int) -> list:
    out = _rzero(R.field, R.dim, n, n)
    out[0] = Mat.identity(R.field, n)
    return out


# --------------------------------------------------------------------------
# linearised relations
# --------------------------------------------------------------------------

def _relation_ends(alg, rel) -> tuple[int, int]:
    arrows = rel[0][1]
    s = alg.quiver.arrow(arrows[-1]).src
    t = alg.quiver.arrow(arrows[0]).tgt
    return s, t


class LinearData:
    """First-order data of a representation.

    ``L`` is the derivative of the relations with respect to the arrow
    matrices, ``G`` the infinitesimal gauge action, ``xi`` a basis of
    ker L / im G (so ``len(xi) = dim Ext^1``), and ``coker`` a matrix whose
    rows span the functionals vanishing on im L.
    """

    def __init__(self, v: Representation):
        self.module = v
        alg = v.algebra
        f = v.field
        self.arrows = [a for a in alg.quiver.arrows]
        self.arrow_off, k = {}, 0
        for a in self.arrows:
            self.arrow_off[a.name] = k
            k += v.dims[a.tgt] * v.dims[a.src]
        self.n_arrow_entries = k
        self.rel_ends = [_relation_ends(alg, rel) for rel in alg.relations]
        self.rel_off, k = [], 0
        for s, t in self.rel_ends:
            self.rel_off.append(k)
            k += v.dims[t] * v.dims[s]
        self.n_rel_entries = k
        self.L = self._linearisation()
        self.G = self._gauge()
        z = kernel_basis(self.L)
        self.Z = z
        both = Mat.hstack(f, [self.G, z], rows=self.n_arrow_entries)
        _, piv = _rref_array(f, both.a) if both.cols else (None, [])
        picks = [c - self.G.cols for c in piv if c >= self.G.cols]
        self.xi = [self.unflatten_arrows(z[:, c:c + 1]) for c in picks]
        self.coker = left_kernel_basis(self.L) if self.n_rel_entries else Mat.zeros(f, 0, 0)

    # flattening ---------------------------------------------------------------
    def flatten_arrows(self, mats: dict) -> Mat:
        f = self.module.field
        out = Mat.zeros(f, self.n_arrow_entries, 1)
        for a in self.arrows:
            m = mats[a.name]
            o = self.arrow_off[a.name]
            out.a[o:o + m.a.size, 0] = m.a.reshape(-1)
        return out

    def unflatten_arrows(self, col: Mat) -> dict:
        v = self.module
        out = {}
        for a in self.arrows:
            r, c = v.dims[a.tgt], v.dims[a.src]
            o = self.arrow_off[a.name]
            out[a.name] = Mat._raw(v.field, col.a[o:o + r * c, 0].reshape(r, c).copy())
        return out

    def flatten_relations(self, mats: Sequence[Mat]) -> Mat:
        f = self.module.field
        out = Mat.zeros(f, self.n_rel_entries, 1)
        for o, m in zip(self.rel_off, mats):
            out.a[o:o + m.a.size, 0] = m.a.reshape(-1)
        return out

    # building blocks -----------------------------------------------------------
    def _linearisation(self) -> Mat:
        v = self.module
        f = v.field
        alg = v.algebra
        q = alg.quiver
        L = Mat.zeros(f, self.n_rel_entries, self.n_arrow_entries)
        for r_idx, rel in enumerate(alg.relations):
            s, t = self.rel_ends[r_idx]
            ro = self.rel_off[r_idx]
            nrows = v.dims[t] * v.dims[s]
            if nrows == 0:
                continue
            for c, arrows in rel:
                n = len(arrows)
                for k in range(n):
                    name = arrows[k]
                    a = q.arrow(name)
                    cols = v.dims[a.tgt] * v.dims[a.src]
                    if cols == 0:
                        continue
                    left_path = arrows[:k]
                    right_path = arrows[k + 1:]
                    left = v.path_matrix(q.path_from_arrows(left_path)) if left_path else Mat.identity(f, v.dims[t])
                    right = v.path_matrix(q.path_from_arrows(right_path)) if right_path else Mat.identity(f, v.dims[s])
                    blk = kron(left, right.T).scale(c)
                    o = self.arrow_off[name]
                    L.a[ro:ro + nrows, o:o + cols] = f.reduce(L.a[ro:ro + nrows, o:o + cols] + blk.a)
        return L

    def _gauge(self) -> Mat:
        v = self.module
        f = v.field
        offs, k = [], 0
        for d in v.dims:
            offs.append(k)
            k += d * d
        G = Mat.zeros(f, self.n_arrow_entries, k)
        for a in self.arrows:
            A = v.action[a.name]
            r, c = A.shape
            if r * c == 0:
                continue
            o = self.arrow_off[a.name]
            # A X_s - X_t A
            if c:
                blk = kron(A, Mat.identity(f, c))
                G.a[o:o + r * c, offs[a.src]:offs[a.src] + c * c] = f.reduce(
                    G.a[o:o + r * c, offs[a.src]:offs[a.src] + c * c] + blk.a)
            if r:
                blk = kron(Mat.identity(f, r), A.T)
                G.a[o:o + r * c, offs[a.tgt]:offs[a.tgt] + r * r] = f.reduce(
                    G.a[o:o + r * c, offs[a.tgt]:offs[a.tgt] + r * r] - blk.a)
        return G

    @property
    def tangent_dim(self) -> int:
        return len(self.xi)


# --------------------------------------------------------------------------
# lifts
# --------------------------------------------------------------------------

class ModuleLift:
    """Arrow matrices over R in the standard-monomial basis; coefficient 0 is the base action."""

    def __init__(self, base: Representation, ring: ArtinLocalAlgebra, coeffs: dict, check: bool = True):
        self.base = base
        self.ring = ring
        f = base.field
        if ring.field != f:
            raise DeformationError("ring and module over different fields")
        self.coeffs = {}
        for a in base.algebra.quiver.arrows:
            lst = list(coeffs.get(a.name, []))
            shape = base.action[a.name].shape
            lst += [Mat.zeros(f, *shape) for _ in range(ring.dim - len(lst))]
            if len(lst) != ring.dim:
                raise DeformationError(f"arrow {a.name}: {len(lst)} coefficients for a ring of dim {ring.dim}")
            self.coeffs[a.name] = lst
        if check:
            for a in base.algebra.quiver.arrows:
                if self.coeffs[a.name][0] != base.action[a.name]:
                    raise DeformationError(f"arrow {a.name} does not reduce to the base action")
            if not self.satisfies_relations():
                raise DeformationError("relations do not vanish over the ring")

    @classmethod
    def trivial(cls, v: Representation, ring: ArtinLocalAlgebra) -> "ModuleLift":
        return cls(v, ring, {a: [m] for a, m in v.action.items()}, check=False)

    def path(self, arrows: Sequence[str]) -> list:
        v = self.base
        R = self.ring
        if not arrows:
            raise ValueError("empty path")
        q = v.algebra.quiver
        s = q.arrow(arrows[-1]).src
        cur = _rident(R, v.dims[s])
        for name in reversed(arrows):
            cur = _rmatmul(R, self.coeffs[name], cur)
        return cur

    def relation_values(self) -> list:
        """Per relation, its coefficient list over R."""
        out = []
        for rel in self.base.algebra.relations:
            acc = None
            for c, arrows in rel:
                term = [m.scale(c) for m in self.path(arrows)]
                acc = term if acc is None else [x + y for x, y in zip(acc, term)]
            out.append(acc)
        return out

    def satisfies_relations(self) -> bool:
        return all(all(m.is_zero() for m in vals) for vals in self.relation_values())

    def transfer(self, ring: ArtinLocalAlgebra) -> "ModuleLift":
        """Same coefficients read in another quotient of the polynomial ring (monomial by monomial)."""
        f = self.base.field
        new = {}
        for a, lst in self.coeffs.items():
            shape = lst[0].shape
            out = [Mat.zeros(f, *shape) for _ in range(ring.dim)]
            for k, m in enumerate(lst):
                if m.is_zero():
                    continue
                img = ring.nf(self.ring.std[k])
                for j in np.nonzero(img)[0]:
                    out[j] = out[j] + m.scale(img[j])
            new[a] = out
        return ModuleLift(self.base, ring, new, check=False)

    def reduce(self, ring: ArtinLocalAlgebra) -> "ModuleLift":
        """Image under a quotient map of rings."""
        out = self.transfer(ring)
        if not out.satisfies_relations():
            raise DeformationError("target ring is not a quotient of the lift's ring")
        return out

    def __repr__(self) -> str:
        return f"<ModuleLift of {list(self.base.dims)} over {self.ring.describe()}>"


def underlying_module(lift: ModuleLift) -> Representation:
    """The lift as a module over the algebra alone (R forgotten): R ⊗ V with basis b_k ⊗ x."""
    v = lift.base
    R = lift.ring
    f = v.field
    d = R.dim
    mult = R.mult
    action = {}
    for a in v.algebra.quiver.arrows:
        r, c = v.dims[a.tgt], v.dims[a.src]
        acc = Mat.zeros(f, d * r, d * c)
        for mu, m in enumerate(lift.coeffs[a.name]):
            if m.is_zero():
                continue
            left = Mat._raw(f, mult[mu].T.copy())
            acc = acc + kron(left, m)
        action[a.name] = acc
    return Representation(v.algebra, [d * n for n in v.dims], action, name=f"{v.name}⊗R" if v.name else "")


def _defect_matrix(ld: LinearData, lift: ModuleLift) -> Mat:
    """Columns: flattened relation values at each basis element of the ring."""
    vals = lift.relation_values()
    f = lift.base.field
    cols = []
    for k in range(lift.ring.dim):
        cols.append(ld.flatten_relations([vals[r][k] for r in range(len(vals))]))
    return Mat.hstack(f, cols, rows=ld.n_rel_entries)


def _add_correction(lift: ModuleLift, ld: LinearData, direction: np.ndarray, b: Mat) -> None:
    """lift += direction ⊗ B in place, with B given in flattened arrow coordinates."""
    mats = ld.unflatten_arrows(b)
    for a, m in mats.items():
        for j in np.nonzero(direction)[0]:
            lift.coeffs[a][j] = lift.coeffs[a][j] + m.scale(direction[j])


def tangent_dim(v: Representation) -> int:
    """dim Ext^1(v, v)."""
    return ext_dim(v, v, 1)


def _extend_over_kernel(lift: ModuleLift, R: ArtinLocalAlgebra, kernel: Mat, ld: LinearData) -> Optional[ModuleLift]:
    """Correct the transferred lift by kernel ⊗ (arrow matrices); the kernel columns must be killed by m."""
    f = R.field
    new = lift.transfer(R)
    D = _defect_matrix(ld, new)
    coords = solve(kernel, D.T)
    if coords is None:
        raise DeformationError("defect is not concentrated in the kernel; lift does not reduce correctly")
    for j in range(kernel.cols):
        d = coords[j:j + 1, :].T
        b = solve(ld.L, -d) if ld.n_rel_entries else Mat.zeros(f, ld.n_arrow_entries, 1)
        if b is None:
            return None
        _add_correction(new, ld, kernel.a[:, j], b)
    if not new.satisfies_relations():
        raise DeformationError("internal error: corrected lift fails the relations")
    return new


def extend_lift(lift: ModuleLift, ext: SmallExtension, ld: Optional[LinearData] = None) -> Optional[ModuleLift]:
    """Lift along R -> R0, or None when the obstruction (a class in Ext^2) does not vanish."""
    if not lift.ring.same_ring(ext.target):
        raise DeformationError("lift is not over the target of the small extension")
    ld = ld or LinearData(lift.base)
    f = ext.source.field
    return _extend_over_kernel(lift, ext.source, Mat._raw(f, ext.socle.reshape(-1, 1).copy()), ld)


def extend_lift_along(lift: ModuleLift, source: ArtinLocalAlgebra,
                      ld: Optional[LinearData] = None) -> Optional[ModuleLift]:
    """Lift along any surjection source -> lift.ring whose kernel is killed by the maximal ideal.

    Such a kernel may have several dimensions; the obstruction stays linear and
    is solved one kernel basis vector at a time.
    """
    R0 = lift.ring
    if source.field != R0.field or source.names != R0.names:
        raise DeformationError("rings in different variables")
    f = source.field
    proj = Mat.zeros(f, R0.dim, source.dim)
    for j, e in enumerate(source.std):
        proj.a[:, j] = R0.nf(e)
    for p in source.ideal_polys():
        if not R0.contains(p):
            raise DeformationError("the lift's ring is not a quotient of the source")
    kernel = kernel_basis(proj)
    for j in range(kernel.cols):
        for i in range(1, source.dim):
            unit = Mat.zeros(f, source.dim, 1).a[:, 0]
            unit[i] = f.one
            if np.any(source.multiply(unit, kernel.a[:, j]) != 0):
                raise DeformationError("kernel is not annihilated by the maximal ideal")
    ld = ld or LinearData(lift.base)
    return _extend_over_kernel(lift, source, kernel, ld)


def lifts_isomorphic(l1: ModuleLift, l2: ModuleLift) -> bool:
    """Is there Φ = 1 + (terms in m_R) with Φ l1 = l2 Φ?"""
    if l1.base.dims != l2.base.dims or not l1.ring.same_ring(l2.ring):
        raise DeformationError("lifts over different rings or modules")
    v = l1.base
    R = l1.ring
    f = v.field
    d = R.dim
    if d == 1:
        return all(l1.coeffs[a][0] == l2.coeffs[a][0] for a in l1.coeffs)
    offs, k = {}, 0
    for mu in range(1, d):
        for vert, n in enumerate(v.dims):
            offs[(mu, vert)] = k
            k += n * n
    nunk = k
    mult = R.mult
    blocks, rhs = [], []
    for a in v.algebra.quiver.arrows:
        r, c = v.dims[a.tgt], v.dims[a.src]
        if r * c == 0:
            continue
        A1, A2 = l1.coeffs[a.name], l2.coeffs[a.name]
        for nu in range(d):
            eq = Mat.zeros(f, r * c, nunk)
            for mu in range(1, d):
                for mp in range(d):
                    cf = mult[mu, mp, nu]
                    if cf == 0:
                        continue
                    # Φ_t^mu A1^mp
                    o = offs[(mu, a.tgt)]
                    if not A1[mp].is_zero():
                        eq.a[:, o:o + r * r] = f.reduce(eq.a[:, o:o + r * r] + kron(Mat.identity(f, r), A1[mp].T).a * cf)
                    # - A2^mp Φ_s^mu
                    o = offs[(mu, a.src)]
                    if not A2[mp].is_zero():
                        eq.a[:, o:o + c * c] = f.reduce(eq.a[:, o:o + c * c] - kron(A2[mp], Mat.identity(f, c)).a * cf)
            known = (A1[nu] - A2[nu]).a.reshape(-1, 1)
            blocks.append(eq)
            rhs.append(Mat._raw(f, f.reduce(-known)))
    if not blocks:
        return True
    M = Mat.vstack(f, blocks, cols=nunk)
    b = Mat.vstack(f, rhs, cols=1)
    if nunk == 0:
        return b.is_zero()
    return solve(M, b) is not None


def enumerate_deformations(v: Representation, R: ArtinLocalAlgebra, max_candidates: int = 1 << 20) -> list[ModuleLift]:
    """All lifts over R by exhaustion, one representative per isomorphism class."""
    f = v.field
    if f.char not in (2, 3):
        raise DeformationError("enumeration is only offered over F_2 and F_3")
    if R.dim * v.total_dim > 12:
        raise DeformationError(f"size guard: dim R * dim v = {R.dim * v.total_dim} > 12")
    slots = []
    for a in v.algebra.quiver.arrows:
        r, c = v.dims[a.tgt], v.dims[a.src]
        for mu in range(1, R.dim):
            for i in range(r):
                for j in range(c):
                    slots.append((a.name, mu, i, j))
    if f.char ** len(slots) > max_candidates:
        raise DeformationError(f"size guard: {f.char}^{len(slots)} candidate lifts")
    classes: list[ModuleLift] = []
    for values in itertools.product(range(f.char), repeat=len(slots)):
        coeffs = {a: [m] + [Mat.zeros(f, *m.shape) for _ in range(R.dim - 1)] for a, m in v.action.items()}
        for (a, mu, i, j), x in zip(slots, values):
            if x:
                coeffs[a][mu].a[i, j] = x
        lift = ModuleLift(v, R, coeffs, check=False)
        if not lift.satisfies_relations():
            continue
        if not any(lifts_isomorphic(lift, c) for c in classes):
            classes.append(lift)
    return classes


# --------------------------------------------------------------------------
# versal hulls
# --------------------------------------------------------------------------

@dataclass
class VersalPresentation:
    names: list
    relations: list
    order: int
    exact: bool
    universal_claimed: bool
    ring: ArtinLocalAlgebra
    lift: ModuleLift
    field: object = None
    ideals: list = dc_field(default_factory=list)
    cohomology_check: Optional[bool] = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def relation_strings(self) -> list[str]:
        return [poly_str(p, self.names, self.ring.field) for p in self.relations]

    def ring_string(self) -> str:
        if not self.names:
            return "k"
        rels = self.relation_strings()
        body = f"k[[{','.join(self.names)}]]"
        return f"{body}/({', '.join(rels)})" if rels else body

    def to_json(self) -> dict:
        return {"vars": self.nvars, "var_names": list(self.names), "relations": self.relation_strings(),
                "order": self.order, "exact": self.exact, "universal_claimed": self.universal_claimed,
                "ring": self.ring_string()}


def _mul_var(p: dict, i: int) -> dict:
    out = {}
    for e, c in p.items():
        e2 = list(e)
        e2[i] += 1
        out[tuple(e2)] = c
    return out


def _minimal_generators(J: ArtinLocalAlgebra) -> list[dict]:
    """Echelon representatives of J / m J (inside the truncation)."""
    f = J.field
    polys = J.ideal_polys()
    if not polys:
        return []
    r = J.nvars
    mons = J.monomials
    nm = len(mons)
    idx = {e: nm - 1 - i for i, e in enumerate(mons)}

    def row(p):
        out = Mat.zeros(f, 1, nm).a[0]
        for e, c in p.items():
            if sum(e) <= J.order:
                out[idx[e]] = f(out[idx[e]] + c)
        return out

    mJ = [_mul_var(p, i) for p in polys for i in range(r)]
    S = Mat.zeros(f, len(mJ), nm).a
    for i, p in enumerate(mJ):
        S[i] = row(p)
    Srref, spiv = _rref_array(f, S) if len(mJ) else (S, [])
    Srows = Srref[:len(spiv)]
    reduced = []
    for p in polys:
        v = row(p)
        for srow, pc in zip(Srows, spiv):
            if v[pc] != 0:
                v = f.reduce(v - srow * v[pc])
        reduced.append(v)
    arr = Mat.zeros(f, len(reduced), nm).a
    for i, v in enumerate(reduced):
        arr[i] = v
    red, piv = _rref_array(f, arr)
    gens = []
    for i in range(len(piv)):
        p = {}
        for k in np.nonzero(red[i])[0]:
            p[mons[nm - 1 - k]] = red[i][k]
        gens.append(p)
    return gens


def variable_names(r: int) -> list[str]:
    return ["t"] if r == 1 else [f"t{i + 1}" for i in range(r)]


def versal_presentation(v: Representation, order: int = 4, names: Optional[Sequence[str]] = None,
                        ld: Optional[LinearData] = None) -> VersalPresentation:
    """Truncated hull of the deformation functor of v.

    J_1 = m^2 carries the universal first-order lift.  At step n the lift
    over P/J_{n-1} is read in P/mJ_{n-1}; its defect, paired with the
    functionals killing im L, gives the minimal ideal J_n between mJ_{n-1}
    and J_{n-1} over which the lift extends.  Corrections are echelon
    canonical.  J_order = J_{order-1} certifies that the hull is P/J_order.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    f = v.field
    ld = ld or LinearData(v)
    r = ld.tangent_dim
    universal = stable_hom(v, v)[0] == 1 if not v.is_zero() else False
    if r == 0:
        R = ground_ring(f)
        return VersalPresentation([], [], order, True, universal, R, ModuleLift.trivial(v, R), f, [R])
    names = list(names) if names else variable_names(r)
    mons = monomials_upto(r, order)
    J = ArtinLocalAlgebra(f, names, order, [{e: 1} for e in mons if sum(e) >= 2], closed=True)
    coeffs = {}
    for a, m in v.action.items():
        lst = [m] + [Mat.zeros(f, *m.shape) for _ in range(J.dim - 1)]
        for i, xi in enumerate(ld.xi):
            e = tuple(1 if k == i else 0 for k in range(r))
            lst[J.std_index[e]] = xi[a]
        coeffs[a] = lst
    lift = ModuleLift(v, J, coeffs, check=False)
    if not lift.satisfies_relations():
        raise DeformationError("internal error: first-order lift fails the relations")
    ideals = [J]
    for n in range(2, order + 1):
        prev_polys = J.ideal_polys()
        mJ = [_mul_var(p, i) for p in prev_polys for i in range(r)]
        Rp = ArtinLocalAlgebra(f, names, order, mJ)
        A = lift.transfer(Rp)
        D = _defect_matrix(ld, A)
        extra = [e for e in Rp.std if e not in J.std_index]
        new_polys = []
        if ld.coker.rows and extra:
            Dm = Mat.hstack(f, [D[:, Rp.std_index[e]:Rp.std_index[e] + 1] for e in extra], rows=D.rows)
            F = ld.coker @ Dm
            for l in range(F.rows):
                p: dict = {}
                for k, e in enumerate(extra):
                    c = F.a[l, k]
                    if c == 0:
                        continue
                    p[e] = p.get(e, 0) + c
                    nf = J.nf(e)
                    for s in np.nonzero(nf)[0]:
                        se = J.std[s]
                        p[se] = p.get(se, 0) - c * nf[s]
                p = {e: f(c) for e, c in p.items() if f(c) != 0}
                if p:
                    new_polys.append(p)
        Jn = ArtinLocalAlgebra(f, names, order, mJ + new_polys)
        A = A.transfer(Jn)
        D = _defect_matrix(ld, A)
        for e in Jn.std:
            if e in J.std_index:
                continue
            j = Jn.std_index[e]
            col = D[:, j:j + 1]
            if col.is_zero():
                continue
            b = solve(ld.L, -col)
            if b is None:
                raise DeformationError("internal error: obstruction not removed by the hull ideal")
            direction = Mat.zeros(f, Jn.dim, 1).a[:, 0]
            direction[j] = f.one
            nf = J.nf(e)
            for s in np.nonzero(nf)[0]:
                direction[Jn.std_index[J.std[s]]] = f(-nf[s])
            _add_correction(A, ld, direction, b)
        if not A.satisfies_relations():
            raise DeformationError("internal error: corrected lift fails the relations")
        lift = A
        J = Jn
        ideals.append(J)
    exact = len(ideals) >= 2 and ideals[-1].same_ring(ideals[-2])
    rels = _minimal_generators(J)
    return VersalPresentation(names, rels, order, exact, universal, J, lift, f, ideals)


# --------------------------------------------------------------------------
# complexes (strict model: modules over Λ ⊗ D)
# --------------------------------------------------------------------------

@dataclass
class ComplexLift:
    complex: BoundedComplex
    lo: int
    lift: ModuleLift

    @property
    def ring(self) -> ArtinLocalAlgebra:
        return self.lift.ring

    def differential(self, n: int) -> list:
        """Coefficient list over R of the lifted differential d^n at each vertex."""
        C = self.lift.base.algebra
        j = n - self.lo
        out = []
        for v in range(self.complex.algebra.n_vertices):
            name = C.rarrow(v, f"a{j + 1}")
            out.append(self.lift.coeffs[name] if name in self.lift.coeffs else None)
        return out

    def reduce(self, ring: ArtinLocalAlgebra) -> "ComplexLift":
        return ComplexLift(self.complex, self.lo, self.lift.reduce(ring))


def lift_complex(x: BoundedComplex, R: ArtinLocalAlgebra) -> ComplexLift:
    """Trivial lift R ⊗ x."""
    rep = complex_to_representation(x)
    return ComplexLift(x, x.lo, ModuleLift.trivial(rep, R))


def complex_lift_from_differentials(x: BoundedComplex, R: ArtinLocalAlgebra, diffs: dict) -> ComplexLift:
    """Lift with constant terms and differentials ``diffs[n][v]`` given as coefficient lists over R."""
    rep = complex_to_representation(x)
    C = rep.algebra
    coeffs = {a: [m] for a, m in rep.action.items()}
    for n, per_vertex in diffs.items():
        j = n - x.lo
        for v, lst in enumerate(per_vertex):
            coeffs[C.rarrow(v, f"a{j + 1}")] = list(lst)
    return ComplexLift(x, x.lo, ModuleLift(rep, R, coeffs))


def extend_complex_lift(cl: ComplexLift, ext: SmallExtension) -> Optional[ComplexLift]:
    out = extend_lift(cl.lift, ext)
    return None if out is None else ComplexLift(cl.complex, cl.lo, out)


def complex_lifts_isomorphic(a: ComplexLift, b: ComplexLift) -> bool:
    return lifts_isomorphic(a.lift, b.lift)


def complex_versal_presentation(x: BoundedComplex, order: int = 4) -> VersalPresentation:
    """Hull in the strict model.

    Universality is claimed when End in the singularity category is k.  When
    x has a single nonzero cohomology module C, ``cohomology_check`` records
    whether the hull agrees with the one of C.
    """
    vp = versal_presentation(complex_to_representation(x), order)
    try:
        vp.universal_claimed = hom_singularity_dim(x, x) == 1
    except UnsupportedInput:
        vp.universal_claimed = False
    nonzero = [n for n in x.degrees if not cohomology(x, n).is_zero()]
    if len(nonzero) == 1:
        other = versal_presentation(cohomology(x, nonzero[0]), order)
        vp.cohomology_check = other.nvars == vp.nvars and \
            other.relation_strings() == vp.relation_strings()
    return vp


__all__ = [
    "DeformationError", "LinearData", "ModuleLift", "underlying_module", "tangent_dim", "extend_lift", "extend_lift_along", "lifts_isomorphic",
    "enumerate_deformations", "VersalPresentation", "versal_presentation", "variable_names", "ComplexLift",
    "lift_complex", "complex_lift_from_differentials", "extend_complex_lift", "complex_lifts_isomorphic",
    "complex_versal_presentation",
]
