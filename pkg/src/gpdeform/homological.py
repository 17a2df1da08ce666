"""Projective covers, syzygies, Ext, duality, stable homs, GP verdicts, strings and decompositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np
import sympy

from .algebra import BoundQuiverAlgebra, Path
from .linalg import Mat, column_space_basis, complement_columns, kernel_basis, rank
from .modules import (Morphism, ModuleError, Representation, direct_sum, find_isomorphism,
                      free_hom_basis, free_module, hom_basis, hom_from_generators, regular_module,
                      subrepresentation, zero_module)


# --------------------------------------------------------------------------
# covers and syzygies
# --------------------------------------------------------------------------

def radical_basis(m: Representation) -> list[Mat]:
    """Per vertex, a basis of (rad M)_v = sum of arrow images landing in v."""
    f = m.field
    q = m.algebra.quiver
    out = []
    for v in range(q.n):
        imgs = [m.action[a.name] for a in q.in_arrows(v)]
        if imgs and m.dims[v]:
            out.append(column_space_basis(Mat.hstack(f, imgs, rows=m.dims[v])))
        else:
            out.append(Mat.zeros(f, m.dims[v], 0))
    return out


def top_dims(m: Representation) -> list[int]:
    return [m.dims[v] - b.cols for v, b in enumerate(radical_basis(m))]


def projective_cover(m: Representation) -> tuple[Representation, Morphism]:
    """Minimal projective P ↠ m; generators lift a basis of m / rad m."""
    if m.is_zero():
        raise ModuleError("projective cover of the zero module")
    f = m.field
    gens, images = [], []
    for v, rad in enumerate(radical_basis(m)):
        for c in complement_columns(rad, m.dims[v]):
            img = Mat.zeros(f, m.dims[v], 1)
            img.a[c, 0] = f.one
            gens.append(v)
            images.append(img)
    p = free_module(m.algebra, gens)
    return p, hom_from_generators(p, m, images)


def is_projective(m: Representation) -> bool:
    if m.is_zero():
        return True
    return projective_cover(m)[0].dims == m.dims


def syzygy_with_inclusion(m: Representation) -> tuple[Representation, Morphism, Representation, Morphism]:
    """(Ωm, Ωm ↪ P, P, P ↠ m); for zero m everything is zero."""
    if m.is_zero():
        z = zero_module(m.algebra)
        return z, Morphism.zero(z, z), z, Morphism.zero(z, m)
    p, pi = projective_cover(m)
    k, inc = pi.kernel()
    return k, inc, p, pi


def syzygy(m: Representation) -> Representation:
    return syzygy_with_inclusion(m)[0]


class MinimalResolution:
    """Minimal projective resolution, extended on demand.

    ``omega[i]`` is Ω^i m, ``proj[i]`` the cover P_i ↠ Ω^i m, ``inc[i]`` the
    inclusion Ω^{i+1} m ↪ P_i.
    """

    def __init__(self, m: Representation):
        self.module = m
        self.omega: list[Representation] = [m]
        self.proj: list[Representation] = []
        self.cover: list[Morphism] = []
        self.inc: list[Morphism] = []

    def extend(self, n: int) -> None:
        """Make terms P_0..P_n (and Ω^{n+1}) available."""
        while len(self.proj) <= n:
            k, inc, p, pi = syzygy_with_inclusion(self.omega[-1])
            self.proj.append(p)
            self.cover.append(pi)
            self.inc.append(inc)
            self.omega.append(k)

    def syzygy(self, i: int) -> Representation:
        if i > 0:
            self.extend(i - 1)
        return self.omega[i]

    def term(self, i: int) -> Representation:
        self.extend(i)
        return self.proj[i]

    def differential(self, i: int) -> Morphism:
        """d_i: P_i -> P_{i-1} for i >= 1."""
        self.extend(i)
        return self.inc[i - 1] @ self.cover[i]

    def projective_dimension(self, cutoff: int) -> Optional[int]:
        for n in range(cutoff + 1):
            if self.syzygy(n + 1).is_zero():
                return n if not self.module.is_zero() else 0
        return None


def min_proj_resolution(m: Representation, length: int) -> list[tuple[Representation, Optional[Morphism]]]:
    """[(P_0, P_0 ↠ m), (P_1, d_1), ...], stopping early at a zero syzygy."""
    res = MinimalResolution(m)
    out: list = []
    for i in range(length + 1):
        if res.syzygy(i).is_zero():
            break
        out.append((res.term(i), res.cover[0] if i == 0 else res.differential(i)))
    return out


def projective_dimension(m: Representation, cutoff: int) -> Optional[int]:
    return MinimalResolution(m).projective_dimension(cutoff)


# --------------------------------------------------------------------------
# Ext and stable Hom
# --------------------------------------------------------------------------

def ext_dim(m: Representation, n: Representation, i: int, res: Optional[MinimalResolution] = None) -> int:
    """dim Ext^i(m, n) = dim Hom(Ω^i m, n) / (restrictions of maps P_{i-1} -> n)."""
    if i < 0:
        raise ValueError("Ext degree must be non-negative")
    if i == 0:
        return hom_basis(m, n).dim
    res = res or MinimalResolution(m)
    om = res.syzygy(i)
    if om.is_zero():
        return 0
    h = hom_basis(om, n)
    if h.dim == 0:
        return 0
    inc = res.inc[i - 1]
    restr = [phi @ inc for phi in free_hom_basis(res.term(i - 1), n)]
    if not restr:
        return h.dim
    f = m.field
    r = rank(Mat.hstack(f, [x.flat() for x in restr]))
    return h.dim - r


def stable_hom(m: Representation, n: Representation) -> tuple[int, list[Morphism]]:
    """Hom(m, n) modulo maps factoring through the projective cover of n."""
    h = hom_basis(m, n)
    if h.dim == 0 or n.is_zero():
        return h.dim, list(h.basis)
    p, pi = projective_cover(n)
    through = [pi @ g for g in hom_basis(m, p).basis]
    f = m.field
    if not through:
        return h.dim, list(h.basis)
    coords = Mat.hstack(f, [h.coords(t) for t in through])
    sub = column_space_basis(coords)
    keep = complement_columns(sub, h.dim)
    return len(keep), [h.basis[j] for j in keep]


# --------------------------------------------------------------------------
# duality
# --------------------------------------------------------------------------

@dataclass
class Dual:
    """M^† = Hom(M, Λ) over Λ^op together with the hom bases at each vertex."""
    module: Representation
    source: Representation
    bases: list
    projectives: list


def right_multiplication(alg: BoundQuiverAlgebra, projectives: Sequence[Representation], arrow: str) -> Morphism:
    """x ↦ x·a from Λe_j to Λe_i for the arrow a: i -> j."""
    a = alg.quiver.arrow(arrow)
    pj, pi = projectives[a.tgt], projectives[a.src]
    f = alg.field
    pos = [{c: k for k, c in enumerate(pi.cells[v])} for v in range(alg.n_vertices)]
    maps = []
    for v in range(alg.n_vertices):
        mat = Mat.zeros(f, pi.dims[v], pj.dims[v])
        for col, (_, b) in enumerate(pj.cells[v]):
            x = alg.basis[b]
            for k, c in alg.reduce(Path(a.src, x.arrows + (arrow,))).items():
                mat.a[pos[v][(0, k)], col] = c
        maps.append(mat)
    return Morphism(pj, pi, maps)


def dual_wrt_algebra(m: Representation) -> Dual:
    alg = m.algebra
    op = alg.opposite()
    f = m.field
    projs = [free_module(alg, [j]) for j in range(alg.n_vertices)]
    bases = [hom_basis(m, projs[j]) for j in range(alg.n_vertices)]
    dims = [b.dim for b in bases]
    action = {}
    for a in alg.quiver.arrows:
        rho = right_multiplication(alg, projs, a.name)
        src, tgt = bases[a.tgt], bases[a.src]
        mat = Mat.zeros(f, tgt.dim, src.dim)
        for k, phi in enumerate(src.basis):
            if tgt.dim:
                mat.a[:, k] = tgt.coords(rho @ phi).a[:, 0]
        action[a.name] = mat
    d = Representation(op, dims, action, check=False)
    return Dual(d, m, bases, projs)


def natural_map(m: Representation) -> tuple[list[Mat], Dual, Dual]:
    """Per-vertex matrices of the evaluation map M -> M^†† (in the hom-basis coordinates of M^††)."""
    alg = m.algebra
    f = m.field
    d1 = dual_wrt_algebra(m)
    d2 = dual_wrt_algebra(d1.module)
    op_projs = d2.projectives
    mats = []
    for i in range(alg.n_vertices):
        target = d2.bases[i]
        popi = op_projs[i]
        pos = [{c: k for k, c in enumerate(popi.cells[v])} for v in range(alg.n_vertices)]
        mat = Mat.zeros(f, target.dim, m.dims[i])
        for col in range(m.dims[i]):
            vec = Mat.zeros(f, m.dims[i], 1)
            vec.a[col, 0] = f.one
            maps = []
            for j in range(alg.n_vertices):
                hj = d1.bases[j]
                blk = Mat.zeros(f, popi.dims[j], hj.dim)
                pj = d1.projectives[j]
                for k, phi in enumerate(hj.basis):
                    val = phi.maps[i] @ vec
                    for r, (_, b) in enumerate(pj.cells[i]):
                        if val.a[r, 0] != 0:
                            blk.a[pos[j][(0, b)], k] = val.a[r, 0]
                maps.append(blk)
            ev = Morphism(d1.module, popi, maps)
            if target.dim:
                mat.a[:, col] = target.coords(ev).a[:, 0]
        mats.append(mat)
    return mats, d1, d2


def is_reflexive(m: Representation) -> bool:
    mats, _, _ = natural_map(m)
    return all(x.rows == x.cols and rank(x) == x.rows for x in mats)


# --------------------------------------------------------------------------
# Gorenstein projectivity
# --------------------------------------------------------------------------

@dataclass
class GPVerdict:
    status: str
    certificate: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == "Yes"


def _syzygy_period(res: MinimalResolution, cutoff: int) -> Optional[tuple[int, int]]:
    """First (j, k) with Ω^j ≅ Ω^{j+k}, or None; stops at a zero syzygy."""
    seen: list[Representation] = []
    for n in range(cutoff + 1):
        om = res.syzygy(n)
        if om.is_zero():
            return None
        for j, prev in enumerate(seen):
            if prev.dims == om.dims and find_isomorphism(prev, om)[0]:
                return j, n - j
        seen.append(om)
    return None


def _ext_against_regular(m: Representation, upto: int, res: MinimalResolution) -> Optional[tuple[int, int]]:
    reg = regular_module(m.algebra)
    for i in range(1, upto + 1):
        d = ext_dim(m, reg, i, res)
        if d:
            return i, d
    return None


def is_gorenstein_projective(m: Representation, cutoff: Optional[int] = None) -> GPVerdict:
    """Semidecision for total reflexivity, with a certificate for the answer."""
    alg = m.algebra
    if cutoff is None:
        cutoff = 2 * alg.dim
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if is_projective(m):
        return GPVerdict("Yes", {"reason": "projective"})
    res = MinimalResolution(m)
    pd = res.projective_dimension(cutoff)
    if pd is not None:
        return GPVerdict("No", {"reason": "finite projective dimension", "projdim": pd})
    period = _syzygy_period(res, cutoff)
    span = cutoff if period is None else period[0] + period[1]
    bad = _ext_against_regular(m, span, res)
    if bad is not None:
        return GPVerdict("No", {"reason": "Ext(M, Λ) ≠ 0", "degree": bad[0], "dim": bad[1]})
    if not is_reflexive(m):
        return GPVerdict("No", {"reason": "M -> M^†† is not an isomorphism"})
    if period is not None and period[0] == 0:
        # M ≅ Ω^k M with Ext^{1..k}(M, Λ) = 0 gives a complete resolution
        return GPVerdict("Yes", {"reason": "periodic syzygy orbit", "start": 0, "period": period[1]})
    dual = dual_wrt_algebra(m).module
    dres = MinimalResolution(dual)
    dperiod = _syzygy_period(dres, cutoff)
    dspan = cutoff if dperiod is None else dperiod[0] + dperiod[1]
    dbad = _ext_against_regular(dual, dspan, dres) if not dual.is_zero() else None
    if dbad is not None:
        return GPVerdict("No", {"reason": "Ext(M^†, Λ^op) ≠ 0", "degree": dbad[0], "dim": dbad[1]})
    if period is not None and dperiod is not None:
        return GPVerdict("Yes", {"reason": "periodic syzygy orbits", "start": period[0], "period": period[1],
                                 "dual_start": dperiod[0], "dual_period": dperiod[1]})
    return GPVerdict("Unknown", {"reason": "no periodicity detected", "cutoff": cutoff})


# --------------------------------------------------------------------------
# string modules
# --------------------------------------------------------------------------

_INVERSE_SUFFIXES = ("^-1", "⁻¹", "^{-1}")


def _parse_letter(letter: str) -> tuple[str, bool]:
    for suf in _INVERSE_SUFFIXES:
        if letter.endswith(suf):
            return letter[: -len(suf)], True
    return letter, False


def is_special_biserial(alg: BoundQuiverAlgebra) -> bool:
    q = alg.quiver
    for v in range(q.n):
        if len(q.in_arrows(v)) > 2 or len(q.out_arrows(v)) > 2:
            return False
    for a in q.arrows:
        after = [b for b in q.out_arrows(a.tgt) if alg.reduce(Path(a.src, (b.name, a.name)))]
        before = [c for c in q.in_arrows(a.src) if alg.reduce(Path(c.src, (a.name, c.name)))]
        if len(after) > 1 or len(before) > 1:
            return False
    return True


def string_module(alg: BoundQuiverAlgebra, word: Sequence[str], at: Optional[int] = None) -> Representation:
    """One basis vector per node of the word, read right to left."""
    letters = [_parse_letter(x) for x in word]
    q = alg.quiver
    for name, _ in letters:
        if not q.has_arrow(name):
            raise ModuleError(f"invalid word: unknown arrow {name!r}")
    if any(inv for _, inv in letters):
        if not is_special_biserial(alg):
            raise ModuleError("unsupported: inverse letters need a special biserial algebra")
        for (x, ix), (y, iy) in zip(letters, letters[1:]):
            if x == y and ix != iy:
                raise ModuleError("unsupported: word is not reduced")
    if not letters:
        if at is None:
            raise ModuleError("invalid word: empty word needs a vertex")
        start = at
    else:
        name, inv = letters[-1]
        a = q.arrow(name)
        start = a.tgt if inv else a.src
        if at is not None and at != start:
            raise ModuleError(f"invalid word: starts at vertex {start}, not {at}")
    nodes = [start]
    edges = []
    for name, inv in reversed(letters):
        a = q.arrow(name)
        cur = nodes[-1]
        if not inv:
            if a.src != cur:
                raise ModuleError(f"invalid word: {name} does not start at vertex {cur}")
            nodes.append(a.tgt)
            edges.append((name, len(nodes) - 2, len(nodes) - 1))
        else:
            if a.tgt != cur:
                raise ModuleError(f"invalid word: {name} does not end at vertex {cur}")
            nodes.append(a.src)
            edges.append((name, len(nodes) - 1, len(nodes) - 2))
    slot, dims = [], [0] * q.n
    for v in nodes:
        slot.append(dims[v])
        dims[v] += 1
    f = alg.field
    action = {a.name: Mat.zeros(f, dims[a.tgt], dims[a.src]) for a in q.arrows}
    for name, s, t in edges:
        action[name].a[slot[t], slot[s]] = f.one
    m = Representation(alg, dims, action, check=False)
    bad = m.failing_relation()
    if bad is not None:
        raise ModuleError(f"invalid word: relation {bad} does not vanish")
    m.name = "M[" + "".join(word) + "]" if word else f"S{start}"
    return m


# --------------------------------------------------------------------------
# decomposition
# --------------------------------------------------------------------------

_X = sympy.Symbol("x")


def _charpoly_factors(f, mat: Mat) -> list:
    if mat.rows == 0:
        return []
    if f.char:
        sm = sympy.Matrix(mat.rows, mat.cols, [int(v) for v in mat.a.flat])
        poly = sympy.Poly(sm.charpoly(_X).as_expr(), _X, modulus=f.char)
    else:
        sm = sympy.Matrix(mat.rows, mat.cols, [sympy.Rational(v.numerator, v.denominator) for v in mat.a.flat])
        poly = sympy.Poly(sm.charpoly(_X).as_expr(), _X, domain=sympy.QQ)
    return [g.monic() for g, _ in poly.factor_list()[1]]


def _poly_at(f, poly, mat: Mat) -> Mat:
    out = Mat.zeros(f, mat.rows, mat.cols)
    ident = Mat.identity(f, mat.rows)
    for c in poly.all_coeffs():
        if f.char:
            c = int(c) % f.char
        else:
            c = sympy.Rational(c)
            c = f(f"{c.p}/{c.q}")
        out = out @ mat + ident.scale(c)
    return out


def _key(poly) -> tuple:
    return tuple(str(c) for c in poly.all_coeffs())


def _split_by(m: Representation, phi: Morphism) -> Optional[list[Representation]]:
    f = m.field
    factors: dict = {}
    for v in range(len(m.dims)):
        for g in _charpoly_factors(f, phi.maps[v]):
            factors.setdefault(_key(g), g)
    if len(factors) < 2:
        return None
    parts = []
    for k in sorted(factors):
        g = factors[k]
        bases = []
        for v in range(len(m.dims)):
            if m.dims[v] == 0:
                bases.append(Mat.zeros(f, 0, 0))
                continue
            gv = _poly_at(f, g, phi.maps[v])
            p = gv
            for _ in range(m.dims[v] - 1):
                p = p @ gv
            bases.append(kernel_basis(p))
        sub, _ = subrepresentation(m, bases)
        if not sub.is_zero():
            parts.append(sub)
    return parts if len(parts) > 1 else None


def _candidates(basis: list, f, seed: int, n_random: int):
    yield from basis
    if len(basis) <= 16:
        for a, b in itertools.combinations(basis, 2):
            yield a + b
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        out = None
        for b in basis:
            c = f.random(rng) if not f.char else int(rng.integers(0, f.char))
            if c != 0:
                t = b.scale(c)
                out = t if out is None else out + t
        if out is not None:
            yield out


def _indecomposables(m: Representation, seed: int) -> list[Representation]:
    if m.is_zero():
        return []
    end = hom_basis(m, m)
    if end.dim <= 1:
        return [m]
    for phi in _candidates(end.basis, m.field, seed, 32):
        parts = _split_by(m, phi)
        if parts:
            out = []
            for p in parts:
                out.extend(_indecomposables(p, seed))
            return out
    return [m]


def decompose(m: Representation, seed: int = 0) -> list[tuple[Representation, int]]:
    """Indecomposable summands with multiplicities, in canonical order."""
    pieces = sorted(_indecomposables(m, seed), key=lambda r: r.canonical_key())
    groups: list[list] = []
    for p in pieces:
        for g in groups:
            if find_isomorphism(g[0], p)[0]:
                g[1] += 1
                break
        else:
            groups.append([p, 1])
    return [(g[0], g[1]) for g in groups]


def total_from_decomposition(parts: Sequence[tuple[Representation, int]]) -> Representation:
    return direct_sum([p for p, k in parts for _ in range(k)])


__all__ = [
    "radical_basis", "top_dims", "projective_cover", "is_projective", "syzygy", "syzygy_with_inclusion",
    "MinimalResolution", "min_proj_resolution", "projective_dimension", "ext_dim", "stable_hom", "Dual",
    "dual_wrt_algebra", "natural_map", "is_reflexive", "GPVerdict", "is_gorenstein_projective",
    "string_module", "is_special_biserial", "decompose", "right_multiplication",
]
