"""Artinian local coefficient rings k[t_1..t_r]/(I + m^{N+1}) and small extensions between them."""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

import numpy as np
import sympy

from .linalg import Field, Mat, _rref_array


class RingError(ValueError):
    pass


def monomials_upto(nvars: int, order: int) -> list[tuple]:
    """Exponent tuples of degree <= order in graded-lex ascending order (t1 > t2 > ...)."""
    out = []
    for d in range(order + 1):
        deg = [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]
        out.extend(sorted(deg, key=lambda e: tuple(-x for x in e)))
    return out


def _add(e1: tuple, e2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(e1, e2))


def monomial_str(e: tuple, names: Sequence[str]) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts) if parts else "1"


def poly_str(poly: dict, names: Sequence[str], field: Field) -> str:
    """Terms in descending graded-lex order, e.g. ``t1^2 + 2*t1*t2``."""
    order = monomials_upto(len(names), max((sum(e) for e in poly), default=0))
    rank_of = {e: i for i, e in enumerate(order)}
    terms = sorted((e for e, c in poly.items() if c != 0), key=lambda e: -rank_of[e])
    if not terms:
        return "0"
    out = ""
    for k, e in enumerate(terms):
        c = poly[e]
        if field.char == 0:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg, mag = False, c
        m = monomial_str(e, names)
        if mag == 1:
            body = m
        elif m == "1":
            body = field.to_str(mag)
        else:
            body = f"{field.to_str(mag)}*{m}"
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def parse_poly(text: str, names: Sequence[str], field: Field) -> dict:
    """Parse ``"t1^2 - 3*t2"`` into ``{exponents: coefficient}``."""
    syms = {n: sympy.Symbol(n) for n in names}
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals=syms)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise RingError(f"cannot parse relation {text!r}: {exc}") from None
    gens = [syms[n] for n in names] or [sympy.Symbol("_unused")]
    try:
        poly = sympy.Poly(sympy.expand(expr), *gens, domain=sympy.QQ)
    except sympy.PolynomialError as exc:
        raise RingError(f"relation {text!r} is not a polynomial in {list(names)}: {exc}") from None
    out: dict = {}
    for monom, coef in poly.terms():
        e = tuple(monom) if names else ()
        c = field(f"{coef.p}/{coef.q}")
        if c != 0:
            out[e] = c
    return out


class ArtinLocalAlgebra:
    """k[t_1..t_r]/(ideal + m^{order+1}) with a standard-monomial basis.

    ``ideal`` is a finite spanning set of an ideal inside the truncated
    polynomial space (each element a ``{exponents: coef}`` dict); it is
    closed under multiplication by monomials on construction.  The basis
    consists of the standard monomials (not leading terms of the ideal
    under graded-lex order), listed in ascending graded-lex order.
    """

    def __init__(self, field: Field, names: Sequence[str], order: int, ideal: Iterable[dict] = (),
                 closed: bool = False, relations_text: Optional[Sequence[str]] = None):
        if order < 0:
            raise RingError("order must be non-negative")
        self.field = field
        self.names = tuple(names)
        self.order = int(order)
        self.relations_text = list(relations_text) if relations_text is not None else None
        r = len(self.names)
        self.monomials = monomials_upto(r, self.order)
        self.mindex = {e: i for i, e in enumerate(self.monomials)}
        gens = [self._truncate(p) for p in ideal]
        gens = [g for g in gens if g]
        for g in gens:
            if g.get((0,) * r, 0) != 0:
                raise RingError("relation has a nonzero constant term; the quotient would not be local")
        if not closed:
            gens = [self._truncate({_add(e, m): c for e, c in g.items()}) for g in gens for m in self.monomials]
            gens = [g for g in gens if g]
        nm = len(self.monomials)
        # columns in descending order so that pivots are leading monomials
        arr = Mat.zeros(field, len(gens), nm).a
        for i, g in enumerate(gens):
            for e, c in g.items():
                arr[i, nm - 1 - self.mindex[e]] = c
        red, piv = _rref_array(field, arr) if gens else (arr, [])
        self._ideal_rref = red[:len(piv)]
        lead = {nm - 1 - p for p in piv}
        self.std = [e for i, e in enumerate(self.monomials) if i not in lead]
        self.std_index = {e: i for i, e in enumerate(self.std)}
        d = len(self.std)
        self._nf: dict = {}
        for e in self.std:
            v = Mat.zeros(field, d, 1).a[:, 0]
            v[self.std_index[e]] = field.one
            self._nf[e] = v
        for row, p in zip(red, piv):
            e = self.monomials[nm - 1 - p]
            v = Mat.zeros(field, d, 1).a[:, 0]
            for s in self.std:
                c = row[nm - 1 - self.mindex[s]]
                if c != 0:
                    v[self.std_index[s]] = field(-c)
            self._nf[e] = v
        self._mult = None

    # construction -----------------------------------------------------------
    @classmethod
    def from_relations(cls, field: Field, names: Sequence[str], relations: Sequence, order: int) -> "ArtinLocalAlgebra":
        polys, texts = [], []
        for rel in relations:
            if isinstance(rel, str):
                texts.append(rel)
                polys.append(parse_poly(rel, names, field))
            else:
                polys.append(dict(rel))
                texts.append(poly_str(dict(rel), names, field))
        return cls(field, names, order, polys, relations_text=texts)

    def _truncate(self, p: dict) -> dict:
        out = {}
        for e, c in p.items():
            if sum(e) <= self.order:
                c = self.field(c)
                if c != 0:
                    out[e] = c
        return out

    # data -------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.std)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def label(self, i: int) -> str:
        return monomial_str(self.std[i], self.names)

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.dim)]

    def __repr__(self) -> str:
        return f"<ArtinLocalAlgebra {self.describe()} dim={self.dim}>"

    def describe(self) -> str:
        rels = self.relations_text if self.relations_text is not None else ["…"]
        return f"k[{','.join(self.names)}]/({', '.join(rels)}) + m^{self.order + 1}" if self.names else "k"

    def nf(self, e: tuple) -> np.ndarray:
        """Coordinates of a monomial; zero beyond the truncation order."""
        v = self._nf.get(e)
        if v is None:
            if sum(e) > self.order:
                return Mat.zeros(self.field, self.dim, 1).a[:, 0]
            raise RingError(f"unknown monomial {e}")
        return v

    def poly_vector(self, p: dict) -> np.ndarray:
        f = self.field
        out = Mat.zeros(f, self.dim, 1).a[:, 0]
        for e, c in p.items():
            out = out + self.nf(e) * f(c)
        return f.reduce(out)

    def contains(self, p: dict) -> bool:
        return not np.any(self.poly_vector(p) != 0)

    @property
    def mult(self) -> np.ndarray:
        """Structure constants: mult[i, j] is the coordinate vector of b_i b_j."""
        if self._mult is None:
            d = self.dim
            arr = Mat.zeros(self.field, d * d, d).a.reshape(d, d, d)
            for i, a in enumerate(self.std):
                for j, b in enumerate(self.std):
                    arr[i, j] = self.nf(_add(a, b))
            self._mult = arr
        return self._mult

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = Mat.zeros(self.field, self.dim, 1).a[:, 0]
        m = self.mult
        for i in np.nonzero(x)[0]:
            for j in np.nonzero(y)[0]:
                out = out + m[i, j] * (x[i] * y[j])
        return self.field.reduce(out)

    def ideal_polys(self) -> list[dict]:
        """Echelon basis of the ideal (inside the truncation), leading monomial first."""
        nm = len(self.monomials)
        out = []
        for row in self._ideal_rref:
            p = {}
            for k in np.nonzero(row)[0]:
                p[self.monomials[nm - 1 - k]] = row[k]
            out.append(p)
        return out

    def is_local(self) -> bool:
        return self.dim >= 1 and self.std[0] == (0,) * self.nvars

    def same_ring(self, other: "ArtinLocalAlgebra") -> bool:
        if self.field != other.field or self.names != other.names or self.dim != other.dim:
            return False
        top = max(self.order, other.order) + 1
        for e in monomials_upto(self.nvars, top):
            if self.contains({e: 1}) != other.contains({e: 1}):
                return False
        return all(other.contains(p) for p in self.ideal_polys()) and \
            all(self.contains(p) for p in other.ideal_polys())

    def transfer(self, coords: np.ndarray, other: "ArtinLocalAlgebra") -> np.ndarray:
        """Image of an element of ``other`` under the monomial map (a section when other is bigger)."""
        f = self.field
        out = Mat.zeros(f, self.dim, 1).a[:, 0]
        for k in np.nonzero(coords)[0]:
            out = out + self.nf(other.std[k]) * coords[k]
        return f.reduce(out)


def artin_quotient(field: Field, names: Sequence[str], relations: Sequence, order: int) -> ArtinLocalAlgebra:
    if order < 1 and names:
        raise RingError("order must be at least 1")
    return ArtinLocalAlgebra.from_relations(field, names, relations, order)


def truncated_ring(field: Field, n: int, var: str = "t") -> ArtinLocalAlgebra:
    """k[t]/(t^n)."""
    if n < 1:
        raise RingError("need n >= 1")
    if n == 1:
        return ArtinLocalAlgebra(field, (), 0, relations_text=[])
    return ArtinLocalAlgebra.from_relations(field, [var], [f"{var}^{n}"], n - 1)


def dual_numbers(field: Field, var: str = "t") -> ArtinLocalAlgebra:
    return truncated_ring(field, 2, var)


def ground_ring(field: Field) -> ArtinLocalAlgebra:
    return ArtinLocalAlgebra(field, (), 0, relations_text=[])


class SmallExtension:
    """R -> R0 with one-dimensional kernel killed by the maximal ideal.

    Both rings are quotients of the same polynomial ring; the map sends
    each standard monomial of R to its normal form in R0.
    """

    def __init__(self, source: ArtinLocalAlgebra, target: ArtinLocalAlgebra):
        if source.field != target.field or source.names != target.names:
            raise RingError("small extension between rings in different variables")
        f = source.field
        self.source, self.target = source, target
        proj = Mat.zeros(f, target.dim, source.dim)
        for j, e in enumerate(source.std):
            proj.a[:, j] = target.nf(e)
        self.projection = proj
        # the ideal of the source must lie in the ideal of the target
        for p in source.ideal_polys():
            if not target.contains(p):
                raise RingError("target is not a quotient of the source")
        for e in monomials_upto(source.nvars, source.order + 1):
            if sum(e) == source.order + 1 and not target.contains({e: 1}):
                raise RingError("target is not a quotient of the source")
        from .linalg import kernel_basis
        ker = kernel_basis(proj)
        if ker.cols != 1:
            raise RingError(f"kernel has dimension {ker.cols}, expected 1")
        t = ker.a[:, 0]
        for i in range(1, source.dim):
            unit = Mat.zeros(f, source.dim, 1).a[:, 0]
            unit[i] = f.one
            if np.any(source.multiply(unit, t) != 0):
                raise RingError("kernel is not annihilated by the maximal ideal")
        self.socle = t

    @classmethod
    def truncation(cls, field: Field, n: int, var: str = "t") -> "SmallExtension":
        """k[t]/(t^{n+1}) -> k[t]/(t^n)."""
        src = truncated_ring(field, n + 1, var)
        tgt = truncated_ring(field, n, var) if n > 1 else ArtinLocalAlgebra.from_relations(field, [var], [var], 1)
        return cls(src, tgt)


__all__ = [
    "RingError", "ArtinLocalAlgebra", "SmallExtension", "artin_quotient", "truncated_ring", "dual_numbers",
    "ground_ring", "monomials_upto", "poly_str", "parse_poly", "monomial_str",
]
