"""JSON readers and writers for algebras, modules, complexes, rings, lifts and bimodules."""

from __future__ import annotations

import json
import os
from typing import Any, Optional

from .algebra import (AlgebraError, Arrow, BoundQuiverAlgebra, Quiver, build_algebra, ground_field_algebra,
                      linear_quiver_algebra, nakayama_from_admissible_sequence, truncated_polynomial)
from .artin import ArtinLocalAlgebra, artin_quotient, poly_str
from .complexes import BoundedComplex, ChainMap
from .deform import ModuleLift
from .homological import string_module
from .linalg import Field, GF, QQ, Mat
from .modules import Morphism, Representation, direct_sum, indecomposable_projective, regular_module, simple_module


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def field_of(char: int) -> Field:
    try:
        return QQ if int(char) == 0 else GF(int(char))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad field characteristic {char!r}: {exc}") from exc


def load_document(ref: Any, base: str = ".") -> Any:
    """A dict as is, inline JSON text, or a path to a JSON file."""
    if isinstance(ref, (dict, list)):
        return ref
    if not isinstance(ref, str):
        raise InputError(f"cannot read a document from {type(ref).__name__}")
    text = ref.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid inline JSON: {exc}") from exc
    path = ref if os.path.isabs(ref) else os.path.join(base, ref)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot open {ref}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{ref}: invalid JSON: {exc}") from exc


def _need(doc: dict, key: str, what: str):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"{what}: missing key {key!r}")
    return doc[key]


# --------------------------------------------------------------------------
# algebras
# --------------------------------------------------------------------------

_ALGEBRA_CACHE: dict = {}


def read_algebra(ref: Any, field: Optional[Field] = None) -> BoundQuiverAlgebra:
    """Full schema, or one of the shorthands ``nakayama``, ``truncated_polynomial``, ``linear``, ``ground``.

    Identical documents over the same field give the same algebra object.
    """
    doc = load_document(ref)
    if not isinstance(doc, dict):
        raise InputError("algebra document must be an object")
    if field is None:
        field = field_of(doc.get("field", {}).get("char", 2) if isinstance(doc.get("field"), dict)
                         else doc.get("field", 2))
    key = (json.dumps(doc, sort_keys=True, ensure_ascii=False), field.char)
    if key in _ALGEBRA_CACHE:
        return _ALGEBRA_CACHE[key]
    try:
        if "nakayama" in doc:
            c = [int(x) for x in doc["nakayama"]]
            alg = nakayama_from_admissible_sequence(field, len(c), c, doc.get("arrow_names"))
        elif "truncated_polynomial" in doc:
            alg = truncated_polynomial(field, int(doc["truncated_polynomial"]))
        elif "linear" in doc:
            alg = linear_quiver_algebra(field, int(doc["linear"]), doc.get("zero_relations", ()))
        elif "ground" in doc:
            alg = ground_field_algebra(field)
        else:
            q = _need(doc, "quiver", "algebra")
            arrows = [Arrow(str(a["name"]), int(a["src"]), int(a["tgt"])) for a in _need(q, "arrows", "quiver")]
            quiver = Quiver(int(_need(q, "vertices", "quiver")), arrows)
            rels = []
            for rel in doc.get("relations", []):
                rels.append([(field(str(t.get("coef", "1"))), tuple(t["path"])) for t in rel])
            alg = build_algebra(field, quiver, rels, int(_need(doc, "loewy_bound", "algebra")), doc.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise InputError(f"algebra: malformed entry ({exc})") from exc
    except AlgebraError as exc:
        raise InputError(f"algebra: {exc}") from exc
    _ALGEBRA_CACHE[key] = alg
    return alg


def write_algebra(alg: BoundQuiverAlgebra) -> dict:
    f = alg.field
    return {
        "field": {"char": f.char},
        "quiver": {"vertices": alg.n_vertices,
                   "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in alg.quiver.arrows]},
        "relations": [[{"coef": f.to_str(c), "path": list(p)} for c, p in rel] for rel in alg.relations],
        "loewy_bound": alg.loewy_bound,
    }


# --------------------------------------------------------------------------
# matrices and modules
# --------------------------------------------------------------------------

def read_matrix(field: Field, rows: Any, nrows: int, ncols: int, what: str) -> Mat:
    try:
        m = Mat.from_rows(field, [[field(x if not isinstance(x, float) else str(x)) for x in r] for r in rows], ncols)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: bad matrix ({exc})") from exc
    if m.shape != (nrows, ncols):
        raise InputError(f"{what}: expected a {nrows}x{ncols} matrix, got {m.rows}x{m.cols}")
    return m


def write_matrix(m: Mat) -> list:
    f = m.field
    return [[f.to_str(x) for x in row] for row in m.a.tolist()]


def read_module(ref: Any, alg: Optional[BoundQuiverAlgebra] = None, field: Optional[Field] = None) -> Representation:
    doc = load_document(ref)
    if not isinstance(doc, dict):
        raise InputError("module document must be an object")
    if "algebra" in doc:
        alg = read_algebra(doc["algebra"], field)
    if alg is None:
        raise InputError("module: no algebra given")
    f = alg.field
    try:
        if "string" in doc:
            return string_module(alg, list(doc["string"]), doc.get("at"))
        if "projective" in doc:
            return indecomposable_projective(alg, int(doc["projective"]))
        if "simple" in doc:
            return simple_module(alg, int(doc["simple"]))
        if "regular" in doc:
            return regular_module(alg)
        if "sum" in doc:
            return direct_sum([read_module(d, alg) for d in doc["sum"]])
        dims = [int(d) for d in _need(doc, "dims", "module")]
        if len(dims) != alg.n_vertices:
            raise InputError(f"module: {len(dims)} dimensions for {alg.n_vertices} vertices")
        acts = doc.get("action", {})
        action = {}
        for a in alg.quiver.arrows:
            r, c = dims[a.tgt], dims[a.src]
            action[a.name] = read_matrix(f, acts[a.name], r, c, f"arrow {a.name}") if a.name in acts and r * c \
                else Mat.zeros(f, r, c)
        unknown = set(acts) - {a.name for a in alg.quiver.arrows}
        if unknown:
            raise InputError(f"module: unknown arrows {sorted(unknown)}")
        return Representation(alg, dims, action, name=doc.get("name", ""))
    except InputError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"module: {exc}") from exc


def write_module(m: Representation) -> dict:
    return {"dims": list(m.dims),
            "action": {a.name: write_matrix(m.action[a.name]) for a in m.algebra.quiver.arrows}}


def write_morphism(phi: Morphism) -> list:
    return [write_matrix(m) for m in phi.maps]


def read_morphism(rows: Any, src: Representation, tgt: Representation, what: str) -> Morphism:
    f = src.field
    n = src.algebra.n_vertices
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"{what}: expected {n} per-vertex matrices")
    maps = [read_matrix(f, rows[v], tgt.dims[v], src.dims[v], f"{what} at vertex {v}") if tgt.dims[v] * src.dims[v]
            else Mat.zeros(f, tgt.dims[v], src.dims[v]) for v in range(n)]
    phi = Morphism(src, tgt, maps)
    if not phi.is_homomorphism():
        raise InputError(f"{what}: not a module homomorphism")
    return phi


# --------------------------------------------------------------------------
# complexes
# --------------------------------------------------------------------------

def read_complex(ref: Any, alg: Optional[BoundQuiverAlgebra] = None, field: Optional[Field] = None) -> BoundedComplex:
    doc = load_document(ref)
    if "algebra" in doc:
        alg = read_algebra(doc["algebra"], field)
    if alg is None:
        raise InputError("complex: no algebra given")
    if "stalk" in doc:
        return BoundedComplex.stalk(read_module(doc["stalk"], alg), int(doc.get("degree", 0)))
    terms = {int(k): read_module(v, alg) for k, v in _need(doc, "terms", "complex").items()}
    diffs = {}
    for k, rows in doc.get("diffs", {}).items():
        n = int(k)
        if n not in terms or n + 1 not in terms:
            raise InputError(f"complex: differential in degree {n} between missing terms")
        diffs[n] = read_morphism(rows, terms[n], terms[n + 1], f"differential {n}")
    try:
        return BoundedComplex(alg, terms, diffs)
    except ValueError as exc:
        raise InputError(f"complex: {exc}") from exc


def write_complex(x: BoundedComplex) -> dict:
    return {"terms": {str(n): write_module(x.term(n)) for n in x.degrees},
            "diffs": {str(n): write_morphism(x.diff(n)) for n in x.degrees if n + 1 in x.degrees}}


def read_chain_map(ref: Any, alg: Optional[BoundQuiverAlgebra] = None, field: Optional[Field] = None) -> ChainMap:
    doc = load_document(ref)
    if "algebra" in doc:
        alg = read_algebra(doc["algebra"], field)
    src = read_complex(_need(doc, "src", "chain map"), alg)
    tgt = read_complex(_need(doc, "tgt", "chain map"), alg)
    maps = {int(k): read_morphism(v, src.term(int(k)), tgt.term(int(k)), f"chain map degree {k}")
            for k, v in doc.get("maps", {}).items()}
    try:
        return ChainMap(src, tgt, maps)
    except ValueError as exc:
        raise InputError(f"chain map: {exc}") from exc


# --------------------------------------------------------------------------
# rings and lifts
# --------------------------------------------------------------------------

def read_ring(ref: Any, field: Field) -> ArtinLocalAlgebra:
    doc = load_document(ref)
    names = [str(v) for v in doc.get("vars", [])]
    order = int(doc.get("order", 4))
    if order < 1:
        raise InputError("ring: order must be at least 1")
    try:
        return artin_quotient(field, names, list(doc.get("relations", [])), order)
    except (ValueError, TypeError) as exc:
        raise InputError(f"ring: {exc}") from exc


def write_ring(R: ArtinLocalAlgebra) -> dict:
    return {"vars": list(R.names), "relations": [poly_str(p, R.names, R.field) for p in R.ideal_polys()],
            "order": R.order, "basis": R.labels()}


def read_lift(ref: Any, field: Optional[Field] = None) -> ModuleLift:
    """{"module": M, "ring": R, "coeffs": {arrow: {"t": matrix, ...}}} keyed by basis monomial labels."""
    doc = load_document(ref)
    v = read_module(_need(doc, "module", "lift"), field=field)
    R = read_ring(_need(doc, "ring", "lift"), v.field)
    labels = R.labels()
    coeffs = {}
    for a in v.algebra.quiver.arrows:
        shape = v.action[a.name].shape
        lst = [v.action[a.name]] + [Mat.zeros(v.field, *shape) for _ in range(R.dim - 1)]
        for lab, rows in doc.get("coeffs", {}).get(a.name, {}).items():
            if lab not in labels or lab == labels[0]:
                raise InputError(f"lift: {lab!r} is not a basis monomial of the maximal ideal ({labels[1:]})")
            lst[labels.index(lab)] = read_matrix(v.field, rows, *shape, f"lift coefficient {a.name}/{lab}")
        coeffs[a.name] = lst
    try:
        return ModuleLift(v, R, coeffs)
    except ValueError as exc:
        raise InputError(f"lift: {exc}") from exc


def write_lift(lift: ModuleLift) -> dict:
    labels = lift.ring.labels()
    module = {"algebra": write_algebra(lift.base.algebra), **write_module(lift.base)}
    return {"module": module, "ring": write_ring(lift.ring),
            "coeffs": {a: {labels[k]: write_matrix(m) for k, m in enumerate(lst) if k and not m.is_zero()}
                       for a, lst in lift.coeffs.items()}}


# --------------------------------------------------------------------------
# bimodules
# --------------------------------------------------------------------------

def read_bimodule(ref: Any, field: Optional[Field] = None):
    from .morita import Bimodule, bimodule_direct_sum, envelope, free_bimodule, regular_bimodule
    doc = load_document(ref)
    left = read_algebra(_need(doc, "left", "bimodule"), field)
    right = read_algebra(_need(doc, "right", "bimodule"), left.field)
    if doc.get("regular"):
        if left is not right:
            raise InputError("regular bimodule needs left = right")
        return regular_bimodule(left)
    if doc.get("free"):
        return free_bimodule(left, right)
    if "sum" in doc:
        parts = [read_bimodule({"left": doc["left"], "right": doc["right"], **d}, left.field) for d in doc["sum"]]
        return bimodule_direct_sum(parts)
    rep = read_module({k: v for k, v in doc.items() if k not in ("left", "right")}, envelope(left, right))
    return Bimodule(left, right, rep, name=doc.get("name", ""))


def dumps(doc: Any) -> str:
    """Canonical serialization used for every report."""
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)


__all__ = [
    "InputError", "field_of", "load_document", "read_algebra", "write_algebra", "read_matrix", "write_matrix",
    "read_module", "write_module", "read_morphism", "write_morphism", "read_complex", "write_complex",
    "read_chain_map", "read_ring", "write_ring", "read_lift", "write_lift", "read_bimodule", "dumps",
]
