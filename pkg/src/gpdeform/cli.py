"""Command-line front end: JSON documents in, one canonical JSON report out.

Exit codes: 0 success, 1 computational refutation, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .algebra import AlgebraError, BoundQuiverAlgebra, nakayama_from_admissible_sequence
from .artin import RingError, SmallExtension
from .complexes import (ComplexError, UnsupportedInput, cohomology, cone, hom_derived_dim, hom_singularity_dim,
                        is_perfect)
from .deform import DeformationError, enumerate_deformations, extend_lift, tangent_dim, versal_presentation
from .homological import (decompose, ext_dim, is_gorenstein_projective, min_proj_resolution, stable_hom,
                          string_module, syzygy)
from .io import (InputError, dumps, field_of, load_document, read_algebra, read_bimodule, read_chain_map,
                 read_complex, read_lift, read_module, read_ring, write_algebra, write_complex, write_lift,
                 write_module, write_morphism, write_ring)
from .linalg import Field
from .modules import ModuleError, hom_basis
from .morita import (BimoduleError, check_singular_equivalence, transport, verify_transport_invariance)
from .fixtures import appendix_algebra
from .scenario import appendix

DEFAULT_ORDER = 4


class Refuted(Exception):
    """A computed answer contradicts an asserted one (exit 1)."""


class Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.field: Optional[Field] = field_of(args.field) if args.field is not None else None
        self.order = args.order if args.order is not None else DEFAULT_ORDER
        if self.order < 1:
            raise InputError("--order must be at least 1")
        env = os.environ.get("GPDEFORM_CUTOFF")
        self._cutoff_source = "flag" if args.cutoff is not None else ("env" if env else "default")
        try:
            self._cutoff = args.cutoff if args.cutoff is not None else (int(env) if env else None)
        except ValueError as exc:
            raise InputError(f"GPDEFORM_CUTOFF must be an integer, got {env!r}") from exc
        if self._cutoff is not None and self._cutoff < 1:
            raise InputError("cutoff must be at least 1")
        self.algebra: Optional[BoundQuiverAlgebra] = None

    def cutoff(self, alg: Optional[BoundQuiverAlgebra] = None) -> Optional[int]:
        alg = alg or self.algebra
        if self._cutoff is not None:
            return self._cutoff
        return 2 * alg.dim if alg is not None else None

    def see(self, obj):
        alg = getattr(obj, "algebra", None)
        if self.algebra is None and alg is not None:
            self.algebra = alg
        if self.field is None:
            self.field = getattr(obj, "field", None)
        return obj

    def module(self, ref):
        return self.see(read_module(ref, field=self.field))

    def config(self) -> dict:
        return {"field": None if self.field is None else self.field.char, "order": self.order,
                "cutoff": self.cutoff(), "cutoff_source": self._cutoff_source}


def _expect(ctx: Context, status: str) -> None:
    want = getattr(ctx.args, "expect", None)
    if want is not None and want != status:
        raise Refuted(f"expected {want}, computed {status}")


# --------------------------------------------------------------------------
# handlers
# --------------------------------------------------------------------------

def alg_build(ctx: Context) -> dict:
    alg = ctx.see(read_algebra(ctx.args.algebra, ctx.field))
    return {"algebra": write_algebra(alg), "dim": alg.dim, "vertices": alg.n_vertices,
            "projective_dims": [len(alg.basis_by_source[v]) for v in range(alg.n_vertices)]}


def alg_nakayama(ctx: Context) -> dict:
    ctx.field = ctx.field or field_of(2)
    alg = ctx.see(nakayama_from_admissible_sequence(ctx.field, len(ctx.args.c), ctx.args.c))
    return {"algebra": write_algebra(alg), "dim": alg.dim,
            "projective_dims": [len(alg.basis_by_source[v]) for v in range(alg.n_vertices)]}


def alg_check(ctx: Context) -> dict:
    alg = ctx.see(read_algebra(ctx.args.algebra, ctx.field))
    out = {"dim": alg.dim, "associative": alg.check_associativity(), "unital": alg.check_identity()}
    if not (out["associative"] and out["unital"]):
        raise Refuted(dumps(out))
    return out


def mod_hom(ctx: Context) -> dict:
    m, n = ctx.module(ctx.args.m), ctx.module(ctx.args.n)
    h = hom_basis(m, n)
    return {"dim": h.dim, "basis": [write_morphism(phi) for phi in h.basis]}


def mod_ext(ctx: Context) -> dict:
    m, n = ctx.module(ctx.args.m), ctx.module(ctx.args.n)
    if ctx.args.degree < 0:
        raise InputError("degree must be non-negative")
    return {"degree": ctx.args.degree, "dim": ext_dim(m, n, ctx.args.degree)}


def mod_syzygy(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    om = syzygy(m)
    return {"syzygy": write_module(om), "is_zero": om.is_zero()}


def mod_resolve(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    length = ctx.args.length if ctx.args.length is not None else ctx.cutoff()
    res = min_proj_resolution(m, length)
    return {"length_bound": length, "terms": [list(p.dims) for p, _ in res],
            "terminated": len(res) <= length}


def mod_gp(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    v = is_gorenstein_projective(m, ctx.cutoff())
    _expect(ctx, v.status)
    return {"status": v.status, "certificate": v.certificate}


def mod_stable_end(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    return {"dim": stable_hom(m, m)[0]}


def mod_decompose(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    return {"summands": [{"module": write_module(r), "multiplicity": k} for r, k in decompose(m)]}


def mod_string(ctx: Context) -> dict:
    alg = ctx.see(read_algebra(ctx.args.algebra, ctx.field))
    m = string_module(alg, ctx.args.word, ctx.args.at)
    return {"module": write_module(m)}


def cx_cone(ctx: Context) -> dict:
    fmap = read_chain_map(ctx.args.map, field=ctx.field)
    ctx.see(fmap.src)
    c = cone(fmap)
    return {"cone": write_complex(c.complex)}


def cx_cohomology(ctx: Context) -> dict:
    x = ctx.see(read_complex(ctx.args.x, field=ctx.field))
    h = cohomology(x, ctx.args.degree)
    return {"degree": ctx.args.degree, "cohomology": write_module(h)}


def cx_perfect(ctx: Context) -> dict:
    x = ctx.see(read_complex(ctx.args.x, field=ctx.field))
    cutoff = ctx._cutoff
    v = is_perfect(x, cutoff)
    _expect(ctx, v.status)
    cert = {k: val for k, val in v.certificate.items() if isinstance(val, (int, str, bool, list))}
    return {"status": v.status, "certificate": cert}


def cx_hom_derived(ctx: Context) -> dict:
    x = ctx.see(read_complex(ctx.args.x, field=ctx.field))
    y = read_complex(ctx.args.y, field=ctx.field)
    return {"degree": ctx.args.degree, "dim": hom_derived_dim(x, y, ctx.args.degree)}


def cx_hom_sg(ctx: Context) -> dict:
    x = ctx.see(read_complex(ctx.args.x, field=ctx.field))
    y = read_complex(ctx.args.y, field=ctx.field)
    return {"dim": hom_singularity_dim(x, y, ctx._cutoff)}


def def_tangent(ctx: Context) -> dict:
    return {"dim": tangent_dim(ctx.module(ctx.args.m))}


def def_extend(ctx: Context) -> dict:
    lift = read_lift(ctx.args.lift, ctx.field)
    ctx.see(lift.base)
    source = read_ring(ctx.args.source, lift.base.field)
    try:
        ext = SmallExtension(source, lift.ring)
    except RingError as exc:
        raise InputError(f"not a small extension: {exc}") from exc
    out = extend_lift(lift, ext)
    if out is None:
        if ctx.args.expect_lift:
            raise Refuted("obstruction does not vanish")
        return {"extends": False}
    return {"extends": True, "lift": write_lift(out)}


def def_versal(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    vp = versal_presentation(m, ctx.order)
    return vp.to_json()


def def_enumerate(ctx: Context) -> dict:
    m = ctx.module(ctx.args.m)
    R = read_ring(ctx.args.ring, m.field)
    classes = enumerate_deformations(m, R)
    return {"ring": write_ring(R), "classes": len(classes), "tangent_dim": tangent_dim(m),
            "representatives": [write_lift(c) for c in classes]}


def sing_check(ctx: Context) -> dict:
    x = read_bimodule(ctx.args.x, ctx.field)
    y = read_bimodule(ctx.args.y, ctx.field)
    ctx.field = ctx.field or x.field
    rep = check_singular_equivalence(x, y, ctx._cutoff)
    if not rep.certified and ctx.args.expect_certified:
        raise Refuted(dumps(rep.to_json()))
    return rep.to_json()


def sing_transport(ctx: Context) -> dict:
    x = read_bimodule(ctx.args.x, ctx.field)
    ctx.field = ctx.field or x.field
    doc = load_document(ctx.args.v)
    if "terms" in doc or "stalk" in doc:
        w = transport(x, read_complex(doc, x.right))
        return {"complex": write_complex(w)}
    w = transport(x, read_module(doc, x.right))
    out = {"module": write_module(w)}
    if ctx.args.gp:
        v = is_gorenstein_projective(w, ctx.cutoff(w.algebra))
        out["gp"] = {"status": v.status, "certificate": v.certificate}
    return out


def sing_invariance(ctx: Context) -> dict:
    x = read_bimodule(ctx.args.x, ctx.field)
    y = read_bimodule(ctx.args.y, ctx.field)
    ctx.field = ctx.field or x.field
    doc = load_document(ctx.args.v)
    v = read_complex(doc, x.right) if ("terms" in doc or "stalk" in doc) else read_module(doc, x.right)
    ok = verify_transport_invariance(x, y, v, ctx.order)
    if ok is False:
        raise Refuted("versal presentations differ")
    return {"invariant": ok, "order": ctx.order}


def scenario_appendix(ctx: Context) -> dict:
    ctx.field = ctx.field or field_of(2)
    ctx.algebra = appendix_algebra(ctx.field)
    out = appendix(ctx.field, ctx.order, ctx._cutoff)
    if not out["passed"]:
        failed = [k for k, ok in out["checks"].items() if not ok]
        raise Refuted("failed checks: " + ", ".join(failed))
    return out


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--cutoff", type=int, default=d, help="semidecision bound (default 2·dim Λ, env GPDEFORM_CUTOFF)")
    p.add_argument("--order", type=int, default=d, help="deformation order (default 4)")
    p.add_argument("--field", type=int, default=d, help="characteristic: a prime p, or 0 for Q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpdeform", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gpdeform {__version__}")
    _globals(parser, suppress=False)
    top = parser.add_subparsers(dest="group", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)

    def group(name: str, help_: str):
        g = top.add_parser(name, help=help_)
        return g.add_subparsers(dest="command", required=True)

    def cmd(sub, name: str, fn, help_: str, *args):
        p = sub.add_parser(name, help=help_, parents=[common])
        for a in args:
            p.add_argument(*a[0], **a[1])
        p.set_defaults(fn=fn)
        return p

    def pos(name, help_):
        return ((name,), {"help": help_})

    alg = group("alg", "algebras")
    cmd(alg, "build", alg_build, "load and summarize an algebra", pos("algebra", "algebra JSON (file or inline)"))
    cmd(alg, "nakayama", alg_nakayama, "cyclic Nakayama algebra",
        (("c",), {"type": int, "nargs": "+", "help": "admissible sequence"}))
    cmd(alg, "check", alg_check, "verify associativity and unit", pos("algebra", "algebra JSON"))

    mod = group("mod", "modules")
    cmd(mod, "hom", mod_hom, "basis of Hom(M, N)", pos("m", "module JSON"), pos("n", "module JSON"))
    cmd(mod, "ext", mod_ext, "dim Ext^i(M, N)", pos("m", "module JSON"), pos("n", "module JSON"),
        (("--degree", "-i"), {"type": int, "default": 1}))
    cmd(mod, "syzygy", mod_syzygy, "Ω M", pos("m", "module JSON"))
    cmd(mod, "resolve", mod_resolve, "minimal projective resolution", pos("m", "module JSON"),
        (("--length",), {"type": int, "default": None}))
    cmd(mod, "gp", mod_gp, "Gorenstein projectivity verdict", pos("m", "module JSON"),
        (("--expect",), {"choices": ["Yes", "No", "Unknown"]}))
    cmd(mod, "stable-end", mod_stable_end, "dim of stable End(M)", pos("m", "module JSON"))
    cmd(mod, "decompose", mod_decompose, "indecomposable summands", pos("m", "module JSON"))
    cmd(mod, "string", mod_string, "string module", pos("algebra", "algebra JSON"),
        (("word",), {"nargs": "+", "help": "letters, inverse letters end in ^-1"}),
        (("--at",), {"type": int, "default": None}))

    cx = group("cx", "complexes")
    cmd(cx, "cone", cx_cone, "mapping cone", pos("map", "chain map JSON"))
    cmd(cx, "cohomology", cx_cohomology, "H^n", pos("x", "complex JSON"),
        (("--degree", "-n"), {"type": int, "default": 0}))
    cmd(cx, "perfect", cx_perfect, "perfectness verdict", pos("x", "complex JSON"),
        (("--expect",), {"choices": ["Yes", "No", "Unknown"]}))
    cmd(cx, "hom-derived", cx_hom_derived, "dim Hom_D(X, T^i Y)", pos("x", "complex JSON"),
        pos("y", "complex JSON"), (("--degree", "-i"), {"type": int, "default": 0}))
    cmd(cx, "hom-sg", cx_hom_sg, "dim Hom in the singularity category", pos("x", "complex JSON"),
        pos("y", "complex JSON"))

    de = group("def", "deformations")
    cmd(de, "tangent", def_tangent, "dim Ext^1(V, V)", pos("m", "module JSON"))
    cmd(de, "extend", def_extend, "extend a lift along a small extension", pos("lift", "lift JSON"),
        pos("source", "ring JSON of the larger ring"), (("--expect-lift",), {"action": "store_true"}))
    cmd(de, "versal", def_versal, "truncated versal presentation", pos("m", "module JSON"))
    cmd(de, "enumerate", def_enumerate, "exhaustive lift classes", pos("m", "module JSON"),
        pos("ring", "ring JSON"))

    si = group("sing", "singular equivalences of Morita type")
    cmd(si, "check", sing_check, "certify (X, Y)", pos("x", "bimodule JSON"), pos("y", "bimodule JSON"),
        (("--expect-certified",), {"action": "store_true"}))
    cmd(si, "transport", sing_transport, "X ⊗ V", pos("x", "bimodule JSON"), pos("v", "module or complex JSON"),
        (("--gp",), {"action": "store_true", "help": "recompute the GP verdict of the output"}))
    cmd(si, "invariance", sing_invariance, "compare versal presentations of V and X ⊗ V",
        pos("x", "bimodule JSON"), pos("y", "bimodule JSON"), pos("v", "module or complex JSON"))

    sc = group("scenario", "reproducible walkthroughs")
    cmd(sc, "appendix", scenario_appendix, "the Nakayama (8,9,9) walkthrough")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Exit code and the report text (or error message)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        ctx = Context(args)
        result = args.fn(ctx)
        code, status = 0, "ok"
    except Refuted as exc:
        ctx_cfg = locals().get("ctx")
        return 1, dumps({"tool": "gpdeform", "version": __version__, "command": f"{args.group} {args.command}",
                         "status": "refuted", "message": str(exc),
                         "config": ctx_cfg.config() if ctx_cfg else {}})
    except (InputError, AlgebraError, ModuleError, ComplexError, DeformationError, RingError, BimoduleError,
            UnsupportedInput, ValueError) as exc:
        return 2, f"gpdeform: error: {exc}"
    report = {"tool": "gpdeform", "version": __version__, "command": f"{args.group} {args.command}",
              "status": status, "config": ctx.config(), "result": result}
    return code, dumps(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    if text:
        stream = sys.stderr if code == 2 else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
