"""Named algebras, modules, complexes and bimodules used by the scenario, the CLI and the tests."""

from __future__ import annotations

from .algebra import BoundQuiverAlgebra, linear_quiver_algebra, nakayama_from_admissible_sequence, truncated_polynomial
from .artin import ArtinLocalAlgebra
from .complexes import BoundedComplex, shift
from .deform import ComplexLift, complex_lift_from_differentials, lift_complex
from .homological import right_multiplication, string_module
from .linalg import Field, Mat
from .modules import Representation, direct_sum, free_module, indecomposable_projective
from .morita import bimodule_direct_sum, free_bimodule, regular_bimodule

V1_WORD = ("γ3", "γ2")
V2_WORD = ("γ3", "γ2", "γ1", "γ3", "γ2")


def appendix_algebra(field: Field) -> BoundQuiverAlgebra:
    """Λ₀: cyclic Nakayama algebra on three vertices with admissible sequence (8, 9, 9)."""
    return nakayama_from_admissible_sequence(field, 3, (8, 9, 9), name="Λ0")


def v1(alg: BoundQuiverAlgebra) -> Representation:
    m = string_module(alg, V1_WORD)
    m.name = "V1"
    return m


def v2(alg: BoundQuiverAlgebra) -> Representation:
    m = string_module(alg, V2_WORD)
    m.name = "V2"
    return m


def a2(field: Field) -> BoundQuiverAlgebra:
    return linear_quiver_algebra(field, 2, name="A2")


def dual_numbers_algebra(field: Field) -> BoundQuiverAlgebra:
    """k[x]/(x²)."""
    return truncated_polynomial(field, 2)


def two_term(alg: BoundQuiverAlgebra, arrow: str) -> BoundedComplex:
    """Λe_j -> Λe_i in degrees -1, 0, given by right multiplication with the arrow a: i -> j."""
    projs = [free_module(alg, [v]) for v in range(alg.n_vertices)]
    d = right_multiplication(alg, projs, arrow)
    return BoundedComplex(alg, {-1: d.src, 0: d.tgt}, {-1: d})


def perfect_fixtures(alg: BoundQuiverAlgebra, arrow: str) -> dict[str, BoundedComplex]:
    """Five bounded complexes of projectives, all concentrated in degrees <= 0."""
    n = alg.n_vertices
    p = [indecomposable_projective(alg, v) for v in range(n)]
    t = two_term(alg, arrow)
    return {
        "stalk P0": BoundedComplex.stalk(p[0], 0),
        "stalk P1+P2": BoundedComplex.stalk(direct_sum([p[1 % n], p[2 % n]]), 0),
        "two-term": t,
        "two-term shifted": shift(t, 1),
        "stalk P2 shifted": shift(BoundedComplex.stalk(p[2 % n], 0), 2),
    }


def perturbed_lift(x: BoundedComplex, R: ArtinLocalAlgebra) -> ComplexLift:
    """A lift whose lowest differential is d (1 + t) at every vertex; trivial when R = k."""
    if R.dim == 1 or not x.degrees or len(x.degrees) < 2:
        return lift_complex(x, R)
    n = x.degrees[0]
    d = x.diff(n)
    t_index = 1
    per_vertex = []
    for v in range(x.algebra.n_vertices):
        m = d.maps[v]
        lst = [m] + [Mat.zeros(x.field, *m.shape) for _ in range(R.dim - 1)]
        lst[t_index] = m
        per_vertex.append(lst)
    return complex_lift_from_differentials(x, R, {n: per_vertex})


def identity_pair(alg: BoundQuiverAlgebra):
    x = regular_bimodule(alg)
    return x, x


def doubling_pair(field: Field):
    """X = Y = Λ ⊕ Λ over A₂; X ⊗ Y = Λ ⊕ Λ³ with Λ³ of bimodule projective dimension 1."""
    alg = a2(field)
    r = regular_bimodule(alg)
    x = bimodule_direct_sum([r, r])
    return x, x


def inflation_pair(field: Field):
    """Over k[x]/(x²): X = Λ ⊕ (Λ ⊗_k Λ), Y = Λ."""
    alg = dual_numbers_algebra(field)
    r = regular_bimodule(alg)
    return bimodule_direct_sum([r, free_bimodule(alg, alg)]), r


__all__ = [
    "V1_WORD", "V2_WORD", "appendix_algebra", "v1", "v2", "a2", "dual_numbers_algebra", "two_term",
    "perfect_fixtures", "perturbed_lift", "identity_pair", "doubling_pair", "inflation_pair",
]
