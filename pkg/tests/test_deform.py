from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
import sweep
from gpdeform.artin import ArtinLocalAlgebra, SmallExtension, artin_quotient, dual_numbers, truncated_ring
from gpdeform.complexes import BoundedComplex, shift
from gpdeform.deform import (DeformationError, LinearData, ModuleLift, complex_versal_presentation,
                             enumerate_deformations, extend_complex_lift, extend_lift, extend_lift_along,
                             lift_complex, lifts_isomorphic, tangent_dim, underlying_module, versal_presentation)
from gpdeform.fixtures import a2, appendix_algebra, dual_numbers_algebra, perfect_fixtures, two_term, v1, v2
from gpdeform.homological import decompose, ext_dim, is_projective, string_module
from gpdeform.linalg import GF, GF2, QQ, Mat
from gpdeform.modules import direct_sum, find_isomorphism, indecomposable_projective, simple_module
from gpdeform.morita import presentations_equivalent

GF3 = GF(3)


def dual_lift(v, eps, coeff):
    """Lift of k over k[x]/(x²) with x acting as coeff·ε."""
    f = v.field
    return ModuleLift(v, eps, {"x": [Mat.zeros(f, 1, 1), Mat.from_rows(f, [[coeff]])]})


@pytest.fixture(scope="module")
def lam():
    return appendix_algebra(GF2)


# tangent spaces and enumeration -----------------------------------------------

def test_tangent_dims(lam):
    assert tangent_dim(v1(lam)) == 1
    assert tangent_dim(indecomposable_projective(lam, 1)) == 0
    assert tangent_dim(simple_module(dual_numbers_algebra(GF2), 0)) == 1


def test_enumeration_examples(lam):
    eps = dual_numbers(GF2)
    assert len(enumerate_deformations(simple_module(dual_numbers_algebra(GF2), 0), eps)) == 2
    assert len(enumerate_deformations(v1(lam), eps)) == 2
    p = indecomposable_projective(a2(GF2), 1)
    assert len(enumerate_deformations(p, eps)) == 1
    assert len(enumerate_deformations(p, truncated_ring(GF2, 3))) == 1


def test_enumeration_over_f3():
    k = simple_module(dual_numbers_algebra(GF3), 0)
    assert len(enumerate_deformations(k, dual_numbers(GF3))) == 3 ** tangent_dim(k)


def test_enumeration_guards(lam):
    with pytest.raises(DeformationError):
        enumerate_deformations(v1(appendix_algebra(QQ)), dual_numbers(QQ))
    with pytest.raises(DeformationError):
        enumerate_deformations(v2(lam), truncated_ring(GF2, 3))


@pytest.mark.parametrize("name", ["k[x]/x^2", "k[x]/x^3", "A2", "Kronecker", "Nakayama(2,2)"])
def test_class_count_matches_orbit_oracle(name):
    alg = sweep.small_algebras()[name]
    eps = dual_numbers(GF2)
    for r in sweep.sample_modules(alg, k=5, seed=3):
        if sum(r.dims[a.tgt] * r.dims[a.src] for a in alg.quiver.arrows) > 8:
            continue
        m = sweep.to_package(r)
        count = len(enumerate_deformations(m, eps))
        assert count == oracles.deformation_orbits(r) == 2 ** tangent_dim(m)


# lifts --------------------------------------------------------------------------

def test_lifts_isomorphic_examples(lam):
    k = simple_module(dual_numbers_algebra(GF3), 0)
    eps = dual_numbers(GF3)
    a, b = dual_lift(k, eps, 1), dual_lift(k, eps, 2)
    assert lifts_isomorphic(a, a)
    assert not lifts_isomorphic(a, b)
    hull = versal_presentation(v1(lam), 2)
    first = hull.lift.transfer(dual_numbers(GF2))
    assert not lifts_isomorphic(first, ModuleLift.trivial(v1(lam), dual_numbers(GF2)))


def test_lift_validation(lam):
    V = v1(lam)
    eps = dual_numbers(GF2)
    bad = {a: [m + Mat.identity(GF2, 1)] for a, m in V.action.items()}
    with pytest.raises(DeformationError):
        ModuleLift(V, eps, bad)
    with pytest.raises(DeformationError):
        ModuleLift(V, dual_numbers(QQ), {})


def test_nontrivial_lift_of_v1_extends_to_a_projective(field):
    alg = appendix_algebra(field)
    V = v1(alg)
    eps = dual_numbers(field)
    first = versal_presentation(V, 2).lift.transfer(eps)
    e2 = SmallExtension.truncation(field, 2)
    second = extend_lift(first.transfer(e2.target), e2)
    assert second is not None
    u = underlying_module(second)
    assert u.dims == (3, 3, 3)
    assert is_projective(u)
    parts = decompose(u)
    assert len(parts) == 1 and parts[0][1] == 1
    assert find_isomorphism(parts[0][0], indecomposable_projective(alg, 1))[0]
    assert extend_lift(second.transfer(SmallExtension.truncation(field, 3).target),
                       SmallExtension.truncation(field, 3)) is None


def test_projective_lifts_extend(lam):
    p = indecomposable_projective(lam, 0)
    for n in (1, 2, 3):
        e = SmallExtension.truncation(GF2, n)
        out = extend_lift(ModuleLift.trivial(p, e.target), e)
        assert out is not None
        assert lifts_isomorphic(out, ModuleLift.trivial(p, e.source))


def test_obstructed_lift_of_k():
    k = simple_module(dual_numbers_algebra(GF2), 0)
    e = SmallExtension.truncation(GF2, 2)
    assert extend_lift(dual_lift(k, e.target, 1), e) is None
    assert extend_lift(ModuleLift.trivial(k, e.target), e) is not None


def test_extend_requires_matching_ring(lam):
    e = SmallExtension.truncation(GF2, 2)
    with pytest.raises(DeformationError):
        extend_lift(ModuleLift.trivial(v1(lam), truncated_ring(GF2, 3)), e)


def test_reduction_recovers_the_input(lam):
    V = v2(lam)
    ld = LinearData(V)
    hull = versal_presentation(V, 2)
    lift = hull.lift.transfer(dual_numbers(GF2))
    e = SmallExtension.truncation(GF2, 2)
    up = extend_lift(lift.transfer(e.target), e, ld)
    assert up is not None
    assert lifts_isomorphic(up.reduce(e.target), lift.transfer(e.target))


def test_composite_extension_agrees_with_two_steps(field):
    alg = appendix_algebra(field)
    V = v1(alg)
    R = artin_quotient(field, ["t1", "t2"], ["t1^2", "t1*t2", "t2^2"], 2)
    R1 = artin_quotient(field, ["t1", "t2"], ["t1^2", "t2"], 2)
    R0 = artin_quotient(field, ["t1", "t2"], ["t1", "t2"], 2)
    base = ModuleLift.trivial(V, R0)
    direct = extend_lift_along(base, R)
    middle = extend_lift(base, SmallExtension(R1, R0))
    two_step = extend_lift(middle, SmallExtension(R, R1))
    assert direct is not None and two_step is not None
    assert lifts_isomorphic(direct, two_step)


def test_composite_extension_rejects_large_kernels(lam):
    src = truncated_ring(GF2, 4)
    base = ModuleLift.trivial(v1(lam), truncated_ring(GF2, 2))
    with pytest.raises(DeformationError):
        extend_lift_along(base, src)


# versal presentations -----------------------------------------------------------

def test_hull_examples(field):
    alg = appendix_algebra(field)
    for V in (v1(alg), v2(alg)):
        h = versal_presentation(V, 4)
        assert (h.nvars, h.relation_strings(), h.exact, h.universal_claimed) == (1, ["t^3"], True, True)
        assert h.ring_string() == "k[[t]]/(t^3)"
    p = versal_presentation(indecomposable_projective(alg, 1), 4)
    assert p.nvars == 0 and p.ring_string() == "k"
    k = simple_module(dual_numbers_algebra(field), 0)
    h = versal_presentation(k, 4)
    assert h.relation_strings() == ["t^2"] and h.exact


def test_hull_of_k_over_cubic_truncation():
    from gpdeform.algebra import truncated_polynomial
    k = simple_module(truncated_polynomial(GF2, 3), 0)
    assert versal_presentation(k, 4).relation_strings() == ["t^3"]


def test_perfect_summand_invariance_all_orders(lam):
    V = v1(lam)
    W = direct_sum([V, indecomposable_projective(lam, 1)])
    for order in (1, 2, 3, 4, 5):
        assert presentations_equivalent(versal_presentation(V, order), versal_presentation(W, order)) is True


def test_syzygy_invariance(field):
    alg = appendix_algebra(field)
    a, b = versal_presentation(v1(alg), 4), versal_presentation(v2(alg), 4)
    assert presentations_equivalent(a, b) in (True, None)
    assert a.relation_strings() == b.relation_strings()


@pytest.mark.parametrize("order", [2, 3, 4, 5])
def test_truncation_coherence(lam, order):
    for V in (v1(lam), simple_module(dual_numbers_algebra(GF2), 0), string_module(lam, ("γ1", "γ3"))):
        hi, lo = versal_presentation(V, order), versal_presentation(V, order - 1)
        assert hi.nvars == lo.nvars
        cut = ArtinLocalAlgebra(GF2, hi.names, order - 1, hi.relations)
        assert cut.same_ring(lo.ring)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["k[x]/x^2", "k[x]/x^3", "A2", "Kronecker", "Nakayama(2,2)", "k[x,y]/m^2"]), st.data())
def test_variable_count_is_tangent_dim(name, data):
    alg = sweep.small_algebras()[name]
    m = sweep.to_package(data.draw(st.sampled_from(sweep.sample_modules(alg))))
    h = versal_presentation(m, 2)
    assert h.nvars == tangent_dim(m) == ext_dim(m, m, 1)


def test_explicit_names(lam):
    h = versal_presentation(v1(lam), 4, names=["s"])
    assert h.relation_strings() == ["s^3"]


# complexes ----------------------------------------------------------------------

def test_stalk_complex_matches_module(lam):
    x = BoundedComplex.stalk(v1(lam), 0)
    c = complex_versal_presentation(x, 4)
    m = versal_presentation(v1(lam), 4)
    assert (c.nvars, c.relation_strings()) == (m.nvars, m.relation_strings())
    assert c.cohomology_check is True
    assert c.universal_claimed


def test_perfect_two_term_over_a2_is_rigid():
    A = a2(GF2)
    c = complex_versal_presentation(two_term(A, "a1"), 3)
    assert c.nvars == 0 and not c.universal_claimed


def test_shift_invariance_of_complex_hulls(lam):
    for x in (BoundedComplex.stalk(v1(lam), 0), two_term(lam, "γ2")):
        for i in (1, -2):
            a, b = complex_versal_presentation(x, 3), complex_versal_presentation(shift(x, i), 3)
            assert (a.nvars, a.relation_strings()) == (b.nvars, b.relation_strings())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_perfect_complexes_lift_up_to_order_four(lam, n):
    e = SmallExtension.truncation(GF2, n)
    for name, x in perfect_fixtures(lam, "γ1").items():
        up = extend_complex_lift(lift_complex(x, e.target), e)
        assert up is not None, name
