from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpdeform.artin import (ArtinLocalAlgebra, RingError, SmallExtension, artin_quotient, dual_numbers,
                            ground_ring, monomials_upto, parse_poly, poly_str, truncated_ring)
from gpdeform.linalg import GF, GF2, QQ


def test_dual_numbers_from_relation():
    for order in (1, 2, 5):
        R = artin_quotient(QQ, ["t"], ["t^2"], order)
        assert R.dim == 2 and R.labels() == ["1", "t"]
        assert R.same_ring(dual_numbers(QQ))


def test_truncated_cubic():
    R = artin_quotient(GF2, ["t"], ["t^3"], 4)
    assert R.dim == 3
    assert R.same_ring(truncated_ring(GF2, 3))


def test_no_variables_is_the_field():
    R = artin_quotient(QQ, [], [], 3)
    assert R.dim == 1
    assert ground_ring(QQ).dim == 1


def test_two_variable_quotients():
    R = artin_quotient(GF2, ["t1", "t2"], ["t1^2", "t1*t2", "t2^2"], 3)
    assert R.dim == 3
    S = artin_quotient(QQ, ["x", "y"], ["x^2 - y^2", "x*y"], 4)
    # 1, x, y, x^2 (= y^2); degree three vanishes
    assert S.dim == 4


def test_nonlocal_relation_rejected():
    with pytest.raises(RingError):
        artin_quotient(QQ, ["t"], ["1 + t"], 2)


def test_maximal_ideal_is_nilpotent():
    R = artin_quotient(GF(3), ["a", "b"], ["a^2 - b^3"], 4)
    assert R.std[0] == (0, 0)
    assert all(sum(e) > 0 for e in R.std[1:])
    # any product of order+1 elements of m vanishes
    m = [np.eye(R.dim, dtype=R.mult.dtype)[i] for i in range(1, R.dim)]
    for x in m:
        acc = x
        for _ in range(R.order):
            acc = R.multiply(acc, x)
        assert not np.any(acc != 0)


def test_multiplication_is_commutative_and_associative():
    R = artin_quotient(QQ, ["x", "y"], ["x^2 - y^2", "x*y"], 4)
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c = (np.array([QQ(int(v)) for v in rng.integers(-3, 4, R.dim)], dtype=object) for _ in range(3))
        assert list(R.multiply(a, b)) == list(R.multiply(b, a))
        assert list(R.multiply(R.multiply(a, b), c)) == list(R.multiply(a, R.multiply(b, c)))


def test_poly_round_trip():
    names = ["t1", "t2"]
    p = parse_poly("t1^2 - 3*t1*t2 + t2^3", names, QQ)
    # terms print in descending graded order
    assert poly_str(p, names, QQ) == "t2^3 - 3*t1*t2 + t1^2"
    assert parse_poly(poly_str(p, names, QQ), names, QQ) == p


def test_monomials_in_graded_order():
    ms = monomials_upto(2, 2)
    assert ms[0] == (0, 0)
    assert [sum(e) for e in ms] == sorted(sum(e) for e in ms)
    assert len(ms) == 6


# small extensions ---------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_truncations_are_small(n):
    e = SmallExtension.truncation(GF2, n)
    assert e.source.dim == n + 1 and e.target.dim == n
    assert e.projection.rows == n and e.projection.cols == n + 1


def test_extension_with_two_dimensional_kernel_is_rejected():
    src = artin_quotient(GF2, ["t"], ["t^4"], 3)
    tgt = artin_quotient(GF2, ["t"], ["t^2"], 3)
    with pytest.raises(RingError, match="dimension 2"):
        SmallExtension(src, tgt)


def test_extension_needs_a_quotient():
    src = artin_quotient(QQ, ["t"], ["t^2"], 2)
    tgt = artin_quotient(QQ, ["t"], ["t^3"], 2)
    with pytest.raises(RingError):
        SmallExtension(src, tgt)


def test_two_variable_small_extension():
    src = artin_quotient(GF2, ["t1", "t2"], ["t1^2", "t1*t2", "t2^2"], 2)
    mid = artin_quotient(GF2, ["t1", "t2"], ["t1^2", "t2"], 2)
    e = SmallExtension(src, mid)
    assert e.socle[src.std_index[(0, 1)]] != 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4))
def test_same_ring_reflexive_and_describes(nvars, order):
    names = [f"t{i + 1}" for i in range(nvars)]
    R = artin_quotient(GF2, names, [f"{names[0]}^2"], order)
    S = ArtinLocalAlgebra(GF2, names, order, R.ideal_polys())
    assert R.same_ring(S) and S.same_ring(R)
    assert R.dim == len(R.labels())
    assert isinstance(R.describe(), str)
