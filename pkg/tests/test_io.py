from __future__ import annotations

import json

import pytest

from gpdeform.artin import artin_quotient
from gpdeform.deform import ModuleLift, versal_presentation
from gpdeform.fixtures import appendix_algebra, perfect_fixtures, two_term, v1
from gpdeform.io import (InputError, dumps, read_algebra, read_bimodule, read_complex, read_lift, read_module, read_ring,
                         write_algebra, write_complex, write_lift, write_module, write_ring)
from gpdeform.linalg import GF2, QQ
from gpdeform.algebra import linear_quiver_algebra
from gpdeform.modules import find_isomorphism

from sweep import small_algebras


def _same_algebra(a, b) -> bool:
    return (a.dim == b.dim and a.n_vertices == b.n_vertices
            and [(x.name, x.src, x.tgt) for x in a.quiver.arrows] == [(x.name, x.src, x.tgt) for x in b.quiver.arrows])


@pytest.mark.parametrize("name", sorted(small_algebras()))
def test_algebra_round_trip(name):
    alg = small_algebras()[name]
    doc = json.loads(dumps(write_algebra(alg)))
    again = read_algebra(doc)
    assert _same_algebra(alg, again)
    assert write_algebra(again) == doc


def test_algebra_cache_returns_same_object():
    doc = {"nakayama": [8, 9, 9]}
    assert read_algebra(doc) is read_algebra(json.loads(json.dumps(doc)))
    assert read_algebra(doc) is not read_algebra(doc, QQ)


def test_module_round_trip(field):
    alg = appendix_algebra(field)
    m = v1(alg)
    again = read_module(json.loads(dumps(write_module(m))), alg)
    assert again.dims == m.dims
    assert find_isomorphism(m, again)[0]


def test_module_shorthands():
    alg = read_algebra({"nakayama": [8, 9, 9]})
    assert list(read_module({"projective": 1}, alg).dims) == [3, 3, 3]
    assert list(read_module({"sum": [{"simple": 0}, {"simple": 2}]}, alg).dims) == [1, 0, 1]
    assert sum(read_module({"regular": True}, alg).dims) == 26


@pytest.mark.parametrize("doc", [
    {"dims": [1, 1]},
    {"dims": [1, 1, 1], "action": {"δ": [[1]]}},
    {"dims": [1, 1, 1], "action": {"γ1": [[1, 0]]}},
    {"string": ["γ1", "γ1"]},
])
def test_module_errors(doc):
    alg = read_algebra({"nakayama": [8, 9, 9]})
    with pytest.raises(InputError):
        read_module(doc, alg)


def test_complex_round_trip():
    alg = linear_quiver_algebra(GF2, 3)
    for name, x in perfect_fixtures(alg, "a1").items():
        again = read_complex(json.loads(dumps(write_complex(x))), alg)
        assert again.degrees == x.degrees, name
        for n in x.degrees:
            assert again.term(n).dims == x.term(n).dims
            if n + 1 in x.degrees:
                assert all((p - q).is_zero() for p, q in zip(again.diff(n).maps, x.diff(n).maps))


def test_complex_rejects_dangling_differential():
    alg = linear_quiver_algebra(GF2, 3)
    doc = write_complex(two_term(alg, "a1"))
    doc["diffs"]["5"] = doc["diffs"].pop("-1")
    with pytest.raises(InputError):
        read_complex(doc, alg)


def test_ring_round_trip():
    R = artin_quotient(GF2, ["s", "t"], ["s^2", "s*t", "t^3"], 4)
    doc = json.loads(dumps(write_ring(R)))
    assert doc["basis"] == R.labels()
    again = read_ring(doc, GF2)
    assert R.same_ring(again)
    with pytest.raises(InputError):
        read_ring({"vars": ["t"], "order": 0}, GF2)


def test_lift_round_trip(field):
    alg = appendix_algebra(field)
    hull = versal_presentation(v1(alg), 3)
    lift = hull.lift
    doc = json.loads(dumps(write_lift(lift)))
    again = read_lift(doc, field)
    assert lift.ring.same_ring(again.ring)
    for a, lst in lift.coeffs.items():
        assert all((p - q).is_zero() for p, q in zip(lst, again.coeffs[a]))


def test_lift_rejects_unknown_monomial():
    doc = {"module": {"algebra": {"truncated_polynomial": 2}, "simple": 0},
           "ring": {"vars": ["t"], "relations": ["t^2"], "order": 2}, "coeffs": {"x": {"t^5": [[1]]}}}
    with pytest.raises(InputError):
        read_lift(doc)


def test_trivial_lift_writes_no_coefficients():
    alg = read_algebra({"truncated_polynomial": 2})
    m = read_module({"simple": 0}, alg)
    R = read_ring({"vars": ["t"], "relations": ["t^2"], "order": 2}, GF2)
    assert write_lift(ModuleLift.trivial(m, R))["coeffs"] == {"x": {}}


def test_bimodule_shorthands():
    k2 = {"truncated_polynomial": 2}
    reg = read_bimodule({"left": k2, "right": k2, "regular": True})
    free = read_bimodule({"left": k2, "right": k2, "free": True})
    both = read_bimodule({"left": k2, "right": k2, "sum": [{"regular": True}, {"free": True}]})
    assert sum(reg.rep.dims) == 2 and sum(free.rep.dims) == 4 and sum(both.rep.dims) == 6
    with pytest.raises(InputError):
        read_bimodule({"left": k2, "right": {"linear": 2}, "regular": True})


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": "γ"}) == dumps({"a": "γ", "b": 1})
    assert "γ" in dumps({"a": "γ"})
