import itertools

import pytest
from hypothesis import given, strategies as st

from hochster.cech import cech_cohomology, reisner_oracle
from hochster.corpus import RP2_FACETS, all_complexes, named_complexes
from hochster.facering import (
    buchsbaum_test,
    cm_test,
    hilbert_value,
    krull_dimension,
    local_cohomology_by_cone,
    local_cohomology_dim,
    monomial_product,
    stanley_check,
)
from hochster.fan import Cone, Fan, FanError, embed_degree, fan_of_complex, validate_fan
from hochster.linalg import GF2, QQ
from hochster.simplicial import SimplicialComplex, boundary_of_simplex, simplex

from oracles import in_cone
from test_simplicial import complexes

named = named_complexes()


def sigma(name):
    return fan_of_complex(named[name])


def test_hilbert_value():
    fan = fan_of_complex(simplex([1, 2]))
    assert hilbert_value(fan, (0, 0, 0)) == 1
    assert hilbert_value(fan, (1, 1, 2)) == 1
    assert in_cone([(1, 0, 1), (0, 1, 1)], (1, 1, 2))
    assert hilbert_value(fan, (-1, 0, 0)) == 0


def test_monomial_product():
    fan = fan_of_complex(simplex([1, 2]))
    assert monomial_product(fan, (1, 0, 1), (1, 0, 1)) == (2, 0, 2)
    assert monomial_product(fan, (0, 0, 0), (0, 1, 1)) == (0, 1, 1)
    rays = validate_fan([Cone([(1, 0)]), Cone([(0, 1)])])
    assert monomial_product(rays, (1, 0), (0, 1)) is None
    with pytest.raises(ValueError):
        monomial_product(rays, (1, 1), (1, 0))


def test_krull_dimension():
    assert krull_dimension(Fan(2, [Cone.zero(2)])) == 0
    assert krull_dimension(fan_of_complex(boundary_of_simplex([1, 2, 3]))) == 2
    mixed = validate_fan([Cone([(1, 0, 0)]), Cone([(0, 1, 0), (0, 0, 1)])])
    assert krull_dimension(mixed) == 2


def test_table_single_two_cone():
    fan = validate_fan([Cone([(1, 0), (0, 1)])])
    t = local_cohomology_by_cone(fan)
    top = Cone([(1, 0), (0, 1)])
    assert t.per_cone[top] == {2: 1}
    for c in fan.cones:
        if c != top:
            assert t.per_cone[c].nonzero() == {}
            assert t.interval_betti[c].nonzero() == {}


def test_table_two_points():
    t = local_cohomology_by_cone(sigma("two_points"))
    assert t.per_cone[Cone.zero(3)] == {1: 1}


def test_table_two_disjoint_edges():
    fan = sigma("two_disjoint_edges")
    t = local_cohomology_by_cone(fan)
    assert t.per_cone[Cone.zero(5)] == {1: 1}
    tops = [c for c in fan.cones if c.dim == 2]
    assert len(tops) == 2 and all(t.per_cone[c] == {2: 1} for c in tops)


def test_lch_two_points_degree_zero():
    fan = sigma("two_points")
    assert local_cohomology_dim(fan, 1, (0, 0, 0)) == 1
    assert cech_cohomology(named["two_points"], (0, 0))[1] == 1


def test_lch_full_edge_top_degree():
    fan = fan_of_complex(simplex([1, 2]))
    a = (-1, -1)
    assert local_cohomology_dim(fan, 2, embed_degree(a)) == 1 == cech_cohomology(simplex([1, 2]), a)[2]


def test_lch_below_carrier_dimension_vanishes():
    fan = sigma("hollow_tetrahedron")
    for a in itertools.product((-1, 0, 1), repeat=4):
        b = embed_degree(a)
        c = fan.carrier_cone(tuple(-x for x in b))
        if c is not None:
            assert all(local_cohomology_dim(fan, i, b) == 0 for i in range(c.dim))


def test_lch_dimension_mismatch():
    with pytest.raises(ValueError):
        local_cohomology_dim(sigma("point"), 0, (0,))


@pytest.mark.parametrize("n", range(4))
def test_hochster_agreement_small(n):
    for sc in all_complexes(n):
        fan = fan_of_complex(sc)
        for a in itertools.product((-1, 0, 1), repeat=n):
            oracle = cech_cohomology(sc, a)
            for i in range(n + 2):
                assert local_cohomology_dim(fan, i, embed_degree(a)) == oracle[i]


@given(complexes(5), st.data())
def test_hochster_agreement_random(sc, data):
    fan = fan_of_complex(sc)
    for _ in range(5):
        a = data.draw(st.tuples(*[st.integers(-2, 2) for _ in sc.vertices]))
        oracle = cech_cohomology(sc, a, GF2)
        for i in range(len(sc.vertices) + 2):
            assert local_cohomology_dim(fan, i, embed_degree(a), GF2) == oracle[i]


@given(complexes(5))
def test_maximal_cones_contribute_top(sc):
    fan = fan_of_complex(sc)
    t = local_cohomology_by_cone(fan)
    for c in fan.maximal_cones():
        assert t.per_cone[c][c.dim] == 1


@given(complexes(5), st.sampled_from([QQ, GF2]))
def test_cm_matches_reisner(sc, f):
    assert cm_test(fan_of_complex(sc), f).result == reisner_oracle(sc, f).result


@given(complexes(5))
def test_cm_implies_buchsbaum(sc):
    fan = fan_of_complex(sc)
    if cm_test(fan).result:
        assert buchsbaum_test(fan).result


def test_cm_examples():
    assert cm_test(sigma("hollow_triangle")).result
    assert cm_test(sigma("triangle")).result
    v = cm_test(sigma("two_disjoint_edges"))
    assert not v.result
    assert v.witnesses == ((Cone.zero(5), 0, 1),)


def test_cm_two_disjoint_edges_cech_corroboration():
    sc = named["two_disjoint_edges"]
    dims = {i for a in itertools.product((-1, 0, 1), repeat=4) for i, v in cech_cohomology(sc, a).items() if v}
    assert {1, 2} <= dims


def test_buchsbaum_examples():
    assert buchsbaum_test(sigma("two_disjoint_edges")).result
    assert buchsbaum_test(sigma("hollow_triangle")).result
    v = buchsbaum_test(sigma("edge_and_point"))
    assert not v.result
    point_cone = Cone([(0, 0, 1, 1)])
    assert v.witnesses == ((point_cone, -1, 1),)


def test_buchsbaum_needs_complex_fan():
    fan = validate_fan([Cone([(1, 0), (1, 1)]), Cone([(1, 1), (0, 1)])])
    with pytest.raises(FanError):
        buchsbaum_test(fan)
    # the same fan written through JSON in complex coordinates is recognized
    again = Fan.from_json(sigma("two_disjoint_edges").to_json())
    assert buchsbaum_test(again).result


def test_rp2_field_sensitivity():
    fan = fan_of_complex(SimplicialComplex(RP2_FACETS))
    assert cm_test(fan, QQ).result
    v = cm_test(fan, GF2)
    assert not v.result
    assert v.witnesses[0] == (Cone.zero(7), 1, 1)


def test_stanley_examples():
    s = stanley_check(fan_of_complex(simplex([1, 2, 3])))
    assert (s.order_complex_cm, s.ring_cm) == (True, True)
    s = stanley_check(sigma("two_disjoint_edges"))
    assert (s.order_complex_cm, s.ring_cm) == (False, False)


def test_stanley_general_fan():
    fan = validate_fan([Cone([(1, 0), (1, 1)]), Cone([(1, 1), (0, 1)]), Cone([(-1, 0)])])
    s = stanley_check(fan)
    assert not s.ring_cm


def test_table_text_and_json_are_stable():
    fan = sigma("two_points")
    t = local_cohomology_by_cone(fan)
    assert t.to_json() == local_cohomology_by_cone(fan_of_complex(named["two_points"])).to_json()
    assert "H^1: 1" in t.to_text()
