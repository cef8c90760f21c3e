import itertools

import pytest
from hypothesis import given, strategies as st

from hochster.cech import cech_cohomology, cech_cohomology_dim, cech_module_dim, cech_piece, reisner_oracle
from hochster.corpus import RP2_FACETS, named_complexes
from hochster.linalg import GF2, QQ, cohomology_dims
from hochster.simplicial import SimplicialComplex, boundary_of_simplex, simplex

from oracles import rank_by_minors
from test_simplicial import complexes

point = simplex([1])
two_points = SimplicialComplex([[1], [2]])


def test_module_dim_localized_point():
    assert cech_module_dim(point, [1], (-3,)) == 1


def test_module_dim_unlocalized_negative():
    assert cech_module_dim(point, [], (-1,)) == 0


def test_module_dim_non_face_kills():
    for a in itertools.product(range(-2, 3), repeat=2):
        assert cech_module_dim(two_points, [1, 2], a) == 0


def test_polynomial_ring_in_one_variable():
    assert cech_cohomology_dim(point, 1, (-1,)) == 1
    assert cech_cohomology_dim(point, 1, (0,)) == 0
    assert cech_cohomology_dim(point, 0, (0,)) == 0


def test_two_points_degree_zero():
    piece = cech_piece(two_points, (0, 0))
    c = piece.cochain_complex()
    assert c.dims[:3] == (1, 2, 0)
    assert rank_by_minors(c.matrices[0].tolist()) == 1
    assert cech_cohomology_dim(two_points, 1, (0, 0)) == 1


def test_top_cohomology_of_polynomial_ring():
    # H^n of K[x_1..x_n] lives exactly in degrees with every entry negative
    sc = simplex([1, 2, 3])
    for a in itertools.product((-2, -1, 0, 1), repeat=3):
        expected = int(all(x < 0 for x in a))
        assert cech_cohomology(sc, a) == ({3: 1} if expected else {})


@given(complexes(5), st.data())
def test_euler_characteristic_of_pieces(sc, data):
    a = data.draw(st.tuples(*[st.integers(-2, 2) for _ in sc.vertices]))
    piece = cech_piece(sc, a)
    h = cech_cohomology(sc, a)
    assert sum((-1) ** i * v for i, v in h.items()) == sum((-1) ** j * len(b) for j, b in enumerate(piece.basis))


@given(complexes(5), st.data())
def test_basis_conditions(sc, data):
    a = data.draw(st.tuples(*[st.integers(-2, 2) for _ in sc.vertices]))
    piece = cech_piece(sc, a)
    neg = {v for v, x in zip(sc.vertices, a) if x < 0}
    pos = {v for v, x in zip(sc.vertices, a) if x > 0}
    listed = {frozenset(piece.complex.labels(m)) for b in piece.basis for m in b}
    for r in range(len(sc.vertices) + 1):
        for f in itertools.combinations(sc.vertices, r):
            ok = neg <= set(f) and (set(f) | pos) in sc
            assert (frozenset(f) in listed) == ok
            assert cech_module_dim(sc, f, a) == int(ok)


@given(complexes(4), st.data())
def test_only_sign_pattern_matters(sc, data):
    a = data.draw(st.tuples(*[st.integers(-3, 3) for _ in sc.vertices]))
    sign = tuple((x > 0) - (x < 0) for x in a)
    assert cech_cohomology(sc, a) == cech_cohomology(sc, sign)


def test_reisner_hollow_triangle():
    assert reisner_oracle(boundary_of_simplex([1, 2, 3])).result


def test_reisner_two_disjoint_edges():
    v = reisner_oracle(named_complexes()["two_disjoint_edges"])
    assert not v.result
    assert (frozenset(), 0, 1) in v.witnesses


def test_reisner_rp2():
    sc = SimplicialComplex(RP2_FACETS)
    assert sc.reduced_cohomology(QQ).nonzero() == {}
    assert sc.reduced_cohomology(GF2).nonzero() == {1: 1, 2: 1}
    assert reisner_oracle(sc, QQ).result
    v = reisner_oracle(sc, GF2)
    assert not v.result and v.witnesses[0] == (frozenset(), 1, 1)


def test_piece_labels():
    piece = cech_piece(simplex([1, 2]), (-1, 0))
    assert piece.basis_labels(1) == [(1,)]
    assert piece.basis_labels(2) == [(1, 2)]


def test_degree_length_checked():
    with pytest.raises(ValueError):
        cech_piece(point, (0, 0))
