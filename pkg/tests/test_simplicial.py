import pytest
from hypothesis import given, strategies as st

from hochster.corpus import RP2_FACETS, all_complexes, named_complexes
from hochster.linalg import GF2, QQ, Field
from hochster.poset import Poset
from hochster.simplicial import (
    ComplexError,
    SimplicialComplex,
    boundary_of_simplex,
    euler_characteristic,
    simplex,
)

from oracles import reduced_betti_by_ranks


@st.composite
def complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    vs = list(range(1, n + 1))
    facets = draw(st.lists(st.sets(st.sampled_from(vs), max_size=4), max_size=5))
    return SimplicialComplex([sorted(f) for f in facets], vs)


def test_closure_of_edge():
    assert SimplicialComplex([[1, 2]]).face_sets() == {frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})}


def test_two_points():
    assert SimplicialComplex([[1], [2]]).face_sets() == {frozenset(), frozenset({1}), frozenset({2})}


def test_no_facets_is_empty_face_only():
    assert SimplicialComplex([]).face_sets() == {frozenset()}


def test_void_complex_rejected():
    with pytest.raises(ComplexError):
        SimplicialComplex._from_masks([1], [])
    with pytest.raises(ComplexError):
        SimplicialComplex.from_faces([])


def test_from_faces_requires_closure():
    with pytest.raises(ComplexError):
        SimplicialComplex.from_faces([[], [1, 2]])


def test_link_edge():
    lk = simplex([1, 2]).link([1])
    assert lk.face_sets() == {frozenset(), frozenset({2})}


def test_link_of_empty_face():
    sc = boundary_of_simplex([1, 2, 3])
    assert sc.link([]) == sc


def test_link_hollow_triangle_vertex():
    lk = boundary_of_simplex([1, 2, 3]).link([1])
    assert lk.facets() == [(2,), (3,)]


def test_link_of_non_face():
    with pytest.raises(ComplexError):
        SimplicialComplex([[1], [2]]).link([1, 2])


def test_cohomology_of_empty_face_only():
    assert SimplicialComplex([]).reduced_cohomology() == {-1: 1}


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_simplex_is_acyclic(n):
    assert simplex(range(n)).reduced_cohomology().nonzero() == {}


def test_hollow_triangle():
    sc = boundary_of_simplex([1, 2, 3])
    faces = [tuple(sorted(f)) for f in sc.face_sets()]
    assert reduced_betti_by_ranks(faces) == {1: 1}
    assert sc.reduced_cohomology() == {1: 1}


def test_rp2_depends_on_field():
    sc = SimplicialComplex(RP2_FACETS)
    faces = [tuple(sorted(f)) for f in sc.face_sets()]
    assert reduced_betti_by_ranks(faces) == {}
    assert reduced_betti_by_ranks(faces, 2) == {1: 1, 2: 1}
    assert sc.reduced_cohomology(QQ).nonzero() == {}
    assert sc.reduced_cohomology(GF2).nonzero() == {1: 1, 2: 1}
    assert sc.reduced_cohomology(Field(3)).nonzero() == {}


@given(complexes(5), st.sampled_from([QQ, GF2]))
def test_cohomology_matches_rank_oracle(sc, f):
    faces = [tuple(sorted(x)) for x in sc.face_sets()]
    assert sc.reduced_cohomology(f).nonzero() == reduced_betti_by_ranks(faces, f.p)


@given(complexes())
def test_vanishing_range(sc):
    h = sc.reduced_cohomology()
    assert all(-1 <= i <= max(sc.dim, -1) for i, v in h.items() if v)
    assert (h[-1] != 0) == (sc.face_sets() == {frozenset()})


@given(complexes(), st.sampled_from([QQ, GF2]))
def test_euler_characteristic(sc, f):
    h = sc.reduced_cohomology(f)
    assert sum((-1) ** i * v for i, v in h.items()) == euler_characteristic(sc)
    assert euler_characteristic(sc) == sum((-1) ** (len(x) - 1) for x in sc.face_sets())


def test_face_poset_point():
    p = simplex([1]).face_poset()
    assert p.is_isomorphic(Poset(["0", "1"], [("0", "1")]))


def test_face_poset_edge():
    p = simplex([1, 2]).face_poset()
    assert len(p) == 4 and len(p.hasse) == 4
    assert p.leq(frozenset(), frozenset({1, 2}))


def test_face_poset_two_points():
    p = SimplicialComplex([[1], [2]]).face_poset()
    assert p.is_isomorphic(Poset(["b", "x", "y"], [("b", "x"), ("b", "y")]))


@given(complexes(5), st.sampled_from([QQ, GF2]))
def test_barycentric_invariance(sc, f):
    p = sc.face_poset()
    for face in p.elements:
        lk = sc.link(face).reduced_cohomology(f)
        assert lk == p.open_interval(face).order_complex().reduced_cohomology(f)


def test_json_roundtrip_with_ghost_vertex():
    sc = SimplicialComplex([[1, 2]], [1, 2, 3])
    again = SimplicialComplex.from_json(sc.to_json())
    assert again == sc and again.vertices == (1, 2, 3)


def test_json_malformed():
    with pytest.raises(ComplexError):
        SimplicialComplex.from_json({"vertices": [1]})


def test_complex_counts():
    # Dedekind numbers minus one: every down-closed family except the void one
    assert [len(all_complexes(n)) for n in range(5)] == [1, 2, 5, 19, 167]


def test_named_corpus_shapes():
    named = named_complexes()
    assert named["hollow_tetrahedron"].reduced_cohomology() == {2: 1}
    assert named["two_disjoint_edges"].reduced_cohomology() == {0: 1}
    assert named["empty"].reduced_cohomology() == {-1: 1}
