"""Test complexes, fans and posets shared by the verification suite and the CLI."""

from __future__ import annotations

import random
from itertools import combinations

from .fan import Cone, Fan, validate_fan
from .poset import Poset
from .simplicial import SimplicialComplex, boundary_of_simplex, simplex

RP2_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
]


def named_complexes() -> dict[str, SimplicialComplex]:
    return {
        "empty": SimplicialComplex([], []),
        "point": simplex([1]),
        "two_points": SimplicialComplex([[1], [2]]),
        "edge": simplex([1, 2]),
        "hollow_triangle": boundary_of_simplex([1, 2, 3]),
        "triangle": simplex([1, 2, 3]),
        "two_disjoint_edges": SimplicialComplex([[1, 2], [3, 4]]),
        "edge_and_point": SimplicialComplex([[1, 2], [3]]),
        "hollow_tetrahedron": boundary_of_simplex([1, 2, 3, 4]),
        "rp2": SimplicialComplex(RP2_FACETS),
    }


def general_fans() -> dict[str, Fan]:
    """Fans that are not of the form Sigma(Delta): non-simplicial, complete or mixed."""
    square = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
    return {
        "quadrant": validate_fan([Cone([(1, 0), (0, 1)])]),
        "projective_plane": validate_fan([
            Cone([(1, 0), (0, 1)]), Cone([(0, 1), (-1, -1)]), Cone([(-1, -1), (1, 0)]),
        ]),
        "hirzebruch": validate_fan([
            Cone([(1, 0), (0, 1)]), Cone([(0, 1), (-1, 2)]),
            Cone([(-1, 2), (0, -1)]), Cone([(0, -1), (1, 0)]),
        ]),
        "two_cones_and_ray": validate_fan([
            Cone([(1, 0), (1, 1)]), Cone([(1, 1), (0, 1)]), Cone([(-1, -1)]),
        ]),
        "ray_and_plane": validate_fan([Cone([(1, 0, 0)]), Cone([(0, 1, 0), (0, 0, 1)])]),
        "square_cone": validate_fan([Cone(square)]),
        "square_boundary": validate_fan([Cone([square[i], square[(i + 1) % 4]]) for i in range(4)]),
        "split_square": validate_fan([Cone(square[:3]), Cone([square[2], square[3], square[0]])]),
        "zero": Fan(2, [Cone.zero(2)]),
    }


def _boolean_lattice(n: int) -> Poset:
    masks = list(range(1 << n))
    rel = [(m, m | (1 << i)) for m in masks for i in range(n) if not m >> i & 1]
    return Poset(masks, rel)


def all_complexes(n: int) -> list[SimplicialComplex]:
    """Every non-void complex on the vertex set 1..n (vertices need not be faces)."""
    vertices = list(range(1, n + 1))
    out = []
    for down in _boolean_lattice(n).lower_sets(bound=1 << n):
        if down:
            out.append(SimplicialComplex._from_masks(vertices, down))
    return out


def complexes_up_to(n: int) -> list[SimplicialComplex]:
    return [sc for k in range(n + 1) for sc in all_complexes(k)]


def random_complexes(count: int, sizes=(5, 6), seed: int = 20240601, max_facet: int = 4) -> list[SimplicialComplex]:
    """Complexes generated by 2-5 random facets of 1..max_facet vertices."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.choice(list(sizes))
        vertices = list(range(1, n + 1))
        facets = [
            rng.sample(vertices, rng.randint(1, min(max_facet, n)))
            for _ in range(rng.randint(2, 5))
        ]
        out.append(SimplicialComplex(facets, vertices))
    return out


def random_posets(count: int, max_size: int = 8, seed: int = 7, density: float = 0.3) -> list[Poset]:
    """Random orders: pairs i < j of a shuffled labelling are related with probability ``density``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_size)
        labels = [f"p{i}" for i in range(n)]
        rng.shuffle(labels)
        rel = [(labels[i], labels[j]) for i, j in combinations(range(n), 2) if rng.random() < density]
        out.append(Poset(sorted(labels), rel))
    return out


def acceptance_complexes(random_count: int = 50) -> list[SimplicialComplex]:
    return complexes_up_to(4) + random_complexes(random_count)


def small_complexes() -> list[SimplicialComplex]:
    return complexes_up_to(3) + list(named_complexes().values())
