"""Rational pointed cones and fans in exact integer arithmetic.

Facets come from an incremental double-description pass; faces are tight
sets of extreme rays.  Fan validation checks that relative interiors of
distinct cones are disjoint, decided by Fourier-Motzkin elimination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Sequence

import numpy as np

from .linalg import QQ, nullspace, rank
from .poset import Poset

Vector = tuple[int, ...]


class ConeError(ValueError):
    pass


class NotPointedError(ConeError):
    pass


class FanError(ValueError):
    def __init__(self, message: str, pair: tuple["Cone", "Cone"] | None = None):
        super().__init__(message)
        self.pair = pair


def primitive(v: Iterable) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Primitive integer basis of {x : <r, x> = 0 for all rows}."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    ker = nullspace(np.array(rows, dtype=object).reshape(len(rows), n), QQ)
    return [primitive(ker[:, k]) for k in range(ker.shape[1])]


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return rank(np.array(vectors, dtype=np.int64), QQ)


class Cone:
    """Pointed rational cone spanned by integer generators in Z^d.

    Equality and hashing go through the set of primitive extreme rays.
    """

    def __init__(self, generators: Iterable[Sequence[int]], ambient_dim: int | None = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise ConeError("ambient dimension needed for a cone without generators")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise ConeError("generator length differs from ambient dimension")
        self.ambient_dim = int(ambient_dim)
        uniq: list[Vector] = []
        for g in gens:
            p = primitive(g)
            if any(p) and p not in uniq:
                uniq.append(p)
        self.generators: tuple[Vector, ...] = tuple(uniq)
        self.dim = _rank(uniq)
        self.equations: tuple[Vector, ...] = tuple(_integer_kernel(uniq, self.ambient_dim))
        self.facets: tuple[Vector, ...] = tuple(_double_description(uniq, self.dim, self.ambient_dim))
        self.rays: tuple[Vector, ...] = tuple(
            sorted(g for g in uniq if _rank([h for h in self.facets if dot(h, g) == 0]) == self.dim - 1)
        )
        self.key = frozenset(self.rays)
        self._hash = hash((self.ambient_dim, self.key))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Cone":
        return cls([], ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.key == other.key

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.dim, self.rays)

    def __lt__(self, other: "Cone"):
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        if not self.rays:
            return f"Cone(0 in R^{self.ambient_dim})"
        return f"Cone({[list(r) for r in self.rays]})"

    def _check(self, a: Sequence[int]) -> None:
        if len(a) != self.ambient_dim:
            raise ConeError(f"degree has length {len(a)}, ambient dimension is {self.ambient_dim}")

    def in_span(self, a: Sequence[int]) -> bool:
        self._check(a)
        return all(dot(e, a) == 0 for e in self.equations)

    def contains(self, a: Sequence[int]) -> bool:
        return self.in_span(a) and all(dot(h, a) >= 0 for h in self.facets)

    def relint_contains(self, a: Sequence[int]) -> bool:
        """``a`` in the relative interior (for the zero cone: ``a == 0``)."""
        if self.dim == 0:
            self._check(a)
            return not any(a)
        return self.in_span(a) and all(dot(h, a) > 0 for h in self.facets)

    def tight_rays(self, h: Vector) -> frozenset:
        return frozenset(r for r in self.rays if dot(h, r) == 0)

    def is_face_of(self, other: "Cone") -> bool:
        """Face test inside a common fan: ray containment plus a tight supporting facet set."""
        if not self.key <= other.key:
            return False
        if self.key == other.key:
            return True
        tight = other.key
        for h in other.facets:
            if self.key <= other.tight_rays(h):
                tight = tight & other.tight_rays(h)
        return tight == self.key

    def faces(self) -> list["Cone"]:
        """All faces including the zero cone and the cone itself, sorted by dimension."""
        return [Cone(sorted(s), self.ambient_dim) for s in sorted(self._face_ray_sets(), key=lambda s: (len(s), sorted(s)))]

    def _face_ray_sets(self) -> set[frozenset]:
        tights = [self.tight_rays(h) for h in self.facets]
        found = {self.key}
        frontier = [self.key]
        while frontier:
            nxt = []
            for s in frontier:
                for t in tights:
                    u = s & t
                    if u != s and u not in found:
                        found.add(u)
                        nxt.append(u)
            frontier = nxt
        found.add(frozenset())
        return found


def _initial_facets(basis: Sequence[Vector], d: int) -> list[Vector]:
    """Facet normals of the simplicial cone on ``basis``, taken inside its span."""
    b = np.array(basis, dtype=object).T  # d x r
    gram = (b.T @ b).tolist()
    r = len(basis)
    inv = _rational_inverse(gram)
    normals = []
    for j in range(r):
        col = [sum(b[i, k] * inv[k][j] for k in range(r)) for i in range(d)]
        normals.append(primitive(col))
    return normals


def _rational_inverse(m: list[list]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _double_description(gens: list[Vector], r: int, d: int) -> list[Vector]:
    if r == 0:
        return []
    basis: list[Vector] = []
    for g in gens:
        if _rank(basis + [g]) > len(basis):
            basis.append(g)
        if len(basis) == r:
            break
    facets = _initial_facets(basis, d)
    added = list(basis)
    for g in gens:
        if g in added:
            continue
        vals = [dot(h, g) for h in facets]
        if all(v >= 0 for v in vals):
            added.append(g)
            continue
        if all(v <= 0 for v in vals):
            # -g lies in the current cone: adding g creates a line
            raise NotPointedError(f"cone is not pointed (generator {list(g)})")
        pos = [h for h, v in zip(facets, vals) if v > 0]
        neg = [h for h, v in zip(facets, vals) if v < 0]
        new = [h for h, v in zip(facets, vals) if v >= 0]
        for hp in pos:
            tp = {x for x in added if dot(hp, x) == 0}
            vp = dot(hp, g)
            for hn in neg:
                common = [x for x in added if x in tp and dot(hn, x) == 0]
                if _rank(common) != r - 2:
                    continue
                vn = dot(hn, g)
                h = primitive(vp * a - vn * b for a, b in zip(hn, hp))
                if h not in new:
                    new.append(h)
        facets = new
        added.append(g)
    if _rank(facets) != r:
        raise NotPointedError("cone is not pointed")
    return sorted(facets)


def _strict_system_feasible(rows: list[list[int]]) -> bool:
    """Is there y with <row, y> > 0 for every row?  Fourier-Motzkin elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return True
    nvars = len(rows[0])
    for j in range(nvars):
        norm = []
        for r in rows:
            if not any(r):
                return False
            g = math.gcd(*r)
            norm.append(tuple(x // g for x in r))
        rows = list(dict.fromkeys(norm))
        pos = [r for r in rows if r[j] > 0]
        neg = [r for r in rows if r[j] < 0]
        zero = [r for r in rows if r[j] == 0]
        if not pos or not neg:
            # the variable can be pushed to dominate every row it touches
            rows = [list(r) for r in zero]
        else:
            rows = [list(r) for r in zero]
            for p in pos:
                for n in neg:
                    rows.append([-n[j] * a + p[j] * b for a, b in zip(p, n)])
        if not rows:
            return True
    return not rows or all(any(r) for r in rows)


def relints_meet(c1: Cone, c2: Cone) -> bool:
    """Do the relative interiors of two cones intersect?"""
    if c1.dim == 0 or c2.dim == 0:
        return c1.dim == 0 and c2.dim == 0
    w = _integer_kernel(list(c1.equations) + list(c2.equations), c1.ambient_dim)
    if not w:
        return False
    rows = [[dot(h, b) for b in w] for h in c1.facets + c2.facets]
    return _strict_system_feasible(rows)


class Fan:
    """Face-closed collection of pointed cones with pairwise disjoint relative interiors."""

    def __init__(self, ambient_dim: int, cones: Iterable[Cone], source_complex=None):
        self.ambient_dim = int(ambient_dim)
        self.cones: tuple[Cone, ...] = tuple(sorted(set(cones)))
        self.source_complex = source_complex
        self._cache: dict = {}

    def __iter__(self):
        return iter(self.cones)

    def __len__(self) -> int:
        return len(self.cones)

    def __contains__(self, c) -> bool:
        return c in set(self.cones)

    def __repr__(self) -> str:
        return f"Fan(R^{self.ambient_dim}, {len(self.cones)} cones)"

    @property
    def zero_cone(self) -> Cone:
        return self.cones[0]

    def maximal_cones(self) -> list[Cone]:
        return [c for c in self.cones if not any(c != o and c.key < o.key for o in self.cones)]

    def face_poset(self) -> Poset:
        """Cones under inclusion; the zero cone is the terminal element."""
        p = self._cache.get("poset")
        if p is None:
            rel = [(a, b) for a in self.cones for b in self.cones if a.key < b.key]
            p = Poset(self.cones, rel)
            self._cache["poset"] = p
        return p

    def carrier_cone(self, a: Sequence[int]) -> Cone | None:
        """The unique cone with ``a`` in its relative interior, or None off the support."""
        if len(a) != self.ambient_dim:
            raise ConeError(f"degree has length {len(a)}, ambient dimension is {self.ambient_dim}")
        hits = [c for c in self.cones if c.relint_contains(a)]
        if len(hits) > 1:
            raise FanError(f"{len(hits)} carrier cones for {list(a)}", (hits[0], hits[1]))
        return hits[0] if hits else None

    def support_contains(self, a: Sequence[int]) -> bool:
        return self.carrier_cone(a) is not None

    def to_json(self) -> dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "cones": [[list(r) for r in c.rays] for c in self.maximal_cones() if c.dim > 0],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Fan":
        """``{"ambient_dim": d, "cones": [[[g11, ..., g1d], ...], ...]}``."""
        try:
            d = int(data["ambient_dim"])
            cones = [Cone(gens, d) for gens in data["cones"]]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, (ConeError,)):
                raise
            raise FanError(f"malformed fan JSON: {exc}") from None
        return validate_fan(cones, d)


def cone_faces(c: Cone) -> list[Cone]:
    return c.faces()


def validate_fan(cones: Iterable[Cone], ambient_dim: int | None = None) -> Fan:
    """Materialize all faces and check the fan axioms; raises FanError naming a bad pair."""
    cones = list(cones)
    if ambient_dim is None:
        if not cones:
            raise FanError("ambient dimension needed for an empty cone list")
        ambient_dim = cones[0].ambient_dim
    if any(c.ambient_dim != ambient_dim for c in cones):
        raise FanError("cones live in different ambient spaces")
    allc: set[Cone] = {Cone.zero(ambient_dim)}
    for c in cones:
        allc.update(c.faces())
    ordered = sorted(allc)
    for c1, c2 in combinations(ordered, 2):
        if relints_meet(c1, c2):
            raise FanError(f"intersection of {c1} and {c2} is not a common face", (c1, c2))
    return Fan(ambient_dim, ordered)


def embed_degree(a: Sequence[int]) -> Vector:
    """Stanley-Reisner degree in Z^n to the matching lattice point (a, sum a) in Z^{n+1}."""
    return tuple(int(x) for x in a) + (sum(int(x) for x in a),)


def fan_of_complex(sc) -> Fan:
    """Fan in R^{n+1}: vertex i of the complex becomes the ray e_i + e_{n+1}."""
    n = len(sc.vertices)
    d = n + 1

    def gen(i: int) -> Vector:
        return tuple(1 if j in (i, n) else 0 for j in range(d))

    cones = [Cone([gen(i) for i in range(n) if m >> i & 1], d) for m in sc.faces]
    return Fan(d, cones, source_complex=sc)


def cone_of_face(fan: Fan, face: Iterable) -> Cone:
    sc = fan.source_complex
    if sc is None:
        raise FanError("fan does not come from a simplicial complex")
    n = len(sc.vertices)
    idx = [sc.index[v] for v in face]
    return Cone([tuple(1 if j in (i, n) else 0 for j in range(n + 1)) for i in idx], n + 1)


def complex_of_fan(fan: Fan):
    """Recover the complex when the fan is exactly of the form fan_of_complex(...), else None."""
    from .simplicial import SimplicialComplex

    if fan.source_complex is not None:
        return fan.source_complex
    d = fan.ambient_dim
    n = d - 1
    units = {tuple(1 if j in (i, n) else 0 for j in range(d)): i for i in range(n)}
    masks = set()
    for c in fan.cones:
        if any(r not in units for r in c.rays) or len(c.rays) != c.dim:
            return None
        m = 0
        for r in c.rays:
            m |= 1 << units[r]
        masks.add(m)
    return SimplicialComplex._from_masks(list(range(1, d)), masks)
