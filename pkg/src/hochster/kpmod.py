"""Finite-dimensional KP-modules: functors on a finite poset with maps pointing down.

A module assigns a space ``M_x`` to each element and, for each cover
``x < y``, a matrix realizing ``M_y -> M_x``.  Composites along longer
chains are computed on demand; path independence is checked at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping

import numpy as np

from .linalg import (
    QQ,
    Betti,
    CochainComplex,
    Field,
    as_matrix,
    cohomology_dims,
    identity,
    matmul,
    nullspace,
    rank,
)
from .poset import Poset, PosetError


class FunctorialityError(ValueError):
    pass


def _equal(a: np.ndarray, b: np.ndarray, f: Field) -> bool:
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    if f.p is None:
        return all(x == y for x, y in zip(a.flat, b.flat))
    return all(f.reduce(x) == f.reduce(y) for x, y in zip(a.flat, b.flat))


class KPModule:
    """Module over the incidence algebra of ``poset`` with coefficients in ``field``."""

    def __init__(
        self,
        poset: Poset,
        stalks: Mapping[Hashable, int],
        edges: Mapping[tuple[Hashable, Hashable], Any] | None = None,
        field: Field = QQ,
    ):
        self.poset = poset
        self.field = field
        self.stalks = {x: int(stalks.get(x, 0)) for x in poset.elements}
        for x in stalks:
            if x not in poset:
                raise PosetError(f"stalk given for unknown element {x!r}")
        if any(v < 0 for v in self.stalks.values()):
            raise ValueError("negative stalk dimension")
        covers = set(poset.hasse)
        self.edges: dict[tuple, np.ndarray] = {}
        edges = dict(edges or {})
        for (x, y), m in edges.items():
            if (x, y) not in covers:
                raise FunctorialityError(f"{x!r} < {y!r} is not a cover relation")
            m = as_matrix(m, self.stalks[x], self.stalks[y]) if not isinstance(m, np.ndarray) else m
            if m.shape != (self.stalks[x], self.stalks[y]):
                raise FunctorialityError(
                    f"edge {x!r}<{y!r} has shape {m.shape}, expected {(self.stalks[x], self.stalks[y])}"
                )
            self.edges[(x, y)] = m
        for x, y in poset.hasse:
            self.edges.setdefault((x, y), np.zeros((self.stalks[x], self.stalks[y]), dtype=np.int64))
        self._composite: dict[tuple, np.ndarray] = {}
        self._check_functorial()

    def __repr__(self) -> str:
        total = sum(self.stalks.values())
        return f"KPModule({len(self.poset)} elements, total dim {total}, {self.field})"

    def _check_functorial(self) -> None:
        # composites are stored only between nonzero stalks; any path through
        # a zero stalk contributes the zero map
        p = self.poset
        dims = self.stalks
        height = {x: len(p.below(x)) for x in p.elements}
        for z in p.elements:
            if dims[z]:
                self._composite[(z, z)] = identity(dims[z])
        for z in p.elements:
            if not dims[z]:
                continue
            for x in sorted(p.below(z), key=height.__getitem__, reverse=True):
                if not dims[x]:
                    continue
                first = None
                for y in p.upper_covers(x):
                    if not p.leq(y, z):
                        continue
                    if dims[y]:
                        comp = matmul(self.edges[(x, y)], self._composite[(y, z)], self.field)
                    else:
                        comp = np.zeros((dims[x], dims[z]), dtype=np.int64)
                    if first is None:
                        first = comp
                    elif not _equal(first, comp, self.field):
                        raise FunctorialityError(
                            f"two paths from {z!r} down to {x!r} give different maps"
                        )
                self._composite[(x, z)] = first

    def transition(self, x, y) -> np.ndarray:
        """Matrix of ``M_y -> M_x`` for ``x <= y``."""
        if not self.poset.leq(x, y):
            raise PosetError(f"{x!r} is not below {y!r}")
        hit = self._composite.get((x, y))
        if hit is None:
            return np.zeros((self.stalks[x], self.stalks[y]), dtype=np.int64)
        return hit

    def restrict(self, subset: Iterable[Hashable]) -> "KPModule":
        sub = self.poset.subposet(subset)
        return KPModule(
            sub,
            {x: self.stalks[x] for x in sub.elements},
            {(x, y): self.transition(x, y) for x, y in sub.hasse},
            self.field,
        )

    # -- limits ------------------------------------------------------------

    def _offsets(self, elements) -> dict:
        off, k = {}, 0
        for x in elements:
            off[x] = k
            k += self.stalks[x]
        return off

    def _limit_on(self, elements: list) -> tuple[int, np.ndarray, dict]:
        """Compatible families on a lower set; constraints on covers suffice there."""
        off = self._offsets(elements)
        total = sum(self.stalks[x] for x in elements)
        inside = set(elements)
        blocks = []
        for x, y in self.poset.hasse:
            if x in inside and y in inside and self.stalks[x]:
                row = np.zeros((self.stalks[x], total), dtype=object)
                row[:, off[y] : off[y] + self.stalks[y]] = self.edges[(x, y)]
                row[:, off[x] : off[x] + self.stalks[x]] -= identity(self.stalks[x])
                blocks.append(row)
        if total == 0:
            return 0, np.zeros((0, 0), dtype=object), off
        if not blocks:
            basis = nullspace(np.zeros((0, total), dtype=np.int64), self.field)
        else:
            basis = nullspace(np.vstack(blocks), self.field)
        return basis.shape[1], basis, off

    def limit(self) -> tuple[int, np.ndarray]:
        """Dimension and basis (columns over the concatenated stalks) of ``lim M``."""
        dim, basis, _ = self._limit_on(list(self.poset.elements))
        return dim, basis

    def limit_on_open(self, subset: Iterable[Hashable]) -> int:
        u = set(subset)
        if not self.poset.is_lower_set(u):
            raise PosetError("subset is not a lower set")
        return self._limit_on([x for x in self.poset.elements if x in u])[0]

    def lower_kernel_dim(self, x) -> int:
        """dim of the part of M_x killed by every map to a strictly smaller element."""
        below = self.poset.below(x)
        if not below or not self.stalks[x]:
            return self.stalks[x]
        stacked = np.vstack([self.transition(y, x) for y in below] + [np.zeros((0, self.stalks[x]), dtype=np.int64)])
        return self.stalks[x] - rank(stacked, self.field)


@dataclass(frozen=True)
class FlasqueResult:
    flasque: bool
    witness: tuple[frozenset, Hashable] | None = None

    def __bool__(self) -> bool:
        return self.flasque


def limit(m: KPModule) -> tuple[int, np.ndarray]:
    return m.limit()


def limit_on_open(m: KPModule, subset: Iterable[Hashable]) -> int:
    return m.limit_on_open(subset)


def _restriction_surjective(m: KPModule, u: frozenset, x) -> bool:
    # lim M|_U -> lim M|_{U-x} has kernel {v in M_x : M_yx v = 0 for y < x}
    rest = [y for y in m.poset.elements if y in u and y != x]
    top = [y for y in m.poset.elements if y in u]
    return m._limit_on(top)[0] - m.lower_kernel_dim(x) == m._limit_on(rest)[0]


def is_flasque(m: KPModule, method: str = "local", bound: int | None = None) -> FlasqueResult:
    """Surjectivity of restrictions between limits over open sets.

    ``method="local"`` checks ``M_x -> lim over (0, x)`` for every x, which is
    equivalent and polynomial.  ``method="enumerate"`` walks every open U and
    every maximal x of U; it is bounded by the open-set enumeration limit.
    """
    p = m.poset
    if method == "local":
        for x in p.linear_extension():
            u = frozenset(p.below(x, strict=False))
            if not _restriction_surjective(m, u, x):
                return FlasqueResult(False, (u, x))
        return FlasqueResult(True)
    if method == "enumerate":
        for u in p.lower_sets(bound):
            for x in u:
                if any(y in u for y in p.upper_covers(x)):
                    continue
                if not _restriction_surjective(m, u, x):
                    return FlasqueResult(False, (u, x))
        return FlasqueResult(True)
    raise ValueError(f"unknown method {method!r}")


def cochain_model(m: KPModule, max_degree: int) -> CochainComplex:
    """Normalized cochains: C^n is the sum of M_{x_0} over chains x_0 < ... < x_n."""
    p = m.poset
    by_len: list[list[tuple]] = [[] for _ in range(max_degree + 2)]
    for c in p.chains(max_length=max_degree + 2):
        if m.stalks[c[0]]:
            by_len[len(c) - 1].append(c)
    offsets = []
    dims = []
    for chains in by_len:
        off, k = {}, 0
        for c in chains:
            off[c] = k
            k += m.stalks[c[0]]
        offsets.append(off)
        dims.append(k)
    exact_int = all(e.dtype != object for e in m.edges.values())
    mats = []
    for n in range(max_degree + 1):
        out = np.zeros((dims[n + 1], dims[n]), dtype=np.int64 if exact_int else object)
        src = offsets[n]
        for c, r0 in offsets[n + 1].items():
            d0 = m.stalks[c[0]]
            tail = c[1:]
            if tail in src:
                c0 = src[tail]
                out[r0 : r0 + d0, c0 : c0 + m.stalks[c[1]]] += m.transition(c[0], c[1])
            for i in range(1, len(c)):
                face = c[:i] + c[i + 1 :]
                c0 = src[face]
                sign = -1 if i % 2 else 1
                out[r0 : r0 + d0, c0 : c0 + d0] += sign * identity(d0)
        mats.append(out)
    return CochainComplex(0, tuple(dims), tuple(mats))


def poset_cohomology(m: KPModule, max_degree: int) -> Betti:
    """dim Ext^n_{KP}(K, M) for 0 <= n <= max_degree."""
    h = cohomology_dims(cochain_model(m, max_degree), m.field)
    return Betti({n: h[n] for n in range(max_degree + 1)})


# -- constructions -----------------------------------------------------------


def constant_module(p: Poset, field: Field = QQ) -> KPModule:
    return KPModule(p, {x: 1 for x in p}, {e: [[1]] for e in p.hasse}, field)


def skyscraper(p: Poset, x, field: Field = QQ) -> KPModule:
    """One-dimensional stalk at ``x``, zero elsewhere."""
    if x not in p:
        raise PosetError(f"unknown poset element {x!r}")
    return KPModule(p, {x: 1}, {}, field)


def interval_module(p: Poset, x, field: Field = QQ) -> KPModule:
    """K on every y >= x with identity maps, zero elsewhere."""
    if x not in p:
        raise PosetError(f"unknown poset element {x!r}")
    up = set(p.above(x, strict=False))
    return upset_module(p, up, field)


def upset_module(p: Poset, up: set, field: Field = QQ) -> KPModule:
    return KPModule(
        p,
        {y: 1 for y in up},
        {(a, b): [[1]] for a, b in p.hasse if a in up and b in up},
        field,
    )


def degree_sheaf(fan, a, field: Field = QQ) -> KPModule:
    """Graded piece of degree ``a`` of the structure sheaf: K on cones containing ``a``."""
    if len(a) != fan.ambient_dim:
        raise ValueError(f"degree has length {len(a)}, ambient dimension is {fan.ambient_dim}")
    p = fan.face_poset()
    return upset_module(p, {c for c in fan.cones if c.contains(a)}, field)


# -- JSON --------------------------------------------------------------------


def module_from_json(data: dict[str, Any], field: Field = QQ) -> KPModule:
    """``{"poset": ..., "stalks": {"x": n}, "edges": {"x<y": [[...]]}}``, matrices row-major."""
    try:
        p = Poset.from_json(data["poset"])
        names = {str(x): x for x in p.elements}
        stalks = {names[k]: int(v) for k, v in data.get("stalks", {}).items()}
        edges = {}
        for key, mat in data.get("edges", {}).items():
            lo, hi = key.split("<")
            edges[(names[lo.strip()], names[hi.strip()])] = mat
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, (PosetError, FunctorialityError)):
            raise
        raise ValueError(f"malformed module JSON: {exc}") from None
    return KPModule(p, stalks, {k: _parse_matrix(v, stalks.get(k[0], 0), stalks.get(k[1], 0)) for k, v in edges.items()}, field)


def _parse_matrix(rows, r: int, c: int) -> np.ndarray:
    from fractions import Fraction

    rows = [[Fraction(x) if isinstance(x, str) else x for x in row] for row in rows]
    if r == 0 or c == 0:
        return np.zeros((r, c), dtype=np.int64)
    return as_matrix(rows, r, c)


def module_to_json(m: KPModule) -> dict[str, Any]:
    def enc(x):
        return int(x) if not hasattr(x, "denominator") or x.denominator == 1 else str(x)

    return {
        "poset": m.poset.to_json(),
        "stalks": {str(x): d for x, d in m.stalks.items() if d},
        "edges": {
            f"{x}<{y}": [[enc(v) for v in row] for row in mat.tolist()]
            for (x, y), mat in m.edges.items()
            if mat.size
        },
    }
