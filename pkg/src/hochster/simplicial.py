"""Simplicial complexes on indexed vertex lists, links and reduced cohomology."""

from __future__ import annotations

from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from . import _kernels
from .linalg import QQ, Betti, CochainComplex, Field, cohomology_dims
from .poset import Poset


class ComplexError(ValueError):
    pass


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def _popcount(m: int) -> int:
    return bin(m).count("1")


class SimplicialComplex:
    """Downward-closed face set; faces are bitmasks over ``vertices``.

    ``vertices`` may include labels that are not themselves faces.
    """

    __slots__ = ("vertices", "index", "faces", "_betti_cache")

    def __init__(self, facets: Iterable[Iterable[Hashable]] = (), vertices: Sequence[Hashable] | None = None):
        facets = [tuple(f) for f in facets]
        if vertices is None:
            seen: dict = {}
            for f in facets:
                for v in f:
                    seen.setdefault(v, None)
            try:
                vertices = sorted(seen)
            except TypeError:
                vertices = list(seen)
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ComplexError("duplicate vertex labels")
        faces = {0}
        for f in facets:
            m = self._mask(f)
            if m not in faces:
                faces.update(_submasks(m))
        self.faces = frozenset(faces)
        self._betti_cache: dict = {}

    @classmethod
    def _from_masks(cls, vertices: Sequence[Hashable], masks: Iterable[int]) -> "SimplicialComplex":
        """Trusted constructor: ``masks`` already downward closed."""
        obj = cls.__new__(cls)
        obj.vertices = tuple(vertices)
        obj.index = {v: i for i, v in enumerate(obj.vertices)}
        obj.faces = frozenset(masks)
        obj._betti_cache = {}
        if not obj.faces:
            raise ComplexError("the void complex is not representable")
        return obj

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[Hashable]], vertices: Sequence[Hashable] | None = None) -> "SimplicialComplex":
        """Build from an explicit face list, which must already be closed."""
        faces = [tuple(f) for f in faces]
        if not faces:
            raise ComplexError("the void complex is not representable")
        sc = cls(faces, vertices)
        given = {sc._mask(f) for f in faces}
        if given != set(sc.faces):
            raise ComplexError("face list is not closed under inclusion")
        return sc

    def _mask(self, face: Iterable[Hashable]) -> int:
        m = 0
        for v in face:
            try:
                m |= 1 << self.index[v]
            except KeyError:
                raise ComplexError(f"unknown vertex {v!r}") from None
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def sorted_labels(self, mask: int) -> tuple:
        return tuple(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def __contains__(self, face) -> bool:
        try:
            return self._mask(face) in self.faces
        except ComplexError:
            return False

    def __len__(self) -> int:
        return len(self.faces)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.face_sets() == other.face_sets() and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.face_sets()))

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={[list(f) for f in self.facets()]})"

    def face_sets(self) -> set[frozenset]:
        return {self.labels(m) for m in self.faces}

    @property
    def dim(self) -> int:
        return max(_popcount(m) for m in self.faces) - 1

    def facets(self) -> list[tuple]:
        maximal = [m for m in self.faces if not any(m != g and m & g == m for g in self.faces)]
        return sorted((self.sorted_labels(m) for m in maximal), key=lambda f: (len(f), [self.index[v] for v in f]))

    def f_vector(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m in self.faces:
            out[_popcount(m) - 1] = out.get(_popcount(m) - 1, 0) + 1
        return dict(sorted(out.items()))

    def link(self, face: Iterable[Hashable]) -> "SimplicialComplex":
        """``{G - F : F <= G in the complex}`` on the vertices outside F."""
        f = self._mask(face)
        if f not in self.faces:
            raise ComplexError(f"{sorted(self.labels(f), key=repr)} is not a face")
        keep = [i for i in range(len(self.vertices)) if not f >> i & 1]
        remap = {old: new for new, old in enumerate(keep)}
        masks = set()
        for g in self.faces:
            if g & f == f:
                rest = g & ~f
                m = 0
                for i in remap:
                    if rest >> i & 1:
                        m |= 1 << remap[i]
                masks.add(m)
        return SimplicialComplex._from_masks([self.vertices[i] for i in keep], masks)

    def cochain_complex(self) -> CochainComplex:
        """Augmented cochain complex; degree -1 is spanned by the empty face."""
        by_size: dict[int, list[int]] = {}
        for m in self.faces:
            by_size.setdefault(_popcount(m), []).append(m)
        top = max(by_size)
        groups = [sorted(by_size.get(k, [])) for k in range(top + 1)]
        nbits = len(self.vertices)
        mats = [_kernels.coboundary(groups[k], groups[k + 1], nbits) for k in range(top)]
        return CochainComplex(-1, tuple(len(g) for g in groups), tuple(mats))

    def reduced_cohomology(self, f: Field = QQ) -> Betti:
        hit = self._betti_cache.get(f)
        if hit is None:
            hit = cohomology_dims(self.cochain_complex(), f)
            self._betti_cache[f] = hit
        return Betti(hit)

    def face_poset(self) -> Poset:
        """All faces (including the empty face) under inclusion; labels are frozensets."""
        masks = sorted(self.faces, key=lambda m: (_popcount(m), m))
        labels = {m: self.labels(m) for m in masks}
        rel = []
        for g in masks:
            for i in range(len(self.vertices)):
                if g >> i & 1:
                    rel.append((labels[g & ~(1 << i)], labels[g]))
        return Poset([labels[m] for m in masks], rel)

    def induced(self, vertices: Iterable[Hashable]) -> "SimplicialComplex":
        keep = self._mask(vertices)
        return SimplicialComplex._from_masks(self.vertices, {m for m in self.faces if m & keep == m})

    # -- JSON --------------------------------------------------------------

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "SimplicialComplex":
        """``{"vertices": [...], "facets": [[...], ...]}``; ``vertices`` optional."""
        try:
            facets = [list(f) for f in data["facets"]]
            vertices = data.get("vertices")
        except (KeyError, TypeError) as exc:
            raise ComplexError(f"malformed complex JSON: {exc}") from None
        return cls(facets, vertices)

    def to_json(self) -> dict[str, Any]:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets()]}


def simplex(vertices: Sequence[Hashable]) -> SimplicialComplex:
    return SimplicialComplex([tuple(vertices)], vertices)


def boundary_of_simplex(vertices: Sequence[Hashable]) -> SimplicialComplex:
    vs = tuple(vertices)
    return SimplicialComplex([vs[:i] + vs[i + 1 :] for i in range(len(vs))], vs)


def euler_characteristic(sc: SimplicialComplex) -> int:
    """Reduced Euler characteristic, the empty face counted in dimension -1."""
    return sum((-1) ** (_popcount(m) - 1) for m in sc.faces)


def coboundary_matrix(sc: SimplicialComplex, k: int) -> np.ndarray:
    """Coboundary from (k-1)-faces to k-faces (k >= 0; k = 0 leaves the empty face)."""
    return sc.cochain_complex().matrices[k]
