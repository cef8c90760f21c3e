"""Finite posets, Alexandrov open sets and order complexes."""

from __future__ import annotations

import os
import warnings
from typing import TYPE_CHECKING, Any, Hashable, Iterable, Sequence

import numpy as np

if TYPE_CHECKING:
    from .simplicial import SimplicialComplex

DEFAULT_OPEN_SET_BOUND = 20


def open_set_bound() -> int:
    """Largest poset size for which open sets are enumerated (``HOCHSTER_OPEN_SET_BOUND``)."""
    return int(os.environ.get("HOCHSTER_OPEN_SET_BOUND", DEFAULT_OPEN_SET_BOUND))


class PosetError(ValueError):
    pass


class Poset:
    """Immutable finite poset over hashable labels.

    Built from any generating relation (pairs ``(lower, upper)``); the order is
    its reflexive-transitive closure and ``hasse`` holds exactly the covers.
    """

    __slots__ = ("elements", "index", "_leq", "hasse", "_lower_covers", "_upper_covers", "_down", "_up")

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple[Hashable, Hashable]] = ()):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PosetError("duplicate poset elements")
        n = len(self.elements)
        leq = np.eye(n, dtype=bool)
        for x, y in relations:
            leq[self._idx(x), self._idx(y)] = True
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])
        lt = leq & ~np.eye(n, dtype=bool)
        if np.any(lt & lt.T):
            raise PosetError("relation has a cycle")
        self._leq = leq
        self._leq.setflags(write=False)
        lti = lt.astype(np.int64)
        cover = lt & ~((lti @ lti) > 0)
        self.hasse = tuple((self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(cover)))
        self._lower_covers = {x: [] for x in self.elements}
        self._upper_covers = {x: [] for x in self.elements}
        for x, y in self.hasse:
            self._lower_covers[y].append(x)
            self._upper_covers[x].append(y)
        els = self.elements
        self._down = [[els[j] for j in np.flatnonzero(lt[:, i])] for i in range(n)]
        self._up = [[els[j] for j in np.flatnonzero(lt[i, :])] for i in range(n)]

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], leq) -> "Poset":
        """Poset from a (possibly expensive) comparison callable."""
        els = list(elements)
        return cls(els, [(x, y) for x in els for y in els if x != y and leq(x, y)])

    def _idx(self, x) -> int:
        try:
            return self.index[x]
        except (KeyError, TypeError):
            raise PosetError(f"unknown poset element {x!r}") from None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        try:
            return x in self.index
        except TypeError:
            return False

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.hasse)} covers)"

    def leq(self, x, y) -> bool:
        return bool(self._leq[self._idx(x), self._idx(y)])

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def lower_covers(self, x) -> list:
        self._idx(x)
        return list(self._lower_covers[x])

    def upper_covers(self, x) -> list:
        self._idx(x)
        return list(self._upper_covers[x])

    def below(self, x, strict: bool = True) -> list:
        """Elements under ``x`` in the order they were given."""
        i = self._idx(x)
        out = list(self._down[i])
        if not strict:
            out.append(x)
        return out

    def above(self, x, strict: bool = True) -> list:
        i = self._idx(x)
        out = list(self._up[i])
        if not strict:
            out.insert(0, x)
        return out

    def minimal(self) -> list:
        return [x for x in self.elements if not self._lower_covers[x]]

    def maximal(self) -> list:
        return [x for x in self.elements if not self._upper_covers[x]]

    def linear_extension(self) -> list:
        """Elements sorted so that x < y implies x comes first."""
        height = self._leq.sum(axis=0)
        order = sorted(range(len(self)), key=lambda i: height[i])
        return [self.elements[i] for i in order]

    def subposet(self, subset: Iterable[Hashable]) -> "Poset":
        keep = set(subset)
        for x in keep:
            self._idx(x)
        els = [x for x in self.elements if x in keep]
        rel = [(x, y) for x in els for y in els if x != y and self.leq(x, y)]
        return Poset(els, rel)

    def open_interval(self, x) -> "Poset":
        """The subposet ``{y : x < y}``."""
        return self.subposet(self.above(x))

    def is_lower_set(self, subset: Iterable[Hashable]) -> bool:
        s = set(subset)
        return all(z in s for y in s for z in self.below(y))

    def lower_sets(self, bound: int | None = None) -> list[frozenset]:
        """All open sets of the Alexandrov topology (lower sets)."""
        bound = open_set_bound() if bound is None else bound
        if len(self) > bound:
            raise PosetError(f"poset has {len(self)} elements, open-set bound is {bound}")
        order = self.linear_extension()
        out: list[frozenset] = []

        down = {x: frozenset(self.below(x, strict=False)) for x in order}

        # top of the linear extension first; an element already forced in by
        # something above it has no choice left
        def rec(k: int, chosen: frozenset):
            if k < 0:
                out.append(chosen)
                return
            x = order[k]
            rec(k - 1, chosen)
            if x not in chosen:
                rec(k - 1, chosen | down[x])

        rec(len(order) - 1, frozenset())
        return sorted(out, key=lambda s: (len(s), sorted(self.index[y] for y in s)))

    def chains(self, max_length: int | None = None) -> list[tuple]:
        """All non-empty chains, each listed bottom-up."""
        order = self.linear_extension()
        pos = {x: k for k, x in enumerate(order)}
        ups = {x: sorted(self.above(x), key=pos.__getitem__) for x in order}
        out: list[tuple] = []
        stack = [(x,) for x in reversed(order)]
        while stack:
            c = stack.pop()
            out.append(c)
            if max_length is not None and len(c) >= max_length:
                continue
            for y in reversed(ups[c[-1]]):
                stack.append(c + (y,))
        return out

    def order_complex(self) -> "SimplicialComplex":
        from .simplicial import SimplicialComplex

        masks = {0}
        for c in self.chains():
            m = 0
            for x in c:
                m |= 1 << self.index[x]
            masks.add(m)
        return SimplicialComplex._from_masks(self.elements, masks)

    def is_graded(self) -> dict | None:
        """Rank function if all maximal chains have the same length, else None."""
        order = self.linear_extension()
        short: dict = {}
        long: dict = {}
        for x in order:
            lows = self._lower_covers[x]
            short[x] = 0 if not lows else 1 + min(short[y] for y in lows)
            long[x] = 0 if not lows else 1 + max(long[y] for y in lows)
        tops = self.maximal()
        if not tops:
            return {}
        if min(short[x] for x in tops) != max(long[x] for x in tops):
            return None
        return {x: long[x] for x in self.elements}

    def is_isomorphic(self, other: "Poset") -> bool:
        import networkx as nx

        a = nx.DiGraph()
        a.add_nodes_from(range(len(self)))
        a.add_edges_from((self.index[x], self.index[y]) for x, y in self.hasse)
        b = nx.DiGraph()
        b.add_nodes_from(range(len(other)))
        b.add_edges_from((other.index[x], other.index[y]) for x, y in other.hasse)
        return nx.is_isomorphic(a, b)

    # -- JSON --------------------------------------------------------------

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Poset":
        """``{"elements": [...], "hasse": [[lower, upper], ...]}``.

        Non-covering pairs are dropped with a warning naming them.
        """
        try:
            elements = [_label(x) for x in data["elements"]]
            pairs = [(_label(a), _label(b)) for a, b in data.get("hasse", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise PosetError(f"malformed poset JSON: {exc}") from None
        p = cls(elements, pairs)
        covers = set(p.hasse)
        redundant = sorted({pr for pr in pairs if pr not in covers}, key=repr)
        if redundant:
            warnings.warn(f"dropping non-covering hasse pairs: {redundant}", stacklevel=2)
        return p

    def to_json(self) -> dict[str, Any]:
        return {"elements": list(self.elements), "hasse": [list(e) for e in self.hasse]}


def _label(x):
    if isinstance(x, list):
        return tuple(_label(y) for y in x)
    if isinstance(x, (str, int)):
        return x
    raise ValueError(f"unsupported label {x!r}")
