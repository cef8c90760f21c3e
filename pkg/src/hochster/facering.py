"""Graded local cohomology of toric face rings by the poset decomposition.

For a fan with face poset P, the degree-a piece of H^i_m(K[fan]) is the
reduced cohomology H~^{i - dim C - 1} of the open interval above C, where C
is the cone whose relative interior contains -a.  The top local cohomology of
each normal monoid ring K[C] is one-dimensional exactly in the degrees whose
negatives lie in relint(C), which is what picks out a single summand.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .cech import reisner_oracle
from .fan import Cone, Fan, FanError, complex_of_fan
from .linalg import QQ, Betti, Field
from .verdict import Verdict


def hilbert_value(fan: Fan, a: Sequence[int]) -> int:
    """1 when x^a is a basis monomial of the face ring, else 0."""
    return int(fan.carrier_cone(a) is not None)


def monomial_product(fan: Fan, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...] | None:
    """Exponent of x^a * x^b, or None when the product vanishes."""
    if not hilbert_value(fan, a) or not hilbert_value(fan, b):
        raise ValueError("both exponents must lie in the support of the fan")
    for c in fan.cones:
        if c.contains(a) and c.contains(b):
            return tuple(int(x) + int(y) for x, y in zip(a, b))
    return None


def krull_dimension(fan: Fan) -> int:
    return max(c.dim for c in fan.cones)


@dataclass(frozen=True)
class LocalCohomologyTable:
    """Per-cone contributions: ``per_cone[C][i]`` is dim H~^{i - dim C - 1}((C, 1); K)."""

    fan: Fan
    per_cone: dict[Cone, Betti]
    krull_dim: int
    field: Field = QQ
    interval_betti: dict[Cone, Betti] = dc_field(default_factory=dict, repr=False)

    def dim(self, i: int, a: Sequence[int]) -> int:
        a = tuple(int(x) for x in a)
        c = self.fan.carrier_cone(tuple(-x for x in a))
        if c is None:
            return 0
        return self.per_cone[c][i]

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {
                "cone": [list(r) for r in c.rays],
                "dim": c.dim,
                "betti": {str(i): v for i, v in self.per_cone[c].nonzero().items()},
            }
            for c in self.fan.cones
        ]

    def to_text(self) -> str:
        lines = [f"krull dimension {self.krull_dim} over {self.field}"]
        for c in self.fan.cones:
            nz = self.per_cone[c].nonzero()
            body = ", ".join(f"H^{i}: {v}" for i, v in nz.items()) or "0"
            rays = " ".join("(" + ",".join(map(str, r)) + ")" for r in c.rays) or "0"
            lines.append(f"cone {rays} [dim {c.dim}]: {body}")
        return "\n".join(lines)


def interval_cohomology(fan: Fan, c: Cone, f: Field = QQ) -> Betti:
    """Reduced cohomology of the order complex of (C, 1) in the face poset."""
    key = ("interval", c, f)
    hit = fan._cache.get(key)
    if hit is None:
        p = fan.face_poset()
        hit = p.open_interval(c).order_complex().reduced_cohomology(f)
        fan._cache[key] = hit
    return hit


def local_cohomology_by_cone(fan: Fan, f: Field = QQ) -> LocalCohomologyTable:
    key = ("table", f)
    hit = fan._cache.get(key)
    if hit is not None:
        return hit
    per_cone: dict[Cone, Betti] = {}
    intervals: dict[Cone, Betti] = {}
    for c in fan.cones:
        h = interval_cohomology(fan, c, f)
        intervals[c] = h
        per_cone[c] = Betti({q + c.dim + 1: v for q, v in h.items() if v})
    table = LocalCohomologyTable(fan, per_cone, krull_dimension(fan), f, intervals)
    fan._cache[key] = table
    return table


def local_cohomology_dim(fan: Fan, i: int, a: Sequence[int], f: Field = QQ) -> int:
    """dim_K H^i_m(K[fan])_a."""
    if len(a) != fan.ambient_dim:
        raise ValueError(f"degree has length {len(a)}, ambient dimension is {fan.ambient_dim}")
    return local_cohomology_by_cone(fan, f).dim(i, a)


def _vanishing_witnesses(fan: Fan, f: Field, skip_zero: bool) -> list[tuple[Cone, int, int]]:
    n = krull_dimension(fan)
    out = []
    for c in fan.cones:
        if skip_zero and c.dim == 0:
            continue
        allowed = n - c.dim - 1
        for p, v in sorted(interval_cohomology(fan, c, f).items()):
            if v and p != allowed:
                out.append((c, p, v))
    return out


def cm_test(fan: Fan, f: Field = QQ) -> Verdict:
    """Cohen-Macaulay iff every interval (C, 1) has cohomology only in degree dim - dim C - 1."""
    return Verdict.from_witnesses(_vanishing_witnesses(fan, f, skip_zero=False))


def buchsbaum_test(fan: Fan, f: Field = QQ) -> Verdict:
    """Same vanishing condition, over nonzero cones; only for fans of simplicial complexes."""
    if complex_of_fan(fan) is None:
        raise FanError("Buchsbaum criterion needs a fan built from a simplicial complex")
    return Verdict.from_witnesses(_vanishing_witnesses(fan, f, skip_zero=True))


@dataclass(frozen=True)
class StanleyCheck:
    order_complex_cm: bool
    ring_cm: bool


def stanley_check(fan: Fan, f: Field = QQ) -> StanleyCheck:
    """CM-ness of the order complex of the nonzero cones versus CM-ness of the face ring."""
    p = fan.face_poset()
    nonzero = p.subposet([c for c in fan.cones if c.dim > 0])
    oc = reisner_oracle(nonzero.order_complex(), f, first_only=True).result
    ring = cm_test(fan, f).result
    if oc and not ring:
        raise AssertionError(f"order complex is CM but the face ring is not: {fan.to_json()}")
    return StanleyCheck(oc, ring)
