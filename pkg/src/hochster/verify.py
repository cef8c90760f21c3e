"""Cross-checks between the decomposition engine and the independent oracles.

Every check returns a list of ``Mismatch`` records; an empty list means the
check passed.  A mismatch carries enough to reproduce the failing case.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable

from .cech import cech_cohomology, reisner_oracle
from .corpus import acceptance_complexes, random_posets, small_complexes
from .facering import (
    cm_test,
    hilbert_value,
    krull_dimension,
    local_cohomology_by_cone,
)
from .fan import Fan, embed_degree, fan_of_complex
from .kpmod import is_flasque, poset_cohomology, skyscraper, upset_module
from .linalg import QQ, Field
from .poset import Poset
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class Mismatch:
    check: str
    case: dict[str, Any]
    detail: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"check": self.check, "case": self.case, "detail": self.detail}

    def __str__(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, default=str)


def sign_box(n: int):
    return itertools.product((-1, 0, 1), repeat=n)


def hochster_agreement(sc: SimplicialComplex, f: Field = QQ) -> list[Mismatch]:
    """Engine at the embedded degree against the Cech oracle, all i and all sign patterns."""
    fan = fan_of_complex(sc)
    table = local_cohomology_by_cone(fan, f)
    n = len(sc.vertices)
    out = []
    for a in sign_box(n):
        oracle = cech_cohomology(sc, a, f)
        b = embed_degree(a)
        for i in range(n + 2):
            got = table.dim(i, b)
            if got != oracle[i]:
                out.append(Mismatch(
                    "hochster",
                    {"complex": sc.to_json(), "degree": list(a), "i": i, "field": str(f)},
                    {"engine": got, "oracle": oracle[i], "fan_degree": list(b)},
                ))
    return out


def cm_triangle(sc: SimplicialComplex, f: Field = QQ) -> list[Mismatch]:
    """cm_test, Reisner's criterion and Cech vanishing below the top degree must agree."""
    fan = fan_of_complex(sc)
    ring = cm_test(fan, f).result
    reisner = reisner_oracle(sc, f).result
    top = krull_dimension(fan)
    cech = all(
        v == 0
        for a in sign_box(len(sc.vertices))
        for i, v in cech_cohomology(sc, a, f).items()
        if i != top
    )
    if ring == reisner == cech:
        return []
    return [Mismatch(
        "cm_triangle",
        {"complex": sc.to_json(), "field": str(f)},
        {"cm_test": ring, "reisner": reisner, "cech": cech},
    )]


def skyscraper_identity(p: Poset, max_degree: int = 8, f: Field = QQ) -> list[Mismatch]:
    """Ext of the skyscraper at x against the shifted reduced cohomology of (x, 1)."""
    out = []
    for x in p.elements:
        ext = poset_cohomology(skyscraper(p, x, f), max_degree)
        h = p.open_interval(x).order_complex().reduced_cohomology(f)
        for n in range(max_degree + 1):
            if ext[n] != h[n - 1]:
                out.append(Mismatch(
                    "skyscraper",
                    {"poset": p.to_json(), "element": x, "n": n, "field": str(f)},
                    {"ext": ext[n], "interval": h[n - 1]},
                ))
    return out


def flasque_vanishing(fan: Fan, f: Field = QQ) -> list[Mismatch]:
    """Every degree sheaf on the sign box is flasque, with Ext concentrated in degree 0.

    Degrees with the same set of containing cones give the same module, so
    each such set is checked once.
    """
    p = fan.face_poset()
    top = krull_dimension(fan) + 1
    seen: dict[frozenset, tuple] = {}
    out = []
    for a in sign_box(fan.ambient_dim):
        up = frozenset(c for c in fan.cones if c.contains(a))
        if up not in seen:
            m = upset_module(p, set(up), f)
            seen[up] = (bool(is_flasque(m)), poset_cohomology(m, top))
        flasque, ext = seen[up]
        hv = hilbert_value(fan, a)
        higher = {n: v for n, v in ext.items() if n >= 1 and v}
        if not flasque or higher or ext[0] != hv:
            out.append(Mismatch(
                "flasque",
                {"fan": fan.to_json(), "degree": list(a), "field": str(f)},
                {"flasque": flasque, "ext": ext.nonzero(), "hilbert": hv},
            ))
    return out


def barycentric_invariance(sc: SimplicialComplex, f: Field = QQ) -> list[Mismatch]:
    """Link of each face against the order complex of its upper interval in the face poset."""
    p = sc.face_poset()
    out = []
    for face in p.elements:
        a = sc.link(face).reduced_cohomology(f)
        b = p.open_interval(face).order_complex().reduced_cohomology(f)
        if a != b:
            out.append(Mismatch(
                "barycentric",
                {"complex": sc.to_json(), "face": sorted(face), "field": str(f)},
                {"link": a.nonzero(), "interval": b.nonzero()},
            ))
    return out


# -- corpus runs -------------------------------------------------------------


CHECKS = {
    "hochster": hochster_agreement,
    "cm_triangle": cm_triangle,
    "barycentric": barycentric_invariance,
}


def corpus(name: str) -> list[SimplicialComplex]:
    if name == "small":
        return small_complexes()
    if name == "full":
        return acceptance_complexes()
    raise ValueError(f"unknown corpus {name!r}")


def _complex_job(args) -> list[Mismatch]:
    data, fields = args
    sc = SimplicialComplex.from_json(data)
    out = []
    for fname in fields:
        f = Field.parse(fname)
        for check in CHECKS.values():
            out.extend(check(sc, f))
        out.extend(flasque_vanishing(fan_of_complex(sc), f))
    return out


def _poset_job(data) -> list[Mismatch]:
    return skyscraper_identity(Poset.from_json(data))


def run_corpus(name: str, fields: Iterable[Field] = (QQ,), workers: int | None = None) -> list[Mismatch]:
    """Run every check over a corpus, fanned out to a process pool."""
    complexes = [sc.to_json() for sc in corpus(name)]
    posets = [p.to_json() for p in random_posets(10 if name == "small" else 50)]
    fnames = [str(f) for f in fields]
    workers = workers or max(1, min(4, os.cpu_count() or 1))
    if workers == 1:
        results = [_complex_job((d, fnames)) for d in complexes]
        results += [_poset_job(d) for d in posets]
    else:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_complex_job, [(d, fnames) for d in complexes], chunksize=8))
            results += list(pool.map(_poset_job, posets, chunksize=8))
    return [m for r in results for m in r]


__all__ = [
    "Mismatch",
    "barycentric_invariance",
    "cm_triangle",
    "flasque_vanishing",
    "hochster_agreement",
    "run_corpus",
    "sign_box",
    "skyscraper_identity",
]
