"""Brute-force local cohomology of Stanley-Reisner rings from graded Cech pieces.

The Cech complex on the variables x_1..x_n has C^j = sum over |F| = j of the
localizations K[Delta]_{x_F}.  In degree a the localization at F is K (spanned
by x^a) when every negative coordinate of a lies in F and F together with the
positive support of a is a face, and 0 otherwise.  This module is independent
of the poset machinery and serves as ground truth for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from . import _kernels
from .linalg import QQ, Betti, CochainComplex, Field, cohomology_dims
from .simplicial import SimplicialComplex
from .verdict import Verdict


def _support_masks(sc: SimplicialComplex, a: Sequence[int]) -> tuple[int, int]:
    if len(a) != len(sc.vertices):
        raise ValueError(f"degree has length {len(a)}, complex has {len(sc.vertices)} vertices")
    neg = pos = 0
    for i, x in enumerate(a):
        if x < 0:
            neg |= 1 << i
        elif x > 0:
            pos |= 1 << i
    return neg, pos


def _admissible(sc: SimplicialComplex, f: int, neg: int, pos: int) -> bool:
    return f & neg == neg and (f | pos) in sc.faces


def cech_module_dim(sc: SimplicialComplex, face: Iterable[Hashable], a: Sequence[int]) -> int:
    """dim of the degree-a piece of K[Delta] localized at the product of x_i, i in ``face``."""
    neg, pos = _support_masks(sc, a)
    return int(_admissible(sc, sc._mask(face), neg, pos))


@dataclass(frozen=True)
class CechPiece:
    complex: SimplicialComplex
    degree: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]  # bitmasks of admissible F, per cardinality

    def cochain_complex(self) -> CochainComplex:
        n = len(self.complex.vertices)
        mats = [_kernels.coboundary(self.basis[j], self.basis[j + 1], n) for j in range(n)]
        return CochainComplex(0, tuple(len(b) for b in self.basis), tuple(mats))

    def basis_labels(self, j: int) -> list[tuple]:
        return [self.complex.sorted_labels(m) for m in self.basis[j]]


def cech_piece(sc: SimplicialComplex, a: Sequence[int]) -> CechPiece:
    neg, pos = _support_masks(sc, a)
    n = len(sc.vertices)
    basis: list[list[int]] = [[] for _ in range(n + 1)]
    # admissible F are faces themselves (F is contained in F | pos)
    for f in sc.faces:
        if _admissible(sc, f, neg, pos):
            basis[bin(f).count("1")].append(f)
    return CechPiece(sc, tuple(int(x) for x in a), tuple(tuple(sorted(b)) for b in basis))


def cech_cohomology(sc: SimplicialComplex, a: Sequence[int], f: Field = QQ) -> Betti:
    """All i of dim H^i_m(K[Delta])_a."""
    return cohomology_dims(cech_piece(sc, a).cochain_complex(), f)


def cech_cohomology_dim(sc: SimplicialComplex, i: int, a: Sequence[int], f: Field = QQ) -> int:
    return cech_cohomology(sc, a, f)[i]


def reisner_oracle(sc: SimplicialComplex, f: Field = QQ, *, first_only: bool = False) -> Verdict:
    """Cohen-Macaulay iff H~^i(lk F) = 0 for every face F and every i < dim lk F."""
    witnesses = []
    for m in sorted(sc.faces, key=lambda m: (bin(m).count("1"), m)):
        face = sc.sorted_labels(m)
        lk = sc.link(face)
        top = lk.dim
        for i, v in sorted(lk.reduced_cohomology(f).items()):
            if v and i < top:
                witnesses.append((frozenset(face), i, v))
                if first_only:
                    return Verdict.from_witnesses(witnesses)
    return Verdict.from_witnesses(witnesses)
