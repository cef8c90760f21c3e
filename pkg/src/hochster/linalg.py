"""Exact linear algebra over Q or GF(p), and cohomology of cochain complexes."""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np
from scipy import sparse

from . import _kernels

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % q for q in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class Field:
    """Coefficient field: exact rationals (``p is None``) or GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")
            if self.p >= 2**31:
                raise ValueError("modulus must be below 2**31")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``q``, ``gf2``, ``gf:<p>``, ``gf<p>`` or the printed form ``GF(p)``."""
        t = text.strip().lower().replace("(", "").replace(")", "")
        if t in ("q", "qq", "rationals"):
            return QQ
        if t.startswith("gf"):
            rest = t[2:].lstrip(":") or str(DEFAULT_PRIME)
            return cls(int(rest))
        raise ValueError(f"unknown field {text!r}")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def reduce(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p


QQ = Field()
GF2 = Field(2)


class Betti(dict):
    """Sparse degree -> dimension map; absent degrees read as 0.

    Equality ignores explicit zero entries.
    """

    def __missing__(self, key):
        return 0

    def nonzero(self) -> dict[int, int]:
        return {k: v for k, v in sorted(self.items()) if v}

    def __eq__(self, other):
        if not isinstance(other, dict):
            return NotImplemented
        return self.nonzero() == {k: v for k, v in other.items() if v}

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self) -> str:
        return f"Betti({self.nonzero()})"


# ---------------------------------------------------------------------------
# matrices


def as_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Dense exact matrix: int64 when every entry is a small integer, else object."""
    if isinstance(data, np.ndarray) and data.ndim == 2:
        if data.dtype == object:
            if any(isinstance(x, float) for x in data.flat):
                raise TypeError("floating point entries are not exact")
            return data
        if not np.issubdtype(data.dtype, np.integer):
            raise TypeError("floating point matrices are not exact")
        return data.astype(np.int64, copy=False)
    rows_list = [list(r) for r in data]
    if rows is None:
        rows = len(rows_list)
    if cols is None:
        cols = len(rows_list[0]) if rows_list else 0
    if len(rows_list) != rows or any(len(r) != cols for r in rows_list):
        raise ValueError(f"matrix entries do not form a {rows}x{cols} array")
    flat = [x for r in rows_list for x in r]
    if any(isinstance(x, float) for x in flat):
        raise TypeError("floating point entries are not exact")
    vals = [x if isinstance(x, int) else Fraction(x) for x in flat]
    vals = [int(v) if isinstance(v, Fraction) and v.denominator == 1 else v for v in vals]
    if all(isinstance(v, int) and abs(v) < 2**31 for v in vals):
        return np.array(vals, dtype=np.int64).reshape(rows, cols)
    out = np.empty(rows * cols, dtype=object)
    out[:] = vals
    return out.reshape(rows, cols)


def _mod_p_array(m: np.ndarray, p: int) -> np.ndarray:
    if m.dtype != object:
        return np.mod(m.astype(np.int64), p)
    f = Field(p)
    return np.array([[f.reduce(x) for x in row] for row in m], dtype=np.int64).reshape(m.shape)


def _integer_rows(m: np.ndarray) -> list[dict[int, int]]:
    rows = []
    for r in m:
        nz = np.flatnonzero(r)
        if not nz.size:
            continue
        if m.dtype == object:
            vals = [Fraction(r[j]) for j in nz]
            den = math.lcm(*(v.denominator for v in vals))
            rows.append({int(j): int(v * den) for j, v in zip(nz, vals)})
        else:
            rows.append({int(j): int(r[j]) for j in nz})
    return rows


def _rank_rational(m: np.ndarray) -> int:
    # fraction-free elimination on sparse integer rows, pivot on leading column
    rows = _integer_rows(m)
    rows.sort(key=len)
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                g = math.gcd(*row.values())
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
                pivots[lead] = row
                break
            a, b = row[lead], piv[lead]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {c: b * v for c, v in row.items()}
            for c, v in piv.items():
                w = new.get(c, 0) - a * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = new
    return len(pivots)


def rank(m, f: Field = QQ) -> int:
    """Rank of ``m`` over ``f`` by exact elimination."""
    m = as_matrix(m)
    if m.size == 0:
        return 0
    if f.p is None:
        return _rank_rational(m)
    return _kernels.rank_mod_p(_mod_p_array(m, f.p), f.p)


def rref(m, f: Field = QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form as nested lists of field scalars, plus pivot columns."""
    m = as_matrix(m)
    rows, cols = m.shape
    a = [[f.reduce(x) for x in row] for row in m.tolist()]
    p = f.p
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = (1 / a[r][c]) if p is None else pow(a[r][c], p - 2, p)
        a[r] = [x * inv if p is None else x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                fct = a[i][c]
                if p is None:
                    a[i] = [x - fct * y for x, y in zip(a[i], a[r])]
                else:
                    a[i] = [(x - fct * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m, f: Field = QQ) -> np.ndarray:
    """Basis of the right kernel as columns of a (cols x k) object array."""
    m = as_matrix(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.array([[f.reduce(int(i == j)) for j in range(cols)] for i in range(cols)], dtype=object).reshape(cols, cols)
    a, pivots = rref(m, f)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.empty((cols, len(free)), dtype=object)
    zero = f.reduce(0)
    for k, fc in enumerate(free):
        v = [zero] * cols
        v[fc] = f.reduce(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc] if f.p is None else (-a[i][fc]) % f.p
        basis[:, k] = v
    return basis


def matmul(a: np.ndarray, b: np.ndarray, f: Field = QQ) -> np.ndarray:
    """Exact product reduced into ``f``."""
    if a.dtype != object and b.dtype != object:
        bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * max(a.shape[1], 1)
        if bound < 2**62:
            out = a.astype(np.int64) @ b.astype(np.int64)
            return out % f.p if f.p is not None else out
    out = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    if f.p is not None:
        out = np.vectorize(f.reduce, otypes=[object])(out) if out.size else out
    return out


def _is_zero(m: np.ndarray, f: Field) -> bool:
    if m.size == 0:
        return True
    if m.dtype != object:
        return not np.any(m % f.p if f.p is not None else m)
    return all(f.reduce(x) == 0 for x in m.flat)


# ---------------------------------------------------------------------------
# cochain complexes


@dataclass(frozen=True)
class CochainComplex:
    """``matrices[k]`` is the coboundary from degree ``min_degree + k`` to the next."""

    min_degree: int
    dims: tuple[int, ...]
    matrices: tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        mats = list(self.matrices)
        if len(mats) > max(len(dims) - 1, 0):
            raise ValueError("more coboundaries than degree gaps")
        while len(mats) < len(dims) - 1:
            k = len(mats)
            mats.append(np.zeros((dims[k + 1], dims[k]), dtype=np.int64))
        for k, m in enumerate(mats):
            if m.shape != (dims[k + 1], dims[k]):
                raise ValueError(
                    f"coboundary {k} has shape {m.shape}, expected {(dims[k + 1], dims[k])}"
                )
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def degrees(self) -> range:
        return range(self.min_degree, self.min_degree + len(self.dims))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * d for n, d in zip(self.degrees, self.dims))


def _product_is_zero(b: np.ndarray, a: np.ndarray, f: Field) -> bool:
    if a.size == 0 or b.size == 0:
        return True
    if a.dtype != object and b.dtype != object:
        prod = sparse.csr_matrix(b) @ sparse.csr_matrix(a)
        if f.p is not None:
            prod.data %= f.p
        prod.eliminate_zeros()
        return prod.nnz == 0
    return _is_zero(matmul(b, a, f), f)


_audits: list[list[tuple[int, int]]] = []


@contextlib.contextmanager
def euler_audit() -> Iterator[list[tuple[int, int]]]:
    """Record ``(chi of dims, chi of cohomology)`` for every ``cohomology_dims`` call."""
    log: list[tuple[int, int]] = []
    _audits.append(log)
    try:
        yield log
    finally:
        _audits.remove(log)


def cohomology_dims(c: CochainComplex, f: Field = QQ, *, check: bool = True) -> Betti:
    """dim ker(d^n) - rank(d^{n-1}) for every stored degree n."""
    if check:
        for k in range(len(c.matrices) - 1):
            if not _product_is_zero(c.matrices[k + 1], c.matrices[k], f):
                raise ValueError(
                    f"coboundaries out of degree {c.min_degree + k} do not compose to zero"
                )
    ranks = [rank(m, f) for m in c.matrices]
    out = Betti()
    for k, n in enumerate(c.degrees):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        h = c.dims[k] - r_out - r_in
        if h < 0:
            raise ArithmeticError(f"negative cohomology dimension in degree {n}")
        out[n] = h
    if _audits:
        chi_h = sum((-1) ** n * h for n, h in out.items())
        for log in _audits:
            log.append((c.euler_characteristic(), chi_h))
    return out


def random_invertible(n: int, rng: np.random.Generator, f: Field = QQ) -> np.ndarray:
    """Unit lower times unit upper triangular integer matrix (invertible over any field)."""
    lower = np.tril(rng.integers(-2, 3, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
    upper = np.triu(rng.integers(-2, 3, size=(n, n)), 1) + np.eye(n, dtype=np.int64)
    perm = np.eye(n, dtype=np.int64)[rng.permutation(n)]
    return perm @ lower @ upper


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def stack_blocks(blocks: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    """np.block that keeps exact dtypes."""
    if any(b.dtype == object for row in blocks for b in row):
        return np.block([[b.astype(object) for b in row] for row in blocks])
    return np.block(blocks).astype(np.int64)
