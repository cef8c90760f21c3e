"""Hot numeric kernels: dense elimination mod p and bitmask coboundary assembly.

Every kernel exists twice, a numba ``@njit`` version and a pure numpy/Python
version.  ``HOCHSTER_NUMBA=0`` in the environment forces the fallback path;
the choice is made once at import time.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("HOCHSTER_NUMBA", "1").strip().lower()

try:
    if _FLAG in ("0", "false", "no", "off"):
        raise ImportError("numba disabled by HOCHSTER_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised with HOCHSTER_NUMBA=0
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


USE_NUMBA = HAVE_NUMBA

# largest bit index a coboundary mask may use in the jitted path
MAX_MASK_BITS = 62


# --------------------------------------------------------------------------
# rank mod p


@njit(cache=True)
def _powmod(b, e, p):
    r = 1
    b = b % p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


@njit(cache=True)
def _rank_mod_p_jit(a, p):
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = _powmod(a[r, c], p - 2, p)
        for j in range(c, n):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, m):
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        rows = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        r += 1
    return r


def rank_mod_p(a: np.ndarray, p: int, *, jit: bool | None = None) -> int:
    """Rank of an int64 matrix with entries already reduced into ``[0, p)``.

    The array is consumed (reduced in place).
    """
    if a.size == 0:
        return 0
    use = USE_NUMBA if jit is None else (jit and HAVE_NUMBA)
    if use:
        return int(_rank_mod_p_jit(a, np.int64(p)))
    return _rank_mod_p_numpy(a, p)


# --------------------------------------------------------------------------
# coboundary of a family of bitmask-indexed cells
#
# Cell F maps to sum over k not in F with F|k present of
# (-1)^{#{i in F : i < k}} (F|k).  This one rule serves simplicial cochains
# (faces as vertex bitmasks) and the Cech/Koszul complex (subsets of variables).


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _coboundary_jit(src, dst_sorted, nbits):
    out = np.zeros((dst_sorted.shape[0], src.shape[0]), dtype=np.int64)
    nd = dst_sorted.shape[0]
    for j in range(src.shape[0]):
        f = src[j]
        for k in range(nbits):
            bit = np.int64(1) << k
            if f & bit:
                continue
            g = f | bit
            i = np.searchsorted(dst_sorted, g)
            if i < nd and dst_sorted[i] == g:
                if _popcount(f & (bit - 1)) % 2 == 0:
                    out[i, j] = 1
                else:
                    out[i, j] = -1
    return out


def _coboundary_py(src, dst_sorted, nbits: int) -> np.ndarray:
    index = {int(g): i for i, g in enumerate(dst_sorted)}
    out = np.zeros((len(dst_sorted), len(src)), dtype=np.int64)
    for j, f in enumerate(src):
        f = int(f)
        for k in range(nbits):
            bit = 1 << k
            if f & bit:
                continue
            i = index.get(f | bit)
            if i is not None:
                out[i, j] = -1 if bin(f & (bit - 1)).count("1") % 2 else 1
    return out


def coboundary(src, dst_sorted, nbits: int, *, jit: bool | None = None) -> np.ndarray:
    """Signed incidence matrix (rows ``dst_sorted``, columns ``src``).

    ``dst_sorted`` must be increasing.  Masks wider than 62 bits always take
    the Python path.
    """
    if len(src) == 0 or len(dst_sorted) == 0:
        return np.zeros((len(dst_sorted), len(src)), dtype=np.int64)
    use = USE_NUMBA if jit is None else (jit and HAVE_NUMBA)
    if use and nbits <= MAX_MASK_BITS:
        return _coboundary_jit(
            np.asarray(src, dtype=np.int64), np.asarray(dst_sorted, dtype=np.int64), nbits
        )
    return _coboundary_py(src, dst_sorted, nbits)
