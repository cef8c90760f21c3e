"""Time the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are called explicitly through the ``jit=`` switch, so the
``HOCHSTER_NUMBA`` flag does not matter here.  The first jitted call is made
before timing to keep compilation out of the numbers.
"""

import argparse
import time

import numpy as np

from hochster import _kernels
from hochster.corpus import RP2_FACETS
from hochster.simplicial import SimplicialComplex, boundary_of_simplex


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def rank_cases(rng):
    p = 32003
    for n in (40, 120, 300):
        a = rng.integers(0, p, size=(n, n + 7), dtype=np.int64)
        # low-rank block so elimination does real work past the pivots
        a[n // 2 :] = (a[: n - n // 2] * 3) % p
        yield f"rank mod p {n}x{n + 7}", a, p


def coboundary_cases():
    complexes = {
        "rp2": SimplicialComplex(RP2_FACETS),
        "sphere S^6": boundary_of_simplex(range(8)),
        "sphere S^10": boundary_of_simplex(range(12)),
    }
    for name, sc in complexes.items():
        by_size = {}
        for m in sc.faces:
            by_size.setdefault(bin(m).count("1"), []).append(m)
        k = max(by_size, key=lambda s: len(by_size.get(s, [])) * len(by_size.get(s + 1, [])))
        src = np.array(sorted(by_size[k]), dtype=np.int64)
        dst = np.array(sorted(by_size.get(k + 1, [])), dtype=np.int64)
        yield f"coboundary {name} ({len(src)} -> {len(dst)})", src, dst, len(sc.vertices)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; only the fallback path can run")
    rng = np.random.default_rng(0)
    rows = []

    for name, a, p in rank_cases(rng):
        ref = _kernels.rank_mod_p(a.copy(), p, jit=False)
        t_np = best_of(lambda: _kernels.rank_mod_p(a.copy(), p, jit=False), args.repeat)
        t_nb = None
        if _kernels.HAVE_NUMBA:
            assert _kernels.rank_mod_p(a.copy(), p, jit=True) == ref
            t_nb = best_of(lambda: _kernels.rank_mod_p(a.copy(), p, jit=True), args.repeat)
        rows.append((name, t_np, t_nb))

    for name, src, dst, nbits in coboundary_cases():
        ref = _kernels.coboundary(src, dst, nbits, jit=False)
        t_np = best_of(lambda: _kernels.coboundary(src, dst, nbits, jit=False), args.repeat)
        t_nb = None
        if _kernels.HAVE_NUMBA:
            assert np.array_equal(_kernels.coboundary(src, dst, nbits, jit=True), ref)
            t_nb = best_of(lambda: _kernels.coboundary(src, dst, nbits, jit=True), args.repeat)
        rows.append((name, t_np, t_nb))

    print(f"{'kernel':45s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, t_np, t_nb in rows:
        nb = f"{t_nb * 1e3:10.3f}" if t_nb is not None else f"{'-':>10s}"
        sp = f"{t_np / t_nb:7.1f}x" if t_nb else f"{'-':>8s}"
        print(f"{name:45s} {t_np * 1e3:10.3f} {nb} {sp}")


if __name__ == "__main__":
    main()
