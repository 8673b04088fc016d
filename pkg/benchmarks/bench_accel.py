"""Compare the numba and numpy backends of the modular chain product.

Two workloads: synthetic chains of sparse two-site factors, and full fused
YBE grid checks.  Run with ``python benchmarks/bench_accel.py``.
"""

import argparse
import time

import numpy as np

from ybfuse import accel
from ybfuse.fusion import verify_fused_ybe
from ybfuse.kernels import KernelSpec


def synthetic_chain(rng, F, d, n):
    """F factors on V^(n), each acting as a dense d^2 x d^2 block on a random site pair."""
    D = d ** n
    K = d * d
    src = np.empty((F, K, D), dtype=np.int64)
    lidx = np.empty((F, K, D), dtype=np.int64)
    lvals = rng.integers(0, 2 ** 31 - 1, size=(F, K * K), dtype=np.int64)
    digits = np.array(np.unravel_index(np.arange(D), (d,) * n)).T
    for f in range(F):
        i, j = sorted(rng.choice(n, 2, replace=False))
        for r in range(D):
            row = digits[r]
            local = row[i] * d + row[j]
            for k in range(K):
                a, b = divmod(k, d)
                col = row.copy()
                col[i], col[j] = a, b
                src[f, k, r] = np.ravel_multi_index(tuple(col), (d,) * n)
                lidx[f, k, r] = local * K + k
    return src, lidx, lvals, np.array([0]), np.array([D])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_chain(repeat):
    rng = np.random.default_rng(0)
    p = accel.PRIMES[0]
    print("synthetic chains (best of %d)" % repeat)
    print(f"{'d^n':>8} {'factors':>8} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for d, n, F in [(2, 4, 8), (2, 6, 16), (3, 4, 12), (2, 8, 24)]:
        args = synthetic_chain(rng, F, d, n)
        a = accel.chain_mod(*args, p, backend="numba")
        b = accel.chain_mod(*args, p, backend="numpy")
        assert np.array_equal(a, b)
        tn = best_of(lambda: accel.chain_mod(*args, p, backend="numba"), repeat)
        tp = best_of(lambda: accel.chain_mod(*args, p, backend="numpy"), repeat)
        print(f"{d ** n:>8} {F:>8} {tn:>10.4f} {tp:>10.4f} {tp / tn:>8.1f}")


def bench_fused(repeat):
    print("fused YBE grid checks (best of %d)" % repeat)
    print(f"{'case':>28} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    cases = [("yang", 2, 0, [[1, 2]], [[1, 2]], [[1]]),
             ("hecke", 2, 0, [[1, 2]], [[1], [2]], [[1, 2]]),
             ("yang", 3, 0, [[1, 2]], [[1, 2]], [[1, 2]])]
    for kind, N, M, t1, t2, t3 in cases:
        k = KernelSpec(kind, N, M)
        ok = [verify_fused_ybe(k, t1, t2, t3, backend=b).passed for b in ("numba", "numpy")]
        assert all(ok)
        tn = best_of(lambda: verify_fused_ybe(k, t1, t2, t3, backend="numba"), repeat)
        tp = best_of(lambda: verify_fused_ybe(k, t1, t2, t3, backend="numpy"), repeat)
        print(f"{kind + f' N={N} n=2,2,' + str(sum(map(len, t3))):>28} "
              f"{tn:>10.3f} {tp:>10.3f} {tp / tn:>8.1f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-fused", action="store_true")
    args = parser.parse_args()
    if not accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable")
    bench_chain(args.repeat)
    if not args.skip_fused:
        bench_fused(args.repeat)


if __name__ == "__main__":
    main()
