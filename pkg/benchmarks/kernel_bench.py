#!/usr/bin/env python3
"""Compare the integer convolution kernels behind series multiplication.

Times the numba @njit kernel, the pure-numpy fallback, and the
Kronecker-substitution bigint route on random integer series of
increasing length.  The first numba call includes JIT compilation and is
timed separately.
"""

import random
import time

import numpy as np

from rcadjoint import kernels


def bench(fn, a, b, prec, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(a, b, prec)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = random.Random(12345)
    sizes = [1000, 5000, 20000]
    print(f"numba available: {kernels.HAS_NUMBA}")
    if kernels.HAS_NUMBA:
        t0 = time.perf_counter()
        kernels._convolve_njit(
            np.array([1, 2, 3], dtype=np.int64),
            np.array([1, 2, 3], dtype=np.int64),
            3,
        )
        print(f"numba warmup (incl. JIT): {time.perf_counter() - t0:.3f}s")
    print(f"{'n':>8} {'numba':>12} {'numpy':>12} {'bigint':>12}")
    for n in sizes:
        a = [rng.randint(-(10**6), 10**6) for _ in range(n)]
        b = [rng.randint(-(10**6), 10**6) for _ in range(n)]
        na = np.array(a, dtype=np.int64)
        nb = np.array(b, dtype=np.int64)
        t_numba = (
            bench(kernels._convolve_njit, na, nb, n)
            if kernels.HAS_NUMBA
            else float("nan")
        )
        t_numpy = bench(kernels._convolve_numpy, na, nb, n)
        t_big = bench(kernels.convolve_bigint, a, b, n)
        print(f"{n:>8} {t_numba:>11.4f}s {t_numpy:>11.4f}s {t_big:>11.4f}s")


if __name__ == "__main__":
    main()
