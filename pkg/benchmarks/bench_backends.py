#!/usr/bin/env python3
"""Time the jitted kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_backends.py
The workloads are the package's real hot paths: batched mod-p elimination
(census ranks, grid determinants) and the packed F_2 scans.  Both backends
produce identical integers; only the clock differs.
"""

import time

import numpy as np

import epwforge.kernels as kernels
from epwforge.enumeration import projective_reps
from epwforge.epw import epw_sextic
from epwforge.fields import GF
from epwforge.kernels import fiber_rows_batch
from epwforge.lagrangian import random_lagrangian


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rng = np.random.default_rng(0)
    det_mats = rng.integers(0, 10007, size=(3003, 10, 10)).astype(np.int64)

    pts5 = projective_reps(5, 6)
    A5 = np.array(
        [[int(x) for x in row] for row in random_lagrangian(1, GF(5)).basis_rows],
        dtype=np.int64,
    )
    fib = fiber_rows_batch(pts5, 5)
    census_stack = np.concatenate(
        [np.broadcast_to(A5, (pts5.shape[0], 10, 20)).copy(), fib], axis=1
    )

    qrows = rng.integers(0, 1 << 20, 20).astype(np.int64)
    tvals = rng.integers(1, 1 << 20, 200_000).astype(np.int64)

    return [
        (
            "det_batch 3003 x (10x10) mod 10007  [sextic grid]",
            lambda: kernels.det_batch(det_mats.copy(), 10007),
        ),
        (
            "rank_batch 3906 x (25x20) mod 5     [rank census]",
            lambda: kernels.rank_batch(census_stack.copy(), 5),
        ),
        (
            "f2_classify_all 2^20-1 trivectors   [orbit census]",
            kernels.f2_classify_all,
        ),
        (
            "f2_quadform 200k points             [union scan]",
            lambda: kernels.f2_quadform(tvals, qrows),
        ),
    ]


def end_to_end():
    return [
        (
            "epw_sextic seed 1 over F_10007      [grid + fit]",
            lambda: epw_sextic(random_lagrangian(1, GF(10007))),
        ),
    ]


def main():
    rows = []
    for name, fn in workloads() + end_to_end():
        times = {}
        for backend in kernels.available_backends():
            kernels.set_backend(backend)
            kernels.warmup()
            fn()  # one untimed pass (jit compilation, caches)
            times[backend] = timeit(fn)
        rows.append((name, times))

    w = max(len(r[0]) for r in rows)
    backends = sorted({b for _, t in rows for b in t})
    header = "workload".ljust(w) + "".join(f"  {b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, t in rows:
        line = name.ljust(w) + "".join(f"  {t[b] * 1e3:9.2f}ms" for b in backends)
        if len(backends) == 2:
            a, b = (t[x] for x in backends)
            line += f"  {max(a, b) / min(a, b):7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
