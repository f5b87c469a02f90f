"""Benchmark the numba kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py

The package selects the numba path automatically when available;
RADON_HGF_PURE_NUMPY=1 forces the fallback everywhere.  This script
times both implementations side by side regardless of the flag, so the
trade-off is visible on the current machine.
"""

import time

import numpy as np

from radon_hgf import _kernels as K


def timeit(fn, *args, repeat=5):
    fn(*args)  # warm-up (and JIT compile)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_vdm_sq(batch=1_000_000):
    rng = np.random.default_rng(0)
    print(f"\nsquared Vandermonde over a ({batch}, r) eigenvalue batch")
    print(f"{'r':>3} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for r in (2, 3, 4):
        lams = rng.standard_normal((batch, r))
        t_np = timeit(K.vdm_sq_batch_np, lams)
        if K.HAVE_NUMBA:
            t_nb = timeit(K.vdm_sq_batch_nb, lams)
            print(f"{r:>3} {1e3 * t_np:>12.2f} {1e3 * t_nb:>12.2f} "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{r:>3} {1e3 * t_np:>12.2f} {'n/a':>12} {'':>9}")


def bench_tensor_sum(n=64):
    rng = np.random.default_rng(1)
    wg = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lam = np.sort(rng.standard_normal(n))
    print(f"\ntensor quadrature sum, {n} nodes per dimension")
    print(f"{'r':>3} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for r in (2, 3, 4):
        t_np = timeit(K.tensor_vdm_sum_np, wg, lam, r, repeat=3)
        if K.HAVE_NUMBA:
            t_nb = timeit(K.tensor_vdm_sum_nb, wg, lam, r, repeat=3)
            print(f"{r:>3} {1e3 * t_np:>12.2f} {1e3 * t_nb:>12.2f} "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{r:>3} {1e3 * t_np:>12.2f} {'n/a':>12} {'':>9}")


if __name__ == "__main__":
    print(f"active kernel path: {K.ACTIVE}"
          + (" (RADON_HGF_PURE_NUMPY set)" if K.FORCE_NUMPY else ""))
    bench_vdm_sq()
    bench_tensor_sum()
