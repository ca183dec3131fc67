"""Timing comparison of the compiled and pure-numpy lattice-sum backends.

Run as:  python3 benchmarks/bench_kernels.py [n_points]

The direct image sums are the hot loop of every periodized kernel
evaluation, so this benchmarks lattice.lattice_sums on a batch of strip
points at a few truncation radii, once per backend, and reports the
speedup.  Results from the two backends are also cross-checked.
"""

import sys
import time

import numpy as np

from alphasqg import _lattice_py, lattice

KINDS = lattice.KINDS


def bench(fn, repeat=3):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    rng = np.random.default_rng(1234)
    x1 = rng.uniform(-0.5, 0.5, n)
    x2 = rng.uniform(-1.0, 1.0, n)
    alpha = 0.5

    have_cy = lattice._lattice_cy is not None
    print(f"points: {n}, alpha: {alpha}, compiled backend available: {have_cy}")
    print(f"{'N':>6} {'numpy [s]':>12} {'compiled [s]':>14} {'speedup':>9} {'max |diff|':>12}")
    for N in (32, 64, 128, 256):
        t_py = bench(lambda: _lattice_py.direct_sums(x1, x2, alpha, N, KINDS))
        ref = _lattice_py.direct_sums(x1, x2, alpha, N, KINDS)
        if have_cy:
            mask = np.ones(len(KINDS), dtype=np.uint8)

            def run_cy():
                return lattice._lattice_cy.direct_sums(x1, x2, alpha, N, mask)

            t_cy = bench(run_cy)
            vals = run_cy()
            diff = max(
                np.max(np.abs(vals[i] - ref[k])) for i, k in enumerate(KINDS)
            )
            print(f"{N:>6} {t_py:>12.4f} {t_cy:>14.4f} {t_py / t_cy:>8.1f}x {diff:>12.2e}")
        else:
            print(f"{N:>6} {t_py:>12.4f} {'-':>14} {'-':>9} {'-':>12}")


if __name__ == "__main__":
    main()
