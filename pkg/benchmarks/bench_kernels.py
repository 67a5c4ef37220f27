"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the two hot paths (dense adjacency construction and the cyclic
Jacobi eigensolver) on full-space instances of increasing size, checks
that both backends agree, and prints per-path timings.

Usage: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from qwsearch import GraphParams, full_hamiltonian, gamma_star
from qwsearch._kernels import (
    HAVE_NUMBA,
    adjacency_numba,
    adjacency_numpy,
    jacobi_eigh_numba,
    jacobi_eigh_numpy,
)
from qwsearch.johnson import vertex_elements

ADJACENCY_CASES = [(16, 2), (12, 3), (14, 4), (14, 6)]   # N = 120 .. 3003
JACOBI_CASES = [(12, 2), (10, 3), (12, 3)]               # N = 66 .. 220


def timed(fn, *args, repeat=3):
    fn(*args)  # warmup (and numba compile on first use)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_adjacency():
    print("adjacency construction")
    print(f"{'graph':>12} {'N':>6} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for n, k in ADJACENCY_CASES:
        params = GraphParams(n, k)
        elems = vertex_elements(params)
        t_np, a_np = timed(adjacency_numpy, elems, n)
        if HAVE_NUMBA:
            t_nb, a_nb = timed(adjacency_numba, elems, n)
            assert np.array_equal(a_np, a_nb), "backends disagree"
            print(f"  J({n:>2},{k}) {params.num_vertices:>6} "
                  f"{t_np*1e3:>8.2f}ms {t_nb*1e3:>8.2f}ms {t_np/t_nb:>7.1f}x")
        else:
            print(f"  J({n:>2},{k}) {params.num_vertices:>6} {t_np*1e3:>8.2f}ms {'-':>10}")


def bench_jacobi():
    print("\ncyclic Jacobi eigendecomposition of the search Hamiltonian")
    print(f"{'graph':>12} {'N':>6} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for n, k in JACOBI_CASES:
        params = GraphParams(n, k)
        h = full_hamiltonian(params, gamma_star(params), 0)
        t_np, out_np = timed(jacobi_eigh_numpy, h)
        if HAVE_NUMBA:
            t_nb, out_nb = timed(jacobi_eigh_numba, h)
            drift = np.max(np.abs(out_np[0] - out_nb[0]))
            assert drift <= 1e-11 * (1 + np.max(np.abs(h))), "backends disagree"
            print(f"  J({n:>2},{k}) {params.num_vertices:>6} "
                  f"{t_np*1e3:>8.1f}ms {t_nb*1e3:>8.1f}ms {t_np/t_nb:>7.1f}x"
                  f"   (max eigenvalue drift {drift:.1e})")
        else:
            print(f"  J({n:>2},{k}) {params.num_vertices:>6} {t_np*1e3:>8.1f}ms {'-':>10}")


if __name__ == "__main__":
    if not HAVE_NUMBA:
        print("numba not available; timing the numpy path only\n")
    bench_adjacency()
    bench_jacobi()
