"""Hot numeric kernels with two interchangeable backends.

The cyclic-Jacobi eigensolver and the dense adjacency builder dominate the
runtime of every full-Hilbert-space oracle run, so both carry a numba
``@njit`` implementation next to a pure-numpy one.  The backend is chosen
once, at import time, from the ``QWSEARCH_BACKEND`` environment variable
(``numba`` or ``numpy``; default is numba when importable).  Both backends
are deterministic run-to-run; they are not required to agree bit-for-bit
with each other, only to the tolerances checked in the test suite.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

import math
import os
import warnings

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on stripped installs
    HAVE_NUMBA = False

# Off-diagonal Frobenius-norm stopping criterion and sweep budget for the
# cyclic Jacobi iteration.
JACOBI_TOL_FACTOR = 1e-14
JACOBI_MAX_SWEEPS = 100

_requested = os.environ.get("QWSEARCH_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"QWSEARCH_BACKEND={_requested!r} not understood; use 'numba' or 'numpy'"
    )
if _requested == "numba" and not HAVE_NUMBA:
    warnings.warn("QWSEARCH_BACKEND=numba but numba is not importable; using numpy")
    _requested = "numpy"
if _requested == "":
    _requested = "numba" if HAVE_NUMBA else "numpy"

BACKEND = _requested


def _offdiag_norm(a):
    return math.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))


def _jacobi_numpy(a, tol, max_sweeps):
    """Cyclic Jacobi on a working copy ``a`` (overwritten); returns (a, v, sweeps, off, ok)."""
    n = a.shape[0]
    v = np.eye(n)
    off = _offdiag_norm(a)
    sweeps = 0
    while off > tol:
        if sweeps == max_sweeps:
            return a, v, sweeps, off, False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # overflow-free tan of the annihilating rotation angle
                d = 0.5 * (a[q, q] - a[p, p])
                t = apq / (abs(d) + math.hypot(d, apq))
                if d < 0.0:
                    t = -t
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                # exact annihilation of the target pair; diagonal via the
                # cancellation-free update
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = _offdiag_norm(a)
    return a, v, sweeps, off, True


if HAVE_NUMBA:

    @njit(cache=True)
    def _jacobi_numba(a, tol, max_sweeps):
        n = a.shape[0]
        v = np.eye(n)
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        off = math.sqrt(2.0 * off)
        sweeps = 0
        while off > tol:
            if sweeps == max_sweeps:
                return a, v, sweeps, off, False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    d = 0.5 * (a[q, q] - a[p, p])
                    t = apq / (abs(d) + math.hypot(d, apq))
                    if d < 0.0:
                        t = -t
                    c = 1.0 / math.hypot(t, 1.0)
                    s = t * c
                    app = a[p, p]
                    aqq = a[q, q]
                    for i in range(n):
                        if i != p and i != q:
                            aip = a[i, p]
                            aiq = a[i, q]
                            a[i, p] = c * aip - s * aiq
                            a[p, i] = a[i, p]
                            a[i, q] = s * aip + c * aiq
                            a[q, i] = a[i, q]
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * apq
                    a[q, q] = aqq + t * apq
                    for i in range(n):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = c * vip - s * viq
                        v[i, q] = s * vip + c * viq
            sweeps += 1
            off = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    off += a[i, j] * a[i, j]
            off = math.sqrt(2.0 * off)
        return a, v, sweeps, off, True

else:  # pragma: no cover
    _jacobi_numba = None


def jacobi_eigh_numpy(matrix):
    """Pure-numpy cyclic Jacobi; returns (values asc, vectors, sweeps, off, ok)."""
    a = np.array(matrix, dtype=np.float64, copy=True)
    tol = JACOBI_TOL_FACTOR * np.linalg.norm(a)
    a, v, sweeps, off, ok = _jacobi_numpy(a, tol, JACOBI_MAX_SWEEPS)
    return _sorted_eig(a, v, sweeps, off, ok)


def jacobi_eigh_numba(matrix):
    """Numba cyclic Jacobi; returns (values asc, vectors, sweeps, off, ok)."""
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba backend requested but numba is not installed")
    a = np.ascontiguousarray(matrix, dtype=np.float64).copy()
    tol = JACOBI_TOL_FACTOR * np.linalg.norm(a)
    a, v, sweeps, off, ok = _jacobi_numba(a, tol, JACOBI_MAX_SWEEPS)
    return _sorted_eig(a, v, sweeps, off, ok)


def _sorted_eig(a, v, sweeps, off, ok):
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return values[order], np.ascontiguousarray(v[:, order]), sweeps, off, ok


def jacobi_eigh(matrix):
    """Eigendecomposition of a real symmetric matrix on the selected backend."""
    if BACKEND == "numba":
        return jacobi_eigh_numba(matrix)
    return jacobi_eigh_numpy(matrix)


if HAVE_NUMBA:

    @njit(cache=True)
    def _adjacency_numba(elems):
        n_v, k = elems.shape
        a = np.zeros((n_v, n_v))
        for i in range(n_v):
            for j in range(i + 1, n_v):
                common = 0
                x = 0
                y = 0
                while x < k and y < k:
                    ei = elems[i, x]
                    ej = elems[j, y]
                    if ei == ej:
                        common += 1
                        x += 1
                        y += 1
                    elif ei < ej:
                        x += 1
                    else:
                        y += 1
                if common == k - 1:
                    a[i, j] = 1.0
                    a[j, i] = 1.0
        return a

else:  # pragma: no cover
    _adjacency_numba = None


def adjacency_numba(elems, n):
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba backend requested but numba is not installed")
    return _adjacency_numba(np.ascontiguousarray(elems, dtype=np.int64))


def adjacency_numpy(elems, n):
    # 0/1 incidence rows; pairwise intersection sizes via one matmul.
    # Counts are small integers, so float64 comparison is exact.
    n_v, k = elems.shape
    inc = np.zeros((n_v, n), dtype=np.float64)
    inc[np.arange(n_v)[:, None], elems - 1] = 1.0
    common = inc @ inc.T
    return (common == float(k - 1)).astype(np.float64)


def adjacency_dense(elems, n):
    """0/1 adjacency between k-subsets (rows of ``elems``) sharing k-1 elements."""
    if BACKEND == "numba":
        return adjacency_numba(elems, n)
    return adjacency_numpy(elems, n)
