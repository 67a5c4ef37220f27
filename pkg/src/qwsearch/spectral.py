"""Closed-form spectrum of J(n,k) and the (k+1)-dimensional search model.

The adjacency operator of J(n,k) has k+1 distinct eigenvalues

    lambda_l = (k-l)(n-k-l) - l,        l = 0..k,

with multiplicity m_l = C(n,l) - C(n,l-1).  Writing P_l for the projector
onto the l-th eigenspace and |w> for the marked vertex, the overlaps
p_l = ||P_l |w>|| satisfy p_l^2 = m_l / N.  The k+1 unit vectors
P_l|w>/p_l span a subspace invariant under the search Hamiltonian
H = -gamma*A - |w><w|, on which H acts as the exact (k+1) x (k+1) matrix

    H_red = -gamma * diag(lambda_0..lambda_k) - p p^T.

In that basis the uniform superposition |s> is the first basis vector e_0
and |w> is the vector p itself, so the whole search problem reduces to a
(k+1)-dimensional one with no approximation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .johnson import GraphParams


def _check_ell(params: GraphParams, ell: int):
    if not 0 <= ell <= params.k:
        raise DomainError(f"ell={ell} outside 0..{params.k}")


def eigenvalue(params: GraphParams, ell: int) -> int:
    """Adjacency eigenvalue (k-l)(n-k-l) - l; equals the degree at l=0."""
    _check_ell(params, ell)
    n, k = params.n, params.k
    return (k - ell) * (n - k - ell) - ell


def multiplicity(params: GraphParams, ell: int) -> int:
    """Eigenspace dimension C(n,l) - C(n,l-1) (exact integer)."""
    _check_ell(params, ell)
    n = params.n
    prev = math.comb(n, ell - 1) if ell >= 1 else 0
    return math.comb(n, ell) - prev


def overlap(params: GraphParams, ell: int) -> float:
    """p_l = ||P_l |w>|| computed as sqrt(m_l / N)."""
    # Exact integer ratio; the float division is correctly rounded.
    return math.sqrt(multiplicity(params, ell) / params.num_vertices)


def overlap_sq_factorial(params: GraphParams, ell: int) -> float:
    """p_l^2 via the factorial form k!(n-k)!(n-2l+1) / (l!(n-l+1)!).

    Independent of :func:`overlap`; kept as a cross-check route and
    evaluated as an exact integer ratio to avoid float factorials.
    """
    _check_ell(params, ell)
    n, k = params.n, params.k
    num = math.factorial(k) * math.factorial(n - k) * (n - 2 * ell + 1)
    den = math.factorial(ell) * math.factorial(n - ell + 1)
    return num / den


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues (descending), multiplicities, and marked-state overlaps."""

    params: GraphParams
    lambdas: np.ndarray
    mults: tuple
    overlaps: np.ndarray


def spectral_data(params: GraphParams) -> SpectralData:
    """All closed-form spectral quantities of J(n,k) in one bundle."""
    k = params.k
    lambdas = np.array([eigenvalue(params, l) for l in range(k + 1)], dtype=np.float64)
    if not np.all(np.diff(lambdas) < 0):  # pragma: no cover - barred by n >= 2k
        raise DomainError("eigenvalues not strictly decreasing; params out of range")
    mults = tuple(multiplicity(params, l) for l in range(k + 1))
    if sum(mults) != params.num_vertices:  # pragma: no cover
        raise AssertionError("multiplicities do not sum to N")
    overlaps = np.array([overlap(params, l) for l in range(k + 1)])
    total = math.fsum(float(p) ** 2 for p in overlaps)
    if abs(total - 1.0) > 1e-14:  # pragma: no cover
        raise AssertionError(f"overlap completeness violated: sum p^2 = {total}")
    return SpectralData(params=params, lambdas=lambdas, mults=mults, overlaps=overlaps)


@dataclass(frozen=True)
class ReducedHamiltonian:
    """The search Hamiltonian restricted to its (k+1)-dimensional invariant subspace."""

    params: GraphParams
    gamma: float
    matrix: np.ndarray


def reduced_hamiltonian(params: GraphParams, gamma: float) -> ReducedHamiltonian:
    """Exact (k+1) x (k+1) matrix -gamma*diag(lambda) - p p^T."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    sd = spectral_data(params)
    matrix = -gamma * np.diag(sd.lambdas) - np.outer(sd.overlaps, sd.overlaps)
    return ReducedHamiltonian(params=params, gamma=gamma, matrix=matrix)


def reduced_initial_state(params: GraphParams) -> np.ndarray:
    """The uniform superposition in the reduced basis: e_0."""
    psi = np.zeros(params.k + 1)
    psi[0] = 1.0
    return psi


def reduced_marked_state(params: GraphParams) -> np.ndarray:
    """The marked vertex in the reduced basis: the overlap vector p (unit norm)."""
    return spectral_data(params).overlaps.copy()
