"""Checks tying the reduced model to the full Hilbert space and to the
asymptotic predictions.

Small instances get exact oracles: the dense adjacency spectrum against
the closed forms, invariance of the distance-class span under A, the
embedding of the reduced Hamiltonian inside the full one, and the
full-space success-probability curve against the reduced-model curve.

Large instances are covered through the reduced model alone, where the
perturbation analysis shows up as measurable spectral facts at the
critical coupling: the gap between the two lowest levels approaches
2*sqrt(k!)*n^(-k/2) (so gap * run_time -> pi), the ground state splits
evenly between the start state e_0 and the marked state p, and the
success probability at run_time tends to 1.  Convergence sweeps record
exactly those quantities per n.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import coupling
from .dynamics import (
    _probs_at,
    find_peak,
    peak_bracket,
    run_time,
    success_probability,
    sym_eig,
)
from .errors import DomainError, NumericalError
from .johnson import (
    DEFAULT_FULL_CAP,
    GraphParams,
    adjacency_matrix,
    distance_partition,
    full_hamiltonian,
)
from .spectral import (
    multiplicity,
    overlap_sq_factorial,
    reduced_hamiltonian,
    reduced_marked_state,
    spectral_data,
)

# Dense eigenvalues are assigned to closed-form levels within this distance;
# the closed-form levels are integers at least 1 apart, a 1e6 safety margin.
_CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class SweepRow:
    """One convergence-study record at the critical coupling."""

    n: int
    N: int
    gamma_star: float
    t_run: float
    p_at_trun: float
    t_peak: float
    p_peak: float
    gap: float
    gap_ratio: float
    phase: float
    s_overlap_sq: float
    w_overlap_sq: float


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold


@dataclass(frozen=True)
class ValidationReport:
    label: str
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _full_transition(params, gamma, w, cap):
    h = full_hamiltonian(params, gamma, w, cap)
    dec = sym_eig(h)
    n_vert = params.num_vertices
    start = np.full(n_vert, 1.0 / math.sqrt(n_vert))
    weights = dec.vectors[w, :] * (dec.vectors.T @ start)
    return dec, weights


def compare_full_reduced(
    params: GraphParams,
    gamma: float,
    w: int,
    times,
    cap: int = DEFAULT_FULL_CAP,
) -> float:
    """Max |p_full(t) - p_reduced(t)| over the time grid.

    The full curve evolves |s> under the dense N x N Hamiltonian and
    projects on the marked basis vector; the reduced curve comes from the
    (k+1)-dimensional model.  Their agreement is the core oracle for
    everything the reduced model is used for.
    """
    times = np.asarray(times, dtype=np.float64)
    dec_f, wts_f = _full_transition(params, gamma, w, cap)
    probs_full = _probs_at(dec_f, wts_f, times)
    red = reduced_hamiltonian(params, gamma)
    dec_r = sym_eig(red.matrix)
    wts_r = dec_r.vectors[0, :] * (dec_r.vectors.T @ reduced_marked_state(params))
    probs_red = _probs_at(dec_r, wts_r, times)
    return float(np.max(np.abs(probs_full - probs_red)))


def compare_marked_vertices(
    params: GraphParams,
    gamma: float,
    w1: int,
    w2: int,
    times,
    cap: int = DEFAULT_FULL_CAP,
) -> float:
    """Max difference between full-space success curves for two marked vertices.

    Vertex-transitivity makes the marked choice immaterial; this measures
    exactly that.
    """
    times = np.asarray(times, dtype=np.float64)
    dec1, wts1 = _full_transition(params, gamma, w1, cap)
    dec2, wts2 = _full_transition(params, gamma, w2, cap)
    return float(np.max(np.abs(_probs_at(dec1, wts1, times) - _probs_at(dec2, wts2, times))))


def check_spectrum(params: GraphParams, cap: int = DEFAULT_FULL_CAP) -> ValidationReport:
    """Dense adjacency spectrum against the closed-form eigenvalues and
    multiplicities; values within 1e-8, multiplicities exact."""
    sd = spectral_data(params)
    spacings = -np.diff(sd.lambdas)
    if np.min(spacings) <= 2 * _CLUSTER_TOL:  # pragma: no cover - needs n < 2k
        raise NumericalError("closed-form eigenvalues too close to cluster safely")
    dense = np.sort(sym_eig(adjacency_matrix(params, cap)).values)
    expanded = np.concatenate(
        [np.full(m, lam) for lam, m in zip(sd.lambdas[::-1], sd.mults[::-1])]
    )
    value_residual = float(np.max(np.abs(dense - expanded)))
    mismatches = 0
    for lam, m in zip(sd.lambdas, sd.mults):
        count = int(np.sum(np.abs(dense - lam) <= _CLUSTER_TOL))
        if count != m:
            mismatches += 1
    return ValidationReport(
        label=f"J({params.n},{params.k}) spectrum",
        checks=(
            CheckResult("spectrum_values", value_residual, 1e-8),
            CheckResult("spectrum_multiplicities", float(mismatches), 0.0),
        ),
    )


def check_partition_invariance(
    params: GraphParams, w: int, cap: int = DEFAULT_FULL_CAP
) -> float:
    """Residual of A mapping the distance-class span into itself.

    With B the orthonormal class indicators around w, returns
    max_l || (I - B B^T) A |nu_l> ||; zero in exact arithmetic.
    """
    a = adjacency_matrix(params, cap)
    part = distance_partition(params, w, cap)
    n_vert = params.num_vertices
    basis = np.zeros((n_vert, params.k + 1))
    for ell, ids in enumerate(part.classes):
        basis[ids, ell] = 1.0 / math.sqrt(len(ids))
    worst = 0.0
    for ell in range(params.k + 1):
        image = a @ basis[:, ell]
        residual = image - basis @ (basis.T @ image)
        worst = max(worst, float(np.linalg.norm(residual)))
    return worst


def _eigenspace_basis_at_marked(params, w, cap):
    # Columns P_l|w> / ||P_l|w>|| computed from the dense adjacency
    # eigendecomposition by clustering eigenvalues to closed-form levels.
    sd = spectral_data(params)
    dec = sym_eig(adjacency_matrix(params, cap))
    basis = np.zeros((params.num_vertices, params.k + 1))
    for ell, lam in enumerate(sd.lambdas):
        sel = np.abs(dec.values - lam) <= _CLUSTER_TOL
        vecs = dec.vectors[:, sel]
        proj_w = vecs @ vecs[w, :]
        basis[:, ell] = proj_w / np.linalg.norm(proj_w)
    return basis


def reduced_embedding_residual(
    params: GraphParams, gamma: float, w: int, cap: int = DEFAULT_FULL_CAP
) -> float:
    """Max entrywise difference between B^T H_full B and the reduced matrix,
    B being the orthonormal basis P_l|w>/p_l of the invariant subspace."""
    basis = _eigenspace_basis_at_marked(params, w, cap)
    h = full_hamiltonian(params, gamma, w, cap)
    conjugated = basis.T @ h @ basis
    red = reduced_hamiltonian(params, gamma).matrix
    return float(np.max(np.abs(conjugated - red)))


def overlap_consistency_residual(params: GraphParams) -> float:
    """Worst relative disagreement between the two routes to p_l^2."""
    sd = spectral_data(params)
    worst = 0.0
    for ell in range(params.k + 1):
        via_mult = multiplicity(params, ell) / params.num_vertices
        via_fact = overlap_sq_factorial(params, ell)
        worst = max(worst, abs(via_mult - via_fact) / via_fact)
    return worst


def asymptotics_row(params: GraphParams) -> SweepRow:
    """All convergence-study quantities of one instance at the critical coupling."""
    gamma = coupling.gamma_star(params)
    red = reduced_hamiltonian(params, gamma)
    dec = sym_eig(red.matrix)
    gap = float(dec.values[1] - dec.values[0])
    if gap < 1e-14:
        raise NumericalError(
            f"two lowest levels numerically degenerate (gap {gap:.3e}); "
            f"n too large for k={params.k} in binary64"
        )
    t_run = run_time(params)
    scale = float(params.n) ** (params.k / 2) / (2.0 * math.sqrt(math.factorial(params.k)))
    ground = dec.vectors[:, 0]
    marked = reduced_marked_state(params)
    t_peak, p_peak = find_peak(params, gamma, peak_bracket(params))
    return SweepRow(
        n=params.n,
        N=params.num_vertices,
        gamma_star=gamma,
        t_run=t_run,
        p_at_trun=success_probability(params, gamma, t_run),
        t_peak=t_peak,
        p_peak=p_peak,
        gap=gap,
        gap_ratio=gap * scale,
        phase=gap * t_run,
        s_overlap_sq=float(ground[0] ** 2),
        w_overlap_sq=float(np.dot(marked, ground) ** 2),
    )


def convergence_sweep(k: int, n_list, jobs: int = 1) -> list:
    """One :func:`asymptotics_row` per n, at the critical coupling throughout.

    Rows are independent; with jobs > 1 they are computed by a thread pool
    and collected in input order, so the result is identical either way.
    """
    n_list = list(n_list)
    if not n_list:
        raise DomainError("n_list must not be empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError(f"n_list must be strictly ascending, got {n_list}")
    all_params = [GraphParams(n=n, k=k) for n in n_list]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(asymptotics_row, all_params))
    return [asymptotics_row(p) for p in all_params]


def validate_instance(
    params: GraphParams, w: int = 0, cap: int = DEFAULT_FULL_CAP
) -> ValidationReport:
    """Every full-space check on one instance, aggregated for reporting."""
    gamma = coupling.gamma_star(params)
    times = np.linspace(0.0, 2.0 * run_time(params), 64)
    spectrum = check_spectrum(params, cap)
    w2 = (w + 1) % params.num_vertices
    checks = spectrum.checks + (
        CheckResult(
            "overlap_consistency", overlap_consistency_residual(params), 1e-13
        ),
        CheckResult(
            "partition_invariance", check_partition_invariance(params, w, cap), 1e-12
        ),
        CheckResult(
            "reduced_embedding",
            reduced_embedding_residual(params, gamma, w, cap),
            1e-10,
        ),
        CheckResult(
            "oracle_equivalence",
            compare_full_reduced(params, gamma, w, times, cap),
            1e-9,
        ),
        CheckResult(
            "vertex_independence",
            compare_marked_vertices(params, gamma, w, w2, times, cap),
            1e-10,
        ),
    )
    return ValidationReport(label=f"J({params.n},{params.k})", checks=checks)
