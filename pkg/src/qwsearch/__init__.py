"""Spatial search by continuous-time quantum walk on Johnson graphs J(n,k).

The search Hamiltonian H = -gamma*A - |w><w| preserves the span of the
distance classes around the marked vertex w, so the whole problem lives in
an exact (k+1)-dimensional model.  This package builds both pictures: the
dense full-space one as a verification oracle for small instances, and the
reduced one for simulation and asymptotics at any n, together with the
critical hopping rate gamma_star and the run time pi*n^(k/2)/(2*sqrt(k!)).
"""

from ._kernels import BACKEND
from .coupling import (
    ScaledParams,
    eta_star,
    from_graph,
    gamma_closed_form,
    gamma_star,
    gamma_star_scaled,
    p_ell_scaled,
    r_ell,
)
from .dynamics import (
    EigDecomp,
    ScanResult,
    evolve,
    find_peak,
    run_time,
    scan,
    success_probability,
    sym_eig,
)
from .errors import (
    BracketError,
    CapacityError,
    DomainError,
    NumericalError,
    UnsupportedParameterError,
)
from .johnson import (
    DEFAULT_FULL_CAP,
    DistancePartition,
    GraphParams,
    adjacency_matrix,
    distance_partition,
    full_hamiltonian,
    mask_elements,
    rank_subset,
    subset_mask,
    unrank_subset,
)
from .spectral import (
    ReducedHamiltonian,
    SpectralData,
    eigenvalue,
    multiplicity,
    overlap,
    overlap_sq_factorial,
    reduced_hamiltonian,
    reduced_initial_state,
    reduced_marked_state,
    spectral_data,
)
from .validation import (
    SweepRow,
    ValidationReport,
    asymptotics_row,
    check_partition_invariance,
    check_spectrum,
    compare_full_reduced,
    compare_marked_vertices,
    convergence_sweep,
    validate_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BracketError",
    "CapacityError",
    "DEFAULT_FULL_CAP",
    "DistancePartition",
    "DomainError",
    "EigDecomp",
    "GraphParams",
    "NumericalError",
    "ReducedHamiltonian",
    "ScaledParams",
    "ScanResult",
    "SpectralData",
    "SweepRow",
    "UnsupportedParameterError",
    "ValidationReport",
    "adjacency_matrix",
    "asymptotics_row",
    "check_partition_invariance",
    "check_spectrum",
    "compare_full_reduced",
    "compare_marked_vertices",
    "convergence_sweep",
    "distance_partition",
    "eigenvalue",
    "eta_star",
    "evolve",
    "find_peak",
    "from_graph",
    "full_hamiltonian",
    "gamma_closed_form",
    "gamma_star",
    "gamma_star_scaled",
    "mask_elements",
    "multiplicity",
    "overlap",
    "overlap_sq_factorial",
    "p_ell_scaled",
    "r_ell",
    "rank_subset",
    "reduced_hamiltonian",
    "reduced_initial_state",
    "reduced_marked_state",
    "run_time",
    "scan",
    "spectral_data",
    "subset_mask",
    "success_probability",
    "sym_eig",
    "unrank_subset",
    "validate_instance",
]
