"""Exception types shared across the package.

The CLI maps these onto exit codes: domain/usage problems exit 2,
numerical failures exit 3 (validation-check failures exit 1 but are
reported as data, not raised).
"""


class DomainError(ValueError):
    """An input violates a documented precondition (bad n/k, bad ell, gamma <= 0, ...)."""


class CapacityError(DomainError):
    """A full-Hilbert-space operation was requested above the configured vertex cap."""


class UnsupportedParameterError(DomainError):
    """A closed-form expression was requested for a parameter it is not published for."""


class BracketError(DomainError):
    """A peak-search bracket does not contain an interior maximum."""


class NumericalError(RuntimeError):
    """An iterative numerical procedure failed its convergence or residual contract."""
