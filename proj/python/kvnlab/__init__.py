"""Koopman-von Neumann mechanics: operator algebra, metrics, and phase-space dynamics."""

from ._kvnlab import (
    __version__,
    ab_levels,
    bessel_j,
    bessel_zero,
    bracket_checks,
    cartan_checks,
    charge_checks,
    count_minima,
    free_moments,
    grassmann_checks,
    hermiticity_residual,
    landau_quantum,
    landau_spectrum,
    metric_eigenvalues,
    metric_matrix,
    two_slit,
)


def all_pass(checks):
    """True when every (name, residual, pass) entry passed."""
    return all(ok for _, _, ok in checks)
