"""Independent verification path for the dispersion roots.

Nothing here imports :mod:`nsdispersion.roots`; the eigenvalue solver and the
time-domain fit must not share code with the cubic solver they check.
"""

from .eigen import eigen3, eigenvector
from .system import SystemMatrices, build_system_matrices, energy_norm, mode_matrix, scaled_mode_matrix
from .timedomain import (
    FitResult,
    ModeTrace,
    evolve_mode,
    exact_trajectory,
    measure_dispersion,
    plan_trace,
    step_norm,
)


def mode_frequencies(mats: SystemMatrices, k: float):
    """``omega = i * eig(M)`` for the mode matrix at ``k``."""
    return 1j * eigen3(mode_matrix(mats, k))


__all__ = [
    "FitResult",
    "ModeTrace",
    "SystemMatrices",
    "build_system_matrices",
    "eigen3",
    "eigenvector",
    "energy_norm",
    "evolve_mode",
    "exact_trajectory",
    "measure_dispersion",
    "mode_frequencies",
    "mode_matrix",
    "plan_trace",
    "scaled_mode_matrix",
    "step_norm",
]
