"""Sound dispersion and attenuation from the linearized compressible Navier-Stokes equations."""

from .asymptotics import (
    Expansion,
    compare,
    expand,
    large_pr_expansion,
    nonviscous_expansion,
    normalized_speed,
    small_pr_expansion,
    stokes_expansion,
    stokes_speed,
)
from .dispersion import (
    AcousticScales,
    CubicDispersion,
    QuadraticFactor,
    RegimeInfo,
    acoustic_scales,
    build_cubic,
    build_quadratics,
    classify_regime,
)
from .fluids import FluidRecord, load_database, load_default_database, printed_length_checks
from .roots import Branch, ModeRoot, RootSet, label_branches, solve_cubic, solve_dispersion, stokes_roots, vieta_check
from .thermo import (
    DerivedCoefficients,
    FluidState,
    derive_coefficients,
    ideal_gas_state,
    mean_free_path,
    validate_identities,
)

__version__ = "0.1.0"

__all__ = [
    "compare",
    "AcousticScales",
    "Branch",
    "CubicDispersion",
    "DerivedCoefficients",
    "Expansion",
    "FluidRecord",
    "FluidState",
    "ModeRoot",
    "QuadraticFactor",
    "RegimeInfo",
    "RootSet",
    "acoustic_scales",
    "build_cubic",
    "build_quadratics",
    "classify_regime",
    "derive_coefficients",
    "expand",
    "ideal_gas_state",
    "label_branches",
    "large_pr_expansion",
    "load_database",
    "load_default_database",
    "mean_free_path",
    "nonviscous_expansion",
    "normalized_speed",
    "small_pr_expansion",
    "solve_cubic",
    "solve_dispersion",
    "stokes_expansion",
    "stokes_roots",
    "stokes_speed",
    "printed_length_checks",
    "validate_identities",
    "vieta_check",
]
