"""Property-based invariants over randomized fluids and wavenumbers."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from nsdispersion.dispersion import build_cubic
from nsdispersion.oracle import build_system_matrices, mode_frequencies
from nsdispersion.roots import solve_cubic, solve_dispersion, vieta_check
from nsdispersion.thermo import FluidState, derive_coefficients, validate_identities


def log_uniform(lo, hi):
    return st.floats(np.log10(lo), np.log10(hi)).map(lambda e: 10.0**e)


fluids = st.builds(
    FluidState,
    rho=log_uniform(1e-2, 2e4),
    T=log_uniform(10.0, 3000.0),
    mu=st.one_of(st.just(0.0), log_uniform(1e-6, 10.0)),
    lam=st.one_of(st.just(0.0), log_uniform(1e-3, 100.0)),
    Cv=log_uniform(50.0, 2e4),
    gamma=st.floats(1.0, 3.0),
    c=log_uniform(50.0, 5000.0),
)
wavenumbers = log_uniform(1e-2, 1e7)
PROPS = settings(max_examples=150, deadline=None)


@PROPS
@given(fluids)
def test_identities_hold(fluid):
    assert validate_identities(fluid, derive_coefficients(fluid)).max_rel_residual < 1e-12


@PROPS
@given(fluids, wavenumbers)
def test_vieta(fluid, k):
    poly = build_cubic(fluid, derive_coefficients(fluid), k)
    assert max(vieta_check(poly, solve_cubic(poly))) < 1e-10


@PROPS
@given(fluids, wavenumbers)
def test_no_growing_modes(fluid, k):
    omegas = solve_dispersion(fluid, derive_coefficients(fluid), k).omegas
    assert np.max(omegas.imag) <= 1e-10 * k * fluid.c


@PROPS
@given(fluids, wavenumbers)
def test_cubic_matches_eigenvalues(fluid, k):
    d = derive_coefficients(fluid)
    exact = solve_dispersion(fluid, d, k).omegas
    oracle = mode_frequencies(build_system_matrices(fluid, d), k)
    scale = np.max(np.abs(exact))
    assert max(min(abs(o - e) for e in exact) for o in oracle) < 1e-10 * scale


@PROPS
@given(fluids, wavenumbers, st.floats(0.5, 2.0))
def test_roots_scale_with_sound_speed(fluid, k, factor):
    """Rescaling c, mu and lambda by the same factor rescales every root by it."""
    scaled = fluid.replace(c=fluid.c * factor, mu=fluid.mu * factor, lam=fluid.lam * factor, T=fluid.T * factor**2)
    a = solve_dispersion(fluid, derive_coefficients(fluid), k).xs
    b = solve_dispersion(scaled, derive_coefficients(scaled), k).xs
    scale = np.max(np.abs(a)) * factor
    assert np.max(np.abs(b - factor * a)) < 1e-9 * scale


@PROPS
@given(fluids, wavenumbers, st.floats(-500.0, 500.0))
def test_u0_shift_is_galilean(fluid, k, u0):
    rs = solve_dispersion(fluid, derive_coefficients(fluid), k)
    for r, s in zip(rs, rs.shifted(u0)):
        assert s.phase_speed == r.phase_speed + u0
        assert s.attenuation_rate == r.attenuation_rate
