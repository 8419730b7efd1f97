"""Randomized fluid states for property checks and the ``verify`` battery.

States are drawn through dimensionless targets (Knudsen and Prandtl
numbers) so that a sample covers the regimes of interest regardless of the
dimensional magnitudes, which are log-uniform over wide ranges.
"""

from __future__ import annotations

import numpy as np

from .thermo import FluidState


def _log_uniform(rng, lo, hi):
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def random_state(rng: np.random.Generator, gamma_range=(1.0, 3.0), mu=None, lam=None) -> FluidState:
    """Random valid state; ``mu``/``lam`` default to log-uniform values."""
    rho = _log_uniform(rng, 1e-2, 2e4)
    c = _log_uniform(rng, 50.0, 5000.0)
    return FluidState(
        rho=rho,
        T=_log_uniform(rng, 10.0, 3000.0),
        mu=_log_uniform(rng, 1e-6, 1.0) if mu is None else mu,
        lam=_log_uniform(rng, 1e-3, 10.0) if lam is None else lam,
        Cv=_log_uniform(rng, 50.0, 2e4),
        gamma=float(rng.uniform(*gamma_range)) if gamma_range[1] > gamma_range[0] else gamma_range[0],
        c=c,
    )


def random_case(
    rng: np.random.Generator,
    kn_range=(1e-4, 0.3),
    pr_range=(1e-3, 1e3),
    gamma_range=(1.0, 3.0),
    k_range=(1.0, 1e6),
    mu_zero: bool = False,
    lam_zero: bool = False,
) -> tuple[FluidState, float]:
    """``(fluid, k)`` with ``Kn`` and ``Pr`` log-uniform in the given ranges.

    ``mu_zero``/``lam_zero`` pin the corresponding transport coefficient to
    zero; ``kn_range`` then targets ``Kn_th`` when only ``lambda`` remains.
    """
    base = random_state(rng, gamma_range)
    k = _log_uniform(rng, *k_range)
    kn = _log_uniform(rng, *kn_range)
    pr = _log_uniform(rng, *pr_range)
    cp = base.gamma * base.Cv
    if mu_zero and lam_zero:
        return base.replace(mu=0.0, lam=0.0), k
    if mu_zero:
        # Kn_th = k lam / (rho Cp c)
        return base.replace(mu=0.0, lam=kn * base.rho * cp * base.c / k), k
    mu = kn * base.rho * base.c / k
    lam = 0.0 if lam_zero else mu * cp / pr
    return base.replace(mu=mu, lam=lam), k
