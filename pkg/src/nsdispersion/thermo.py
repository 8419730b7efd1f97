"""Thermodynamic state of a divariant fluid and its derived coefficients.

The canonical input set is ``(rho, T, mu, lambda, Cv, gamma, c)``.  Every
other coefficient (Grüneisen parameter, isothermal sound speed, ...) is
completed from it through the standard identities

    Gamma**2 * Cv * T = (gamma - 1) * c**2 / gamma,   cT**2 = c**2 / gamma,
    eps = Gamma * rho * Cv,  alpha = -(gamma - 1) / (Gamma * rho),
    beta = -(gamma - 1) * c**2 / (gamma * Gamma * rho).

All quantities are SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError

#: Boltzmann constant [J/K] (exact in the 2019 SI).
BOLTZMANN = 1.380649e-23

#: Residual above which :func:`validate_identities` flags an identity.
IDENTITY_FLAG_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FluidState:
    """Thermodynamic and transport state point of a divariant fluid.

    ``lam`` is the thermal conductivity (``lambda`` is reserved in Python).
    Zero ``mu`` or ``lam`` select degenerate regimes and are not errors.
    """

    rho: float
    T: float
    mu: float
    lam: float
    Cv: float
    gamma: float
    c: float

    def __post_init__(self):
        for name in ("rho", "T", "mu", "lam", "Cv", "gamma", "c"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a real number, got {value!r}", name) from None
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}", name)
            object.__setattr__(self, name, value)
        for name in ("rho", "T", "Cv", "c"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)!r}", name)
        for name in ("mu", "lam"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)!r}", name)
        if self.gamma < 1:
            raise DomainError(f"gamma must be >= 1, got {self.gamma!r}", "gamma")

    def replace(self, **changes) -> "FluidState":
        fields = {name: getattr(self, name) for name in self.__dataclass_fields__}
        fields.update(changes)
        return FluidState(**fields)


@dataclass(frozen=True)
class DerivedCoefficients:
    """Coefficients completed from a :class:`FluidState`.

    ``alpha`` and ``beta`` are ``None`` when ``Gamma == 0`` (``gamma == 1``),
    where they are undefined.  ``Pr`` is ``math.inf`` when the conductivity
    vanishes.
    """

    Gamma: float
    Cp: float
    cT: float
    Pr: float
    alpha: Optional[float]
    beta: Optional[float]
    epsilon: float


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    flagged: bool


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def ok(self) -> bool:
        return not any(check.flagged for check in self.checks)

    @property
    def flagged(self) -> list[str]:
        return [check.name for check in self.checks if check.flagged]

    @property
    def max_rel_residual(self) -> float:
        return max(check.rel_residual for check in self.checks)

    def __getitem__(self, name: str) -> IdentityCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def derive_coefficients(fluid: FluidState) -> DerivedCoefficients:
    """Complete the coefficient set of ``fluid``.

    Gamma is taken on the non-negative branch of
    ``sqrt((gamma - 1) c**2 / (gamma Cv T))``.
    """
    g = fluid.gamma
    Gamma = math.sqrt((g - 1.0) * fluid.c**2 / (g * fluid.Cv * fluid.T))
    Cp = g * fluid.Cv
    cT = fluid.c / math.sqrt(g)
    if fluid.lam == 0:
        Pr = math.inf
    else:
        Pr = fluid.mu * Cp / fluid.lam
    if Gamma > 0:
        alpha = -(g - 1.0) / (Gamma * fluid.rho)
        beta = -(g - 1.0) * fluid.c**2 / (g * Gamma * fluid.rho)
    else:
        alpha = beta = None
    epsilon = Gamma * fluid.rho * fluid.Cv
    return DerivedCoefficients(Gamma=Gamma, Cp=Cp, cT=cT, Pr=Pr, alpha=alpha, beta=beta, epsilon=epsilon)


def _check(name, lhs, rhs, tol=IDENTITY_FLAG_TOLERANCE):
    abs_res = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_res = abs_res / scale if scale > 0 else 0.0
    return IdentityCheck(name, lhs, rhs, abs_res, rel_res, bool(rel_res > tol or not math.isfinite(rel_res)))


def validate_identities(fluid: FluidState, coeffs: DerivedCoefficients) -> IdentityReport:
    """Residuals of the Gibbs-relation identities and the (rho, s) closure.

    The closure check writes ``dp = cT**2 drho + eps dT`` with
    ``dT = (Gamma T / rho) drho + (T / Cv) ds`` and compares the resulting
    coefficients with ``dp = c**2 drho + rho Gamma T ds``.
    ``alpha``/``beta`` checks are skipped when they are undefined.
    """
    g, rho, T, Cv, c = fluid.gamma, fluid.rho, fluid.T, fluid.Cv, fluid.c
    G = coeffs.Gamma
    checks = [
        _check("epsilon = Gamma rho Cv", coeffs.epsilon, G * rho * Cv),
        _check("cT^2 = c^2/gamma", coeffs.cT**2, c**2 / g),
        _check("Gamma^2 Cv T = (gamma-1) c^2/gamma", G**2 * Cv * T, (g - 1.0) * c**2 / g),
    ]
    if coeffs.alpha is not None and G > 0:
        checks.append(_check("alpha = -(gamma-1)/(Gamma rho)", coeffs.alpha, -(g - 1.0) / (G * rho)))
    if coeffs.beta is not None and G > 0:
        checks.append(
            _check("beta = -(gamma-1) c^2/(gamma Gamma rho)", coeffs.beta, -(g - 1.0) * c**2 / (g * G * rho))
        )
    checks.append(_check("dp/drho|s: cT^2 + eps Gamma T/rho = c^2", coeffs.cT**2 + coeffs.epsilon * G * T / rho, c**2))
    checks.append(_check("dp/ds|rho: eps T/Cv = rho Gamma T", coeffs.epsilon * T / Cv, rho * G * T))
    return IdentityReport(tuple(checks))


def ideal_gas_state(m, T, gamma, rho, mu=0.0, lam=0.0) -> FluidState:
    """Ideal-gas state with particle mass ``m`` [kg].

    ``c = sqrt(gamma k_b T / m)`` and ``Cv = k_b / ((gamma - 1) m)``, so the
    Grüneisen parameter of the result is ``gamma - 1``.
    """
    for name, value in (("m", m), ("T", T), ("rho", rho)):
        if not value > 0:
            raise DomainError(f"{name} must be > 0, got {value!r}", name)
    if not gamma > 1:
        raise DomainError(f"gamma must be > 1 for an ideal gas, got {gamma!r}", "gamma")
    c = math.sqrt(gamma * BOLTZMANN * T / m)
    Cv = BOLTZMANN / ((gamma - 1.0) * m)
    return FluidState(rho=rho, T=T, mu=mu, lam=lam, Cv=Cv, gamma=gamma, c=c)


@dataclass(frozen=True)
class MeanFreePath:
    """Molecular mean free path and its relation to the viscous length.

    ``ratio`` is ``length / (mu / (rho c))``.  For an ideal-gas state
    (``c = sqrt(gamma k_b T / m)``) it equals ``sqrt(2 pi gamma)``.
    """

    length: float
    viscous_length: float

    @property
    def ratio(self) -> float:
        return self.length / self.viscous_length

    def knudsen(self, k: float) -> tuple[float, float]:
        """``(length * k, k * mu / (rho c))`` for wavenumber ``k``."""
        return self.length * k, self.viscous_length * k


def mean_free_path(fluid: FluidState, m: float) -> MeanFreePath:
    """Mean free path from ``mu = rho * Lambda * sqrt(k_b T / (2 pi m))``."""
    if fluid.mu <= 0:
        raise DomainError("mean free path needs mu > 0", "mu")
    if not m > 0:
        raise DomainError(f"m must be > 0, got {m!r}", "m")
    thermal_speed = math.sqrt(BOLTZMANN * fluid.T / (2.0 * math.pi * m))
    length = fluid.mu / (fluid.rho * thermal_speed)
    return MeanFreePath(length=length, viscous_length=fluid.mu / (fluid.rho * fluid.c))
