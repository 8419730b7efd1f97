"""Cubic dispersion polynomial of the linearized Navier-Stokes system.

For a plane wave ``exp(i(kx - omega t))`` with real ``k`` the phase variable
``X = omega / k`` satisfies the monic complex cubic

    P(X) = X**3 + 2i k a1 (1 + 3 gamma / (4 Pr)) X**2
           - (c**2 + 3 gamma a1**2 k**2 / Pr) X - 3i k a1 c**2 / (2 Pr)

with ``a1 = 2 mu / (3 rho)``.  It splits as
``P(X) = X Q(X) + i k a1 (3 gamma / (2 Pr)) Q_T(X)`` where ``Q`` and ``Q_T``
are the adiabatic and isothermal quadratics.

Every ``a1 / Pr`` product is evaluated as the thermal length
``2 lambda / (3 rho Cp)`` so that both degenerate limits (``lambda = 0``,
``Pr = inf``; ``mu = 0``, ``Pr = 0``) are exact rather than limits of large
or small numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConsistencyError, DomainError
from .thermo import DerivedCoefficients, FluidState

#: Critical Knudsen number above which the continuum description lapses.
KN_CRITICAL = 1e-2

#: Relative tolerance of the build-time cross-check between coefficient forms.
DUAL_FORM_TOLERANCE = 1e-12


class Regime(str, Enum):
    EULER = "euler"
    STOKES = "stokes"
    NONVISCOUS = "nonviscous"
    GENERAL = "general"


@dataclass(frozen=True)
class AcousticScales:
    """Stokes attenuation scales and Knudsen numbers at one wavenumber."""

    a1: float
    a: float
    Kn: float
    Kn_th: float


@dataclass(frozen=True)
class RegimeInfo:
    regime: Regime
    continuum_ok: bool
    overdamped_acoustic: bool
    overdamped_isothermal: bool


def _check_k(k):
    if not (isinstance(k, (int, float, np.floating)) and math.isfinite(k) and k > 0):
        raise DomainError(f"wavenumber k must be > 0, got {k!r}", "k")
    return float(k)


def thermal_length(fluid: FluidState, coeffs: DerivedCoefficients) -> float:
    """``a1 / Pr = 2 lambda / (3 rho Cp)`` [m**2/s], finite in every regime."""
    return 2.0 * fluid.lam / (3.0 * fluid.rho * coeffs.Cp)


def inverse_prandtl(fluid: FluidState, coeffs: DerivedCoefficients) -> float:
    """``1/Pr``: 0 when ``lambda = 0``, ``inf`` when only ``mu`` vanishes."""
    if fluid.lam == 0:
        return 0.0
    if fluid.mu == 0:
        return math.inf
    return fluid.lam / (fluid.mu * coeffs.Cp)


def acoustic_scales(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> AcousticScales:
    k = _check_k(k)
    a1 = 2.0 * fluid.mu / (3.0 * fluid.rho)
    return AcousticScales(
        a1=a1,
        a=a1 * k,
        Kn=k * a1 * 1.5 / fluid.c,
        Kn_th=k * fluid.lam / (fluid.rho * coeffs.Cp * fluid.c),
    )


@dataclass(frozen=True)
class QuadraticFactor:
    """``X**2 + 2i k a1 X - target**2`` with target ``c`` (adiabatic) or ``cT``."""

    kind: str
    b1: complex
    b0: complex
    ka1: float
    speed_sq: float

    def __call__(self, X):
        return X * X + self.b1 * X + self.b0

    def derivative(self, X):
        return 2.0 * X + self.b1

    @property
    def reduced_speed(self) -> complex:
        """``sqrt(target**2 - (k a1)**2)``, principal branch."""
        return cmath.sqrt(self.speed_sq - self.ka1**2)

    def roots(self) -> tuple[complex, complex]:
        """``(-i k a1 - c(k), -i k a1 + c(k))``."""
        s = self.reduced_speed
        return (-1j * self.ka1 - s, -1j * self.ka1 + s)


@dataclass(frozen=True)
class CubicDispersion:
    """Monic cubic ``X**3 + b2 X**2 + b1 X + b0`` in ``X = omega / k``."""

    b2: complex
    b1: complex
    b0: complex
    k: float
    scales: AcousticScales
    fluid: FluidState
    coeffs: DerivedCoefficients

    @property
    def coefficients(self) -> np.ndarray:
        """``[1, b2, b1, b0]`` highest degree first."""
        return np.array([1.0, self.b2, self.b1, self.b0], dtype=complex)

    def __call__(self, X):
        return ((X + self.b2) * X + self.b1) * X + self.b0

    def derivative(self, X):
        return (3.0 * X + 2.0 * self.b2) * X + self.b1

    def term_scale(self, X) -> float:
        """Sum of term magnitudes at ``X``; the rounding scale of ``P(X)``."""
        ax = abs(X)
        return ax**3 + abs(self.b2) * ax**2 + abs(self.b1) * ax + abs(self.b0)

    @property
    def coupling(self) -> complex:
        """Weight of ``Q_T`` in the factorization, ``i k a1 3 gamma / (2 Pr)``."""
        th = thermal_length(self.fluid, self.coeffs)
        return 1j * self.k * th * 1.5 * self.fluid.gamma

    def factorization_residual(self, X, Q: QuadraticFactor, QT: QuadraticFactor):
        return abs(self(X) - (X * Q(X) + self.coupling * QT(X)))


def _ns1d_coefficients(fluid, coeffs, k):
    a1 = 2.0 * fluid.mu / (3.0 * fluid.rho)
    th = thermal_length(fluid, coeffs)
    g, c2 = fluid.gamma, fluid.c**2
    b2 = 2j * k * (a1 + 0.75 * g * th)
    b1 = -(c2 + 3.0 * g * a1 * th * k * k) + 0j
    b0 = -1.5j * k * th * c2
    return b2, b1, b0


def _rdns_coefficients(fluid, coeffs, k):
    rho, mu, lam, Cv = fluid.rho, fluid.mu, fluid.lam, fluid.Cv
    b2 = 1j * k / rho * (4.0 * mu / 3.0 + lam / Cv)
    b1 = -(fluid.c**2 + 4.0 * k * k * lam * mu / (3.0 * rho**2 * Cv)) + 0j
    b0 = -1j * k * lam / rho * (fluid.c**2 / Cv - coeffs.Gamma**2 * fluid.T)
    return b2, b1, b0


def dual_form_discrepancy(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> tuple[float, float, float]:
    """Relative differences between the (a1, gamma, Pr) and (lambda, Cv, Gamma) forms."""
    k = _check_k(k)
    primary = _ns1d_coefficients(fluid, coeffs, k)
    check = _rdns_coefficients(fluid, coeffs, k)
    out = []
    for b, b_alt in zip(primary, check):
        scale = max(abs(b), abs(b_alt))
        out.append(abs(b - b_alt) / scale if scale > 0 else 0.0)
    return tuple(out)


def build_cubic(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> CubicDispersion:
    """Dispersion cubic at wavenumber ``k``.

    Raises :class:`ConsistencyError` if the two coefficient forms disagree,
    which means ``coeffs`` was not derived from ``fluid``.
    """
    k = _check_k(k)
    discrepancy = dual_form_discrepancy(fluid, coeffs, k)
    if max(discrepancy) > DUAL_FORM_TOLERANCE:
        raise ConsistencyError(
            "coefficient forms disagree (relative differences "
            + ", ".join(f"{d:.3e}" for d in discrepancy)
            + "); coefficients are inconsistent with the fluid state"
        )
    b2, b1, b0 = _ns1d_coefficients(fluid, coeffs, k)
    return CubicDispersion(b2, b1, b0, k, acoustic_scales(fluid, coeffs, k), fluid, coeffs)


def build_quadratics(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> tuple[QuadraticFactor, QuadraticFactor]:
    """Adiabatic ``Q`` and isothermal ``Q_T`` factors (independent of Pr)."""
    k = _check_k(k)
    ka1 = acoustic_scales(fluid, coeffs, k).a
    c2 = fluid.c**2
    cT2 = c2 / fluid.gamma
    Q = QuadraticFactor("adiabatic", 2j * ka1, -c2 + 0j, ka1, c2)
    QT = QuadraticFactor("isothermal", 2j * ka1, -cT2 + 0j, ka1, cT2)
    return Q, QT


def classify_regime(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> RegimeInfo:
    scales = acoustic_scales(fluid, coeffs, k)
    if fluid.mu == 0 and fluid.lam == 0:
        regime = Regime.EULER
    elif fluid.lam == 0:
        regime = Regime.STOKES
    elif fluid.mu == 0:
        regime = Regime.NONVISCOUS
    else:
        regime = Regime.GENERAL
    ka1_sq = scales.a**2
    return RegimeInfo(
        regime=regime,
        continuum_ok=scales.Kn <= KN_CRITICAL,
        overdamped_acoustic=fluid.c**2 - ka1_sq < 0,
        overdamped_isothermal=fluid.c**2 / fluid.gamma - ka1_sq < 0,
    )
