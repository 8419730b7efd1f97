"""Asymptotic expansions of the three dispersion roots.

Four regimes are covered:

``large_pr``
    Perturbation of the Stokes roots ``{0, -i k a1 +- c(k)}`` in ``1/Pr``.
``small_pr``
    Perturbation of the isothermal roots ``-i k a1 +- cT(k)`` in ``Pr``; the
    third root runs off to ``-3i k a1 gamma / (2 Pr)``.
``nonviscous``
    ``mu = 0``: Stokes-Kirchhoff thermal attenuation, first order in ``Kn_th``.
``stokes``
    ``lambda`` ignored: Stokes roots with the non-dispersive speed ``c``
    (order 0) or the small-Kn speed ``c - 2 k**2 mu**2 / (9 rho**2 c)``
    (order 1).

Products ``a1 / Pr`` are always evaluated as ``2 lambda / (3 rho Cp)``.
Expansions are computed outside their validity window as well; the
``in_window`` flag records whether the small parameters are small.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

from .dispersion import KN_CRITICAL, acoustic_scales, classify_regime, inverse_prandtl, thermal_length
from .errors import ConsistencyError, DomainError, RegimeError
from .roots import BRANCHES, Branch, RootSet
from .thermo import DerivedCoefficients, FluidState

#: Prandtl number at or above which the large-Pr expansion is in its window.
LARGE_PR_MIN = 10.0
#: Prandtl number at or below which the small-Pr expansion is in its window.
SMALL_PR_MAX = 0.1
KIRCHHOFF_TOLERANCE = 1e-12


class ExpansionRegime(str, Enum):
    LARGE_PR = "large_pr"
    SMALL_PR = "small_pr"
    NONVISCOUS = "nonviscous"
    STOKES = "stokes"


@dataclass(frozen=True)
class Expansion:
    regime: ExpansionRegime
    order: int
    roots: tuple[complex, complex, complex]
    validity: dict
    c_k: complex
    cT_k: complex
    details: dict = field(default_factory=dict)

    def __getitem__(self, branch) -> complex:
        return self.roots[BRANCHES.index(Branch(branch))]

    @property
    def in_window(self) -> bool:
        return bool(self.validity["in_window"])


def _check_order(order):
    if order not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {order!r}", "order")
    return int(order)


def _context(fluid, coeffs, k):
    scales = acoustic_scales(fluid, coeffs, k)
    ka1 = scales.a
    c_k = cmath.sqrt(fluid.c**2 - ka1**2)
    cT_k = cmath.sqrt(fluid.c**2 / fluid.gamma - ka1**2)
    validity = {
        "Pr": coeffs.Pr,
        "inv_Pr": inverse_prandtl(fluid, coeffs),
        "Kn": scales.Kn,
        "Kn_th": scales.Kn_th,
    }
    return scales, ka1, c_k, cT_k, validity


def large_pr_expansion(fluid: FluidState, coeffs: DerivedCoefficients, k: float, order: int = 1) -> Expansion:
    """Roots for ``Pr >> 1``; remainder ``O(1/Pr**2)``."""
    order = _check_order(order)
    scales, ka1, c_k, cT_k, validity = _context(fluid, coeffs, k)
    if math.isinf(validity["inv_Pr"]):
        raise RegimeError("large-Pr expansion needs mu > 0 when lambda > 0 (Pr = 0 here)")
    if classify_regime(fluid, coeffs, k).overdamped_acoustic:
        raise RegimeError("large-Pr expansion is undefined beyond the acoustic overdamping threshold (k a1 > c)")
    c_k = c_k.real
    minus = -1j * ka1 - c_k
    zero = 0j
    plus = -1j * ka1 + c_k
    if order == 1:
        g = fluid.gamma
        kth = k * thermal_length(fluid, coeffs)
        minus -= 3.0 * (g - 1.0) * kth * (ka1 + 1j * c_k) / (4.0 * c_k)
        plus += 3.0 * (g - 1.0) * kth * (ka1 - 1j * c_k) / (4.0 * c_k)
        zero = -1.5j * kth
    validity["in_window"] = coeffs.Pr >= LARGE_PR_MIN and scales.Kn <= KN_CRITICAL
    return Expansion(ExpansionRegime.LARGE_PR, order, (minus, zero, plus), validity, complex(c_k), cT_k)


def small_pr_expansion(fluid: FluidState, coeffs: DerivedCoefficients, k: float, order: int = 1) -> Expansion:
    """Roots for ``Pr << 1``; remainder ``O(Pr**2)`` on the acoustic branches.

    The entropy branch ``-3i k a1 gamma / (2 Pr)`` is kept at leading order
    (remainder ``O(Pr)``) and is damped.
    """
    order = _check_order(order)
    scales, ka1, c_k, cT_k, validity = _context(fluid, coeffs, k)
    if fluid.mu == 0:
        raise RegimeError("small-Pr expansion is singular for mu = 0 (it divides by k a1)")
    if fluid.lam == 0:
        raise RegimeError("small-Pr expansion needs lambda > 0 (Pr is infinite here)")
    if classify_regime(fluid, coeffs, k).overdamped_isothermal:
        raise RegimeError("small-Pr expansion is undefined beyond the isothermal overdamping threshold (k a1 > cT)")
    cT_k = cT_k.real
    g = fluid.gamma
    minus = -1j * ka1 - cT_k
    plus = -1j * ka1 + cT_k
    zero = -1.5j * k * g * thermal_length(fluid, coeffs)
    if order == 1:
        factor = (g - 1.0) * fluid.c**2 * coeffs.Pr / (3.0 * g * g * ka1 * cT_k)
        minus += factor * (ka1 - 1j * cT_k)
        plus -= factor * (ka1 + 1j * cT_k)
    validity["in_window"] = coeffs.Pr <= SMALL_PR_MAX and scales.Kn <= KN_CRITICAL
    return Expansion(ExpansionRegime.SMALL_PR, order, (minus, zero, plus), validity, c_k, complex(cT_k))


def kirchhoff_attenuation(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> tuple[float, float, float, float]:
    """Four equivalent forms of the thermal (Stokes-Kirchhoff) attenuation ``-omega_I / k``.

    ``(g-1) k lam / (2 rho g Cv)``, ``(g-1) k lam / (2 rho Cp)``,
    ``(g-1) c Kn_th / 2`` and ``(k lam / (2 rho Cp)) (c**2 / cT**2 - 1)``.
    """
    g, rho, lam = fluid.gamma, fluid.rho, fluid.lam
    Kn_th = acoustic_scales(fluid, coeffs, k).Kn_th
    return (
        (g - 1.0) * k * lam / (2.0 * rho * g * fluid.Cv),
        (g - 1.0) * k * lam / (2.0 * rho * coeffs.Cp),
        (g - 1.0) * fluid.c * Kn_th / 2.0,
        k * lam / (2.0 * rho * coeffs.Cp) * (fluid.c**2 / coeffs.cT**2 - 1.0),
    )


def nonviscous_expansion(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> Expansion:
    """Roots for ``mu = 0``, first order in ``Kn_th``."""
    if fluid.mu != 0:
        raise RegimeError(f"nonviscous expansion needs mu = 0, got mu = {fluid.mu!r}")
    if fluid.lam <= 0:
        raise RegimeError("nonviscous expansion needs lambda > 0")
    scales, ka1, c_k, cT_k, validity = _context(fluid, coeffs, k)
    forms = kirchhoff_attenuation(fluid, coeffs, k)
    reference = k * fluid.lam / (2.0 * fluid.rho * coeffs.Cp)
    spread = max(forms) - min(forms)
    if spread > KIRCHHOFF_TOLERANCE * reference:
        raise ConsistencyError(f"Kirchhoff attenuation forms disagree by {spread / reference:.3e} (relative)")
    g = fluid.gamma
    damping = forms[0]
    zero = -1j * k * fluid.lam / (fluid.rho * g * fluid.Cv)
    roots = (-fluid.c - 1j * damping, zero, fluid.c - 1j * damping)
    validity["in_window"] = scales.Kn_th <= KN_CRITICAL
    return Expansion(ExpansionRegime.NONVISCOUS, 1, roots, validity, c_k, cT_k, {"kirchhoff_forms": forms})


def stokes_speed(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> tuple[complex, float]:
    """Exact ``c(k) = sqrt(c**2 - k**2 a1**2)`` and ``c - 2 k**2 mu**2 / (9 rho**2 c)``."""
    ka1 = acoustic_scales(fluid, coeffs, k).a
    exact = cmath.sqrt(fluid.c**2 - ka1**2)
    approx = fluid.c - 2.0 * k**2 * fluid.mu**2 / (9.0 * fluid.rho**2 * fluid.c)
    return exact, approx


def stokes_expansion(fluid: FluidState, coeffs: DerivedCoefficients, k: float, order: int = 1) -> Expansion:
    """Stokes roots with speed ``c`` (order 0) or its small-Kn correction (order 1)."""
    order = _check_order(order)
    scales, ka1, c_k, cT_k, validity = _context(fluid, coeffs, k)
    speed = fluid.c if order == 0 else stokes_speed(fluid, coeffs, k)[1]
    roots = (-1j * ka1 - speed, 0j, -1j * ka1 + speed)
    validity["in_window"] = scales.Kn <= KN_CRITICAL
    return Expansion(ExpansionRegime.STOKES, order, roots, validity, c_k, cT_k)


def expand(fluid: FluidState, coeffs: DerivedCoefficients, k: float, regime, order: int = 1) -> Expansion:
    regime = ExpansionRegime(regime)
    if regime is ExpansionRegime.LARGE_PR:
        return large_pr_expansion(fluid, coeffs, k, order)
    if regime is ExpansionRegime.SMALL_PR:
        return small_pr_expansion(fluid, coeffs, k, order)
    if regime is ExpansionRegime.NONVISCOUS:
        return nonviscous_expansion(fluid, coeffs, k)
    return stokes_expansion(fluid, coeffs, k, order)


def normalized_speed(fluid: FluidState, coeffs: DerivedCoefficients, k: float, regime, form: str = "derived") -> float:
    """Phase speed of the ``plus`` branch in units of ``c`` (large Pr) or ``cT`` (small Pr).

    ``form="derived"`` expands the first-order roots in ``Kn``:

        large Pr:  1 - 2 Kn**2/9 + (g-1) Kn**2 / (3 Pr)
        small Pr:  1 - 2 g Kn**2/9 - (g-1) Pr / (3 g) - 2 (g-1) Kn**2 Pr / 27

    with remainders ``O(Kn**4 + Kn_th**2)`` and ``O(Kn**4 + 1/Kn_th**2)``
    (``Kn_th = Kn / Pr``), so the small-Pr form also needs ``Pr << Kn``.

    ``form="printed"`` returns the historically quoted combinations

        large Pr:  1 - 2 Kn**2/9 + (g-1)/(2 g) Kn/Pr + 2 (g-1)/(9 g) Kn**2/Pr
        small Pr:  1 - 2 Kn**2/9 + (g-1)/(3 g) Pr - 2 (g-1)/27 Kn**2 Pr

    which do not follow from the root expansions beyond ``1 - 2 Kn**2/9``
    and are kept for comparison only.
    """
    regime = ExpansionRegime(regime)
    if form not in ("derived", "printed"):
        raise DomainError(f"form must be 'derived' or 'printed', got {form!r}", "form")
    scales = acoustic_scales(fluid, coeffs, k)
    Kn, Kn_th, g = scales.Kn, scales.Kn_th, fluid.gamma
    if regime is ExpansionRegime.LARGE_PR:
        if fluid.mu == 0 and fluid.lam > 0:
            raise RegimeError("large-Pr speed needs a finite 1/Pr")
        # Kn / Pr == Kn_th, finite in every regime
        if form == "derived":
            return 1.0 - 2.0 * Kn**2 / 9.0 + (g - 1.0) * Kn * Kn_th / 3.0
        return 1.0 - 2.0 * Kn**2 / 9.0 + (g - 1.0) / (2.0 * g) * Kn_th + 2.0 * (g - 1.0) / (9.0 * g) * Kn * Kn_th
    if regime is ExpansionRegime.SMALL_PR:
        if fluid.lam == 0:
            raise RegimeError("small-Pr speed needs lambda > 0")
        Pr = coeffs.Pr
        if form == "derived":
            return 1.0 - 2.0 * g * Kn**2 / 9.0 - (g - 1.0) / (3.0 * g) * Pr - 2.0 * (g - 1.0) / 27.0 * Kn**2 * Pr
        return 1.0 - 2.0 * Kn**2 / 9.0 + (g - 1.0) / (3.0 * g) * Pr - 2.0 * (g - 1.0) / 27.0 * Kn**2 * Pr
    raise RegimeError(f"normalized speed is defined for large_pr and small_pr only, got {regime.value}")


@dataclass(frozen=True)
class BranchComparison:
    branch: Branch
    exact: complex
    approx: complex
    abs_error: float
    rel_error: float


def compare(exact: RootSet, expansion: Expansion) -> tuple[BranchComparison, ...]:
    """Branch-by-branch error of ``expansion`` against exact roots (in ``omega/k`` units)."""
    out = []
    for branch in BRANCHES:
        x = exact[branch].x
        y = expansion[branch]
        err = abs(x - y)
        out.append(BranchComparison(branch, x, y, err, err / abs(x) if x != 0 else (0.0 if err == 0 else math.inf)))
    return tuple(out)
