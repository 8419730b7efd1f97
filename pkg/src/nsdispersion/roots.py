"""Exact roots of the dispersion cubic and their branch labels.

The cubic is solved in closed form (depressed cubic, complex Cardano with
the cancellation-free choice of the square-root sign).  Only the largest
Cardano root is kept: when the roots span many orders of magnitude (deep in
the overdamped regime) the two small ones lose all accuracy to cancellation
in the discriminant, so they are recovered from the quadratic left after
deflation.  Every root is then polished by a few Newton steps.

Branch labels follow the Stokes picture: ``minus`` and ``plus`` are the
counter-propagating acoustic modes and ``zero`` the non-propagating
entropy mode.  Labels come from a minimum-total-distance matching against
reference points, so they are a deterministic function of the root
multiset.

Sign convention: Vieta on the cubic gives the root product
``+3i k a1 c**2 / (2 Pr)``, so the entropy mode is damped
(``Im(omega) < 0``) for every ``Pr``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import numpy as np

from .dispersion import (
    CubicDispersion,
    RegimeInfo,
    acoustic_scales,
    build_cubic,
    classify_regime,
    thermal_length,
)
from .errors import DomainError, RegimeError
from .thermo import DerivedCoefficients, FluidState

_ZETA = cmath.exp(2j * math.pi / 3)
NEWTON_MAX_ITER = 5
NEWTON_TOLERANCE = 1e-13


class Branch(str, Enum):
    MINUS = "minus"
    ZERO = "zero"
    PLUS = "plus"


BRANCHES = (Branch.MINUS, Branch.ZERO, Branch.PLUS)


@dataclass(frozen=True)
class ModeRoot:
    """One labeled root.  ``x = omega / k``; ``u0`` is a reporting offset
    added to the phase speed only (Galilean shift of the background)."""

    branch: Branch
    x: complex
    k: float
    u0: float = 0.0

    @property
    def omega(self) -> complex:
        return self.k * self.x

    @property
    def phase_speed(self) -> float:
        return self.omega.real / self.k + self.u0

    @property
    def attenuation_rate(self) -> float:
        return -self.omega.imag


@dataclass(frozen=True)
class RootSet:
    roots: tuple[ModeRoot, ModeRoot, ModeRoot]
    regime: RegimeInfo
    vieta_residuals: tuple[float, float, float]

    def __getitem__(self, branch) -> ModeRoot:
        branch = Branch(branch)
        for root in self.roots:
            if root.branch is branch:
                return root
        raise KeyError(branch)

    def __iter__(self):
        return iter(self.roots)

    @property
    def k(self) -> float:
        return self.roots[0].k

    @property
    def xs(self) -> np.ndarray:
        return np.array([r.x for r in self.roots])

    @property
    def omegas(self) -> np.ndarray:
        return np.array([r.omega for r in self.roots])

    def shifted(self, u0: float) -> "RootSet":
        """Same roots reported in a frame where the fluid moves at ``u0``."""
        return replace(self, roots=tuple(replace(r, u0=u0) for r in self.roots))


def _coefficients(poly):
    if isinstance(poly, CubicDispersion):
        return complex(poly.b2), complex(poly.b1), complex(poly.b0)
    b2, b1, b0 = poly
    return complex(b2), complex(b1), complex(b0)


def _cardano(b2, b1, b0):
    shift = b2 / 3.0
    p = b1 - b2 * shift
    q = (2.0 * b2 * b2 * b2) / 27.0 - b2 * b1 / 3.0 + b0
    s = cmath.sqrt(0.25 * q * q + p * p * p / 27.0)
    w_plus, w_minus = -0.5 * q + s, -0.5 * q - s
    w = w_plus if abs(w_plus) >= abs(w_minus) else w_minus
    if w == 0:
        return [-shift] * 3
    u = w ** (1.0 / 3.0)
    v = -p / (3.0 * u)
    return [u * _ZETA**j + v * _ZETA ** (-j) - shift for j in range(3)]


def _polish(x, b2, b1, b0):
    def value(z):
        return ((z + b2) * z + b1) * z + b0

    def scale(z):
        az = abs(z)
        return az**3 + abs(b2) * az**2 + abs(b1) * az + abs(b0)

    r = value(x)
    for _ in range(NEWTON_MAX_ITER):
        if abs(r) <= NEWTON_TOLERANCE * scale(x):
            break
        d = (3.0 * x + 2.0 * b2) * x + b1
        if d == 0:
            break
        x_new = x - r / d
        r_new = value(x_new)
        if abs(r_new) >= abs(r):
            break
        x, r = x_new, r_new
    return x


def _deflate(x1, b2, b1, b0):
    """The two roots left once ``x1`` is known, from Vieta."""
    if x1 == 0:
        return 0j, 0j
    product = -b0 / x1
    # two expressions for the sum; take the one with less rounding
    sum_direct = -b2 - x1
    sum_ratio = (b1 - product) / x1
    if max(abs(b1), abs(product)) / abs(x1) < max(abs(b2), abs(x1)):
        total = sum_ratio
    else:
        total = sum_direct
    d = cmath.sqrt(total * total - 4.0 * product)
    q = 0.5 * (total + d) if abs(total + d) >= abs(total - d) else 0.5 * (total - d)
    if q == 0:
        return 0j, 0j
    return q, product / q


def solve_cubic(poly) -> list[complex]:
    """All three roots (with multiplicity) of ``X**3 + b2 X**2 + b1 X + b0``.

    ``poly`` is a :class:`CubicDispersion` or a ``(b2, b1, b0)`` triple.
    """
    b2, b1, b0 = _coefficients(poly)
    x1 = _polish(max(_cardano(b2, b1, b0), key=abs), b2, b1, b0)
    x2, x3 = _deflate(x1, b2, b1, b0)
    return [x1, _polish(x2, b2, b1, b0), _polish(x3, b2, b1, b0)]


def vieta_check(poly, roots: Sequence[complex]) -> tuple[float, float, float]:
    """Normalized Vieta residuals ``|sum + b2|/R, |pairs - b1|/R**2, |prod + b0|/R**3``.

    ``R`` is the larger of the largest root modulus and the coefficient root
    bound ``max(|b2|, |b1|**(1/2), |b0|**(1/3))``.
    """
    b2, b1, b0 = _coefficients(poly)
    x1, x2, x3 = (complex(x) for x in roots)
    R = max(abs(x1), abs(x2), abs(x3), abs(b2), abs(b1) ** 0.5, abs(b0) ** (1.0 / 3.0))
    if R == 0:
        R = 1.0
    return (
        abs(x1 + x2 + x3 + b2) / R,
        abs(x1 * x2 + x1 * x3 + x2 * x3 - b1) / R**2,
        abs(x1 * x2 * x3 + b0) / R**3,
    )


def branch_references(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> tuple[complex, complex, complex]:
    """Reference points ``(minus, zero, plus)`` used for labeling."""
    ka1 = acoustic_scales(fluid, coeffs, k).a
    ck = cmath.sqrt(fluid.c**2 - ka1**2)
    if coeffs.Pr >= 1:
        zero = 0j
    else:
        zero = -1.5j * k * fluid.gamma * thermal_length(fluid, coeffs)
    return (-1j * ka1 - ck, zero, -1j * ka1 + ck)


MATCH_TIE_TOLERANCE = 1e-12


def _match(roots, refs):
    """Minimum total distance assignment of ``roots`` to ``refs``.

    When roots and references are collinear (overdamped, all on the imaginary
    axis) several assignments share the minimum; near-ties are broken by the
    total squared distance, which on a line keeps the ordering of the
    references.  The result is then independent of rounding and of scale.
    """
    canonical = sorted(roots, key=lambda z: (z.real, z.imag))
    scored = []
    for perm in itertools.permutations(canonical):
        dist = [abs(x - r) for x, r in zip(perm, refs)]
        scored.append((sum(dist), sum(d * d for d in dist), perm))
    best = min(c for c, _, _ in scored)
    slack = MATCH_TIE_TOLERANCE * max(best, max(abs(z) for z in itertools.chain(roots, refs)))
    return min((t for t in scored if t[0] <= best + slack), key=lambda t: t[1])[2]


def label_branches(roots: Sequence[complex], fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> RootSet:
    """Attach minus/zero/plus labels to the three roots of the matching cubic."""
    roots = [complex(x) for x in roots]
    if len(roots) != 3:
        raise DomainError(f"expected exactly 3 roots, got {len(roots)}", "roots")
    poly = build_cubic(fluid, coeffs, k)
    refs = branch_references(fluid, coeffs, k)
    ordered = _match(roots, refs)
    k = float(k)
    mode_roots = tuple(ModeRoot(b, x, k) for b, x in zip(BRANCHES, ordered))
    return RootSet(mode_roots, classify_regime(fluid, coeffs, k), vieta_check(poly, ordered))


def solve_dispersion(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> RootSet:
    """Exact labeled roots of the dispersion relation at wavenumber ``k``."""
    poly = build_cubic(fluid, coeffs, k)
    return label_branches(solve_cubic(poly), fluid, coeffs, k)


def stokes_roots(fluid: FluidState, coeffs: DerivedCoefficients, k: float) -> RootSet:
    """Closed-form roots ``{0, -i k a1 +- c(k)}`` of the non-conducting fluid.

    Beyond the overdamped threshold ``c(k)`` is the principal square root of
    a negative number, so all three roots are purely imaginary.
    """
    if fluid.lam != 0:
        raise RegimeError(f"stokes_roots needs lambda = 0, got lambda = {fluid.lam!r}")
    ka1 = acoustic_scales(fluid, coeffs, k).a
    ck = cmath.sqrt(fluid.c**2 - ka1**2)
    pair = (-1j * ka1 - ck, -1j * ka1 + ck)
    # the two roots multiply to -c**2; recover the smaller one from that
    big = max(pair, key=abs)
    small = -(fluid.c**2) / big
    pair = (big, small) if pair[0] is big else (small, big)
    return label_branches([pair[0], 0j, pair[1]], fluid, coeffs, k)
