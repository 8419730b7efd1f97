"""Invariant battery behind ``nsdispersion verify``.

Each check returns a :class:`CheckResult`; the report is a deterministic
function of the database and the seed (fixed-format numbers, no timings).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .dispersion import build_cubic, thermal_length
from .errors import DispersionError
from .fluids import FluidRecord, printed_length_checks
from .oracle import build_system_matrices, evolve_mode, measure_dispersion, mode_frequencies, plan_trace
from .roots import solve_cubic, solve_dispersion, stokes_roots, vieta_check
from .sampling import random_case
from .thermo import derive_coefficients, validate_identities

PASS, WARN, FAIL = "PASS", "WARN", "FAIL"

VIETA_TOLERANCE = 1e-10
ORACLE_TOLERANCE = 1e-10
TIME_DOMAIN_TOLERANCE = 1e-6
DISSIPATIVITY_TOLERANCE = 1e-10
EULER_TOLERANCE = 1e-12
STOKES_TOLERANCE = 1e-11

#: Wavenumbers [1/m] probed for every database fluid.
FLUID_WAVENUMBERS = (1e2, 1e4, 1e6)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str

    def line(self) -> str:
        return f"{self.status} {self.name}: {self.detail}"


def multiset_distance(a, b) -> float:
    """Largest pairwise distance under the best matching of two 3-element sets."""
    a = list(a)
    return min(max(abs(x - y) for x, y in zip(perm, b)) for perm in itertools.permutations(a))


def _guard(name, fn):
    try:
        return fn()
    except DispersionError as exc:
        return CheckResult(name, FAIL, f"{type(exc).__name__}: {exc}")


def check_vieta(rng, n=200):
    worst = 0.0
    worst_product = 0.0
    for _ in range(n):
        fluid, k = random_case(rng)
        coeffs = derive_coefficients(fluid)
        poly = build_cubic(fluid, coeffs, k)
        xs = solve_cubic(poly)
        worst = max(worst, *vieta_check(poly, xs))
        expected = 1.5j * k * thermal_length(fluid, coeffs) * fluid.c**2
        R = max(abs(x) for x in xs)
        worst_product = max(worst_product, abs(np.prod(xs) - expected) / R**3)
    ok = worst < VIETA_TOLERANCE and worst_product < VIETA_TOLERANCE
    return CheckResult(
        "vieta", PASS if ok else FAIL, f"{n} cases, max residual {worst:.3e}, product vs +i3ka1c^2/(2Pr) {worst_product:.3e}"
    )


def check_oracle(rng, n=100):
    worst = 0.0
    for _ in range(n):
        fluid, k = random_case(rng)
        coeffs = derive_coefficients(fluid)
        exact = solve_dispersion(fluid, coeffs, k).omegas
        oracle = mode_frequencies(build_system_matrices(fluid, coeffs), k)
        worst = max(worst, multiset_distance(oracle, exact) / np.max(np.abs(exact)))
    return CheckResult("oracle-equivalence", PASS if worst < ORACLE_TOLERANCE else FAIL, f"{n} cases, max relative {worst:.3e}")


def check_time_domain(rng, n=5):
    worst = 0.0
    for _ in range(n):
        fluid, k = random_case(rng, kn_range=(1e-3, 0.3), pr_range=(0.1, 10.0))
        coeffs = derive_coefficients(fluid)
        mats = build_system_matrices(fluid, coeffs)
        exact = solve_dispersion(fluid, coeffs, k).omegas
        t_end, steps, every = plan_trace(mats, k, fluid.c)
        W0 = np.linalg.solve(mats.energy_transform, rng.normal(size=3) + 1j * rng.normal(size=3))
        fit = measure_dispersion(evolve_mode(mats, k, W0, t_end, steps, every))
        worst = max(worst, _per_mode_relative(fit.omegas, exact))
    return CheckResult("time-domain", PASS if worst < TIME_DOMAIN_TOLERANCE else FAIL, f"{n} cases, max relative {worst:.3e}")


def _per_mode_relative(fitted, exact):
    fitted = list(fitted)
    if len(fitted) != 3:
        return np.inf
    best = min(itertools.permutations(fitted), key=lambda p: sum(abs(x - y) for x, y in zip(p, exact)))
    return max(abs(x - y) / abs(y) for x, y in zip(best, exact))


def check_dissipativity(rng, n=200):
    worst = -np.inf
    for _ in range(n):
        fluid, k = random_case(rng, kn_range=(1e-4, 3.0))
        coeffs = derive_coefficients(fluid)
        omegas = solve_dispersion(fluid, coeffs, k).omegas
        worst = max(worst, np.max(omegas.imag) / (k * fluid.c))
    return CheckResult(
        "dissipativity", PASS if worst <= DISSIPATIVITY_TOLERANCE else FAIL, f"{n} cases, max Im(omega)/(k c) {worst:.3e}"
    )


def check_euler(rng, n=50):
    worst = 0.0
    for _ in range(n):
        fluid, k = random_case(rng, mu_zero=True, lam_zero=True)
        coeffs = derive_coefficients(fluid)
        xs = solve_cubic(build_cubic(fluid, coeffs, k))
        worst = max(worst, multiset_distance(xs, [0.0, fluid.c, -fluid.c]) / fluid.c)
    return CheckResult("euler-limit", PASS if worst < EULER_TOLERANCE else FAIL, f"{n} cases, max error/c {worst:.3e}")


def check_stokes(rng, n=50):
    worst = 0.0
    for _ in range(n):
        fluid, k = random_case(rng, kn_range=(1e-4, 0.5), lam_zero=True)
        coeffs = derive_coefficients(fluid)
        closed = stokes_roots(fluid, coeffs, k).xs
        xs = solve_cubic(build_cubic(fluid, coeffs, k))
        worst = max(worst, multiset_distance(xs, closed) / np.max(np.abs(closed)))
    return CheckResult("stokes-closed-form", PASS if worst < STOKES_TOLERANCE else FAIL, f"{n} cases, max relative {worst:.3e}")


def check_identities(rng, n=200):
    worst = 0.0
    for _ in range(n):
        fluid, _ = random_case(rng)
        worst = max(worst, validate_identities(fluid, derive_coefficients(fluid)).max_rel_residual)
    return CheckResult("thermo-identities", PASS if worst < 1e-12 else FAIL, f"{n} states, max relative residual {worst:.3e}")


def check_fluid(record: FluidRecord) -> list[CheckResult]:
    name = f"fluid:{record.name}"
    fluid = record.to_state()
    coeffs = derive_coefficients(fluid)
    report = validate_identities(fluid, coeffs)
    results = [
        CheckResult(
            f"{name}:identities",
            PASS if report.ok else FAIL,
            f"max relative residual {report.max_rel_residual:.3e}" + ("" if report.ok else f" flagged {report.flagged}"),
        )
    ]
    mats = build_system_matrices(fluid, coeffs)
    for k in FLUID_WAVENUMBERS:

        def run(k=k):
            rs = solve_dispersion(fluid, coeffs, k)
            vieta = max(rs.vieta_residuals)
            omegas = rs.omegas
            oracle = multiset_distance(mode_frequencies(mats, k), omegas) / np.max(np.abs(omegas))
            growth = np.max(omegas.imag) / (k * fluid.c)
            ok = vieta < VIETA_TOLERANCE and oracle < ORACLE_TOLERANCE and growth <= DISSIPATIVITY_TOLERANCE
            flags = "" if rs.regime.continuum_ok else " (Kn above critical)"
            return CheckResult(
                f"{name}:k={k:.0e}",
                PASS if ok else FAIL,
                f"vieta {vieta:.3e}, oracle {oracle:.3e}, max Im(omega)/(k c) {growth:.3e}{flags}",
            )

        results.append(_guard(f"{name}:k={k:.0e}", run))
    return results


def check_printed_lengths(records: Iterable[FluidRecord]) -> list[CheckResult]:
    out = []
    for check in printed_length_checks(records):
        status = PASS if check.status == "ok" else WARN
        out.append(
            CheckResult(
                f"printed-length:{check.name}:{check.quantity}",
                status,
                f"computed {check.computed:.3e} m, printed {check.printed:.3e} m, deviation {100 * check.rel_deviation:.1f}%"
                + ("" if status == PASS else " (documented discrepancy)"),
            )
        )
    return out


GLOBAL_CHECKS: tuple[Callable, ...] = (
    check_identities,
    check_euler,
    check_stokes,
    check_vieta,
    check_oracle,
    check_dissipativity,
    check_time_domain,
)


def run_battery(records: list[FluidRecord], seed: int = 0, fluid: Optional[str] = None) -> list[CheckResult]:
    """All checks.  ``fluid`` restricts the per-fluid part to one record."""
    rng = np.random.default_rng(seed)
    results = []
    for check in GLOBAL_CHECKS:
        results.append(_guard(check.__name__.removeprefix("check_"), lambda check=check: check(rng)))
    selected = records if fluid in (None, "all") else [r for r in records if r.name == fluid]
    for record in selected:
        results.extend(check_fluid(record))
    results.extend(check_printed_lengths(selected))
    return results


def format_report(results: list[CheckResult], seed: int) -> str:
    counts = {s: sum(r.status == s for r in results) for s in (PASS, WARN, FAIL)}
    lines = [f"nsdispersion verify (seed {seed})"]
    lines.extend(r.line() for r in results)
    lines.append(f"summary: {counts[PASS]} pass, {counts[WARN]} warn, {counts[FAIL]} fail")
    return "\n".join(lines) + "\n"
