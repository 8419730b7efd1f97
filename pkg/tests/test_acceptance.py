"""Acceptance criteria, one check per criterion.

Each check returns ``(ok, detail)``.  Under pytest every criterion prints a
single ``PASS``/``FAIL`` line (visible in ``pytest -v`` output); running this
file directly prints all thirteen lines and exits non-zero on any failure.
"""

import ast
import itertools
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

import nsdispersion.oracle as oracle_pkg
from nsdispersion.asymptotics import compare, kirchhoff_attenuation, large_pr_expansion, small_pr_expansion
from nsdispersion.dispersion import acoustic_scales, build_cubic
from nsdispersion.fluids import load_default_database, printed_length_checks
from nsdispersion.oracle import build_system_matrices, evolve_mode, measure_dispersion, mode_frequencies, plan_trace
from nsdispersion.roots import BRANCHES, Branch, solve_cubic, solve_dispersion, stokes_roots, vieta_check
from nsdispersion.sampling import random_case, random_state
from nsdispersion.thermo import FluidState, derive_coefficients, ideal_gas_state, validate_identities

SLOPE_TOLERANCE = 0.3


def _rng(criterion):
    return np.random.default_rng(1000 + criterion)


def _multiset_distance(a, b):
    return min(max(abs(x - y) for x, y in zip(p, b)) for p in itertools.permutations(list(a)))


def _slope(x, y):
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def _unit_fluid(Pr, Kn, gamma=1.4):
    """rho = c = Cv = T = mu = 1 with the requested Prandtl and Knudsen numbers."""
    fluid = FluidState(rho=1.0, T=1.0, mu=1.0, lam=gamma / Pr, Cv=1.0, gamma=gamma, c=1.0)
    return fluid, derive_coefficients(fluid), Kn * fluid.rho * fluid.c / fluid.mu


def criterion_1():
    rng = _rng(1)
    worst = 0.0
    for _ in range(100):
        fluid, k = random_case(rng, mu_zero=True, lam_zero=True)
        xs = solve_cubic(build_cubic(fluid, derive_coefficients(fluid), k))
        worst = max(worst, _multiset_distance(xs, [0.0, -fluid.c, fluid.c]) / fluid.c)
    return worst < 1e-12, f"Euler limit, 100 fluids, max |error|/c = {worst:.2e} (< 1e-12)"


def criterion_2():
    rng = _rng(2)
    worst = 0.0
    for _ in range(100):
        fluid, k = random_case(rng, kn_range=(1e-4, 0.5), lam_zero=True)
        d = derive_coefficients(fluid)
        closed = stokes_roots(fluid, d, k).xs
        xs = solve_cubic(build_cubic(fluid, d, k))
        worst = max(worst, _multiset_distance(xs, closed) / np.max(np.abs(closed)))
    return worst < 1e-11, f"Stokes closed form, 100 cases, max relative {worst:.2e} (< 1e-11)"


def criterion_3():
    rng = _rng(3)
    worst = worst_product = 0.0
    for _ in range(1000):
        fluid, k = random_case(rng, kn_range=(1e-4, 3.0))
        d = derive_coefficients(fluid)
        poly = build_cubic(fluid, d, k)
        xs = solve_cubic(poly)
        worst = max(worst, *vieta_check(poly, xs))
        a1 = 2.0 * fluid.mu / (3.0 * fluid.rho)
        expected = 3j * k * a1 * fluid.c**2 / (2.0 * d.Pr)
        worst_product = max(worst_product, abs(np.prod(xs) - expected) / max(abs(x) for x in xs) ** 3)
    ok = worst < 1e-10 and worst_product < 1e-10
    return ok, f"Vieta, 1000 cases, max residual {worst:.2e}, product vs +i3k a1 c^2/(2Pr) {worst_product:.2e} (< 1e-10)"


def _imported_modules(source):
    names = set()
    for node in ast.walk(ast.parse(source)):
        if isinstance(node, ast.ImportFrom):
            names.add(("." * node.level) + (node.module or ""))
        elif isinstance(node, ast.Import):
            names.update(alias.name for alias in node.names)
    return names


def criterion_4():
    rng = _rng(4)
    worst = 0.0
    for _ in range(500):
        fluid, k = random_case(rng, kn_range=(1e-4, 3.0))
        d = derive_coefficients(fluid)
        exact = solve_dispersion(fluid, d, k).omegas
        eig = mode_frequencies(build_system_matrices(fluid, d), k)
        worst = max(worst, _multiset_distance(eig, exact) / np.max(np.abs(exact)))
    oracle_dir = Path(oracle_pkg.__file__).parent
    independent = True
    for path in oracle_dir.glob("*.py"):
        source = path.read_text()
        if any("roots" in name for name in _imported_modules(source)) or "solve_cubic" in source:
            independent = False
    ok = worst < 1e-10 and independent
    return ok, f"eigenvalue oracle, 500 cases, max relative {worst:.2e} (< 1e-10); oracle independent of cubic solver: {independent}"


def criterion_5():
    rng = _rng(5)
    worst = 0.0
    for _ in range(50):
        fluid, k = random_case(rng, kn_range=(1e-3, 0.3), pr_range=(0.1, 10.0))
        d = derive_coefficients(fluid)
        mats = build_system_matrices(fluid, d)
        t_end, steps, every = plan_trace(mats, k, fluid.c)
        W0 = np.linalg.solve(mats.energy_transform, rng.normal(size=3) + 1j * rng.normal(size=3))
        fit = measure_dispersion(evolve_mode(mats, k, W0, t_end, steps, every))
        exact = solve_dispersion(fluid, d, k).omegas
        if len(fit.omegas) != 3:
            return False, f"time-domain fit found {len(fit.omegas)} modes"
        best = min(itertools.permutations(fit.omegas), key=lambda p: sum(abs(x - y) for x, y in zip(p, exact)))
        worst = max(worst, max(abs(x - y) / abs(y) for x, y in zip(best, exact)))
    return worst < 1e-6, f"time-domain oracle, 50 cases, max per-mode relative {worst:.2e} (< 1e-6)"


def criterion_6():
    rng = _rng(6)
    worst = -math.inf
    variants = [{}, {"mu_zero": True}, {"lam_zero": True}, {"mu_zero": True, "lam_zero": True}]
    for variant in variants:
        for _ in range(500):
            fluid, k = random_case(rng, kn_range=(1e-5, 30.0), pr_range=(1e-4, 1e4), **variant)
            omegas = solve_dispersion(fluid, derive_coefficients(fluid), k).omegas
            worst = max(worst, float(np.max(omegas.imag)) / (k * fluid.c))
    return worst <= 1e-10, f"dissipativity, 2000 cases, max Im(omega)/(k c) = {worst:.2e} (<= 1e-10)"


def _convergence(expansion, prs, Kn=0.03):
    errors = {b: [] for b in BRANCHES}
    for Pr in prs:
        fluid, d, k = _unit_fluid(Pr, Kn)
        for c in compare(solve_dispersion(fluid, d, k), expansion(fluid, d, k, 1)):
            errors[c.branch].append(c.abs_error)
    return {b: _slope(prs, e) for b, e in errors.items()}


def criterion_7():
    slopes = _convergence(large_pr_expansion, np.geomspace(1e2, 1e5, 8))
    ok = all(abs(s + 2.0) <= SLOPE_TOLERANCE for s in slopes.values())
    text = ", ".join(f"{b.value} {s:+.3f}" for b, s in slopes.items())
    return ok, f"large-Pr order-1 remainder slopes {text} (target -2 +- 0.3)"


def criterion_8():
    slopes = _convergence(small_pr_expansion, np.geomspace(1e-5, 1e-2, 8))
    acoustic = [slopes[Branch.MINUS], slopes[Branch.PLUS]]
    ok = all(abs(s - 2.0) <= SLOPE_TOLERANCE for s in acoustic)
    return ok, f"small-Pr order-1 remainder slopes minus {acoustic[0]:+.3f}, plus {acoustic[1]:+.3f} (target +2 +- 0.3)"


def criterion_9():
    rng = _rng(9)
    worst_ratio = 0.0
    worst_forms = 0.0
    for _ in range(200):
        fluid, k = random_case(rng, kn_range=(1e-7, 1e-3), mu_zero=True)
        d = derive_coefficients(fluid)
        Kn_th = acoustic_scales(fluid, d, k).Kn_th
        rs = solve_dispersion(fluid, d, k)
        target = -(fluid.gamma - 1.0) * k * fluid.lam / (2.0 * fluid.rho * fluid.gamma * fluid.Cv)
        for b in (Branch.MINUS, Branch.PLUS):
            rel = abs(rs[b].x.imag - target) / abs(target)
            worst_ratio = max(worst_ratio, rel / Kn_th)
        forms = kirchhoff_attenuation(fluid, d, k)
        worst_forms = max(worst_forms, (max(forms) - min(forms)) / abs(target))
    ok = worst_ratio <= 10.0 and worst_forms < 1e-12
    return ok, (
        f"non-viscous attenuation, 200 cases, max relative error / Kn_th = {worst_ratio:.2e} (<= 10); "
        f"Kirchhoff forms spread {worst_forms:.2e} (< 1e-12)"
    )


def criterion_10():
    details = []
    ok = True
    for Pr, reference in ((1e-6, "cT(k)"), (1e6, "c(k)")):
        fluid = FluidState(rho=1.0, T=1.0, mu=1.0, lam=1.4 / Pr, Cv=1.0, gamma=1.4, c=1.0)
        d = derive_coefficients(fluid)
        a1 = 2.0 * fluid.mu / (3.0 * fluid.rho)
        k = 1e-3 * fluid.c / a1
        ka1 = k * a1
        target = math.sqrt((d.cT if reference == "cT(k)" else fluid.c) ** 2 - ka1**2)
        speed = solve_dispersion(fluid, d, k)[Branch.PLUS].x.real
        rel = abs(speed - target) / target
        ok &= rel < 1e-3
        details.append(f"Pr={Pr:.0e} vs {reference} {rel:.2e}")
    return ok, "isothermal/adiabatic limits at k a1/c = 1e-3: " + ", ".join(details) + " (< 1e-3)"


def criterion_11():
    checks = printed_length_checks(load_default_database())
    by_key = {(c.name, c.quantity): c for c in checks}
    ok = True
    parts = []
    for name in ("freon", "water", "mercury"):
        c = by_key[name, "mu/(rho c)"]
        ok &= c.rel_deviation <= 0.05
        parts.append(f"{name} {100 * c.rel_deviation:.1f}%")
    for name in ("air", "honey"):
        c = by_key[name, "mu/(rho c)"]
        ok &= c.status == "discrepant"
        parts.append(f"{name} WARN {100 * c.rel_deviation:.0f}%")
    for name in ("air", "water"):
        c = by_key[name, "lambda/(rho Cp c)"]
        ok &= c.rel_deviation <= 0.10
        parts.append(f"{name} thermal {100 * c.rel_deviation:.1f}%")
    return ok, "table reproduction: " + ", ".join(parts)


def criterion_12():
    rng = _rng(12)
    worst = 0.0
    for _ in range(1000):
        fluid = random_state(rng)
        worst = max(worst, validate_identities(fluid, derive_coefficients(fluid)).max_rel_residual)
    worst_gamma = 0.0
    for _ in range(100):
        gamma = float(rng.uniform(1.01, 2.0))
        fluid = ideal_gas_state(10.0 ** rng.uniform(-27, -24), 10.0 ** rng.uniform(1, 3.5), gamma, 10.0 ** rng.uniform(-2, 2))
        worst_gamma = max(worst_gamma, abs(derive_coefficients(fluid).Gamma - (gamma - 1.0)))
    ok = worst < 1e-12 and worst_gamma < 1e-12
    return ok, f"identities, 1000 states, max residual {worst:.2e}; ideal gas |Gamma - (gamma-1)| {worst_gamma:.2e} (< 1e-12)"


def criterion_13():
    cmd = [sys.executable, "-m", "nsdispersion", "verify", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and len(first.stdout) > 0
    ok = same and first.returncode == 0
    return ok, f"verify --seed 42 twice: byte-identical {same}, exit code {first.returncode}"


CRITERIA = [globals()[f"criterion_{i}"] for i in range(1, 14)]


def _line(number, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} acceptance {number:2d}: {detail}"


@pytest.mark.parametrize("number", range(1, 14))
def test_acceptance(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + _line(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, check in enumerate(CRITERIA, 1):
        ok, detail = check()
        failures += not ok
        print(_line(number, ok, detail))
    sys.exit(1 if failures else 0)
