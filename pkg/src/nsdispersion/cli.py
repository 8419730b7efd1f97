"""Command-line interface.

Subcommands::

    nsdispersion fluids list|show NAME
    nsdispersion roots  (--fluid NAME | --state rho=..,T=..,...) (--k K | --freq F) [--u0 V]
    nsdispersion sweep  (--fluid | --state) --k-min --k-max --points N [--log] [--format csv|json] [--out PATH]
    nsdispersion asym   (--fluid | --state) (--k | --freq) --regime large-pr|small-pr|nonviscous|stokes [--order 0|1]
    nsdispersion verify [--fluid NAME|all] [--seed N]

Exit codes: 0 ok, 1 validation failure, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import asymptotics
from .dispersion import acoustic_scales, classify_regime
from .errors import ConsistencyError, DatabaseError, DomainError, NumericalError, RegimeError
from .fluids import ENV_DB, find, load_default_database
from .roots import BRANCHES, solve_dispersion
from .thermo import FluidState, derive_coefficients
from .verify import FAIL, format_report, run_battery

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3

STATE_KEYS = ("rho", "T", "mu", "lambda", "Cv", "gamma", "c")

#: Requestable sweep quantities and the CSV columns each one contributes.
QUANTITY_COLUMNS = {
    "omega": ("omega_re", "omega_im"),
    "phase_speed": ("phase_speed",),
    "attenuation": ("attenuation_rate",),
    "Kn": ("Kn",),
    "Kn_th": ("Kn_th",),
    "flags": ("continuum_ok", "overdamped"),
    "asym": ("large_pr_error", "small_pr_error"),
}
DEFAULT_QUANTITIES = ("omega", "phase_speed", "attenuation", "Kn", "Kn_th", "flags")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


@dataclass
class Subject:
    name: str
    fluid: FluidState


def parse_state(text: str) -> FluidState:
    """``rho=..,T=..,mu=..,lambda=..,Cv=..,gamma=..,c=..`` to a state."""
    values = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in STATE_KEYS:
            raise UsageError(f"--state: bad entry {item!r} (keys: {', '.join(STATE_KEYS)})")
        try:
            values[key] = float(value)
        except ValueError:
            raise UsageError(f"--state: {key} is not a number: {value!r}") from None
    missing = [k for k in STATE_KEYS if k not in values]
    if missing:
        raise UsageError(f"--state: missing {', '.join(missing)}")
    values["lam"] = values.pop("lambda")
    return FluidState(**values)


def _subject(args) -> Subject:
    if args.state is not None:
        return Subject("inline", parse_state(args.state))
    records = load_default_database(args.db, args.lenient)
    try:
        return Subject(args.fluid, find(records, args.fluid).to_state())
    except KeyError:
        raise UsageError(f"unknown fluid {args.fluid!r} (known: {', '.join(r.name for r in records)})") from None


def _wavenumber(args, fluid: FluidState) -> float:
    if args.k is not None:
        return args.k
    k = 2.0 * math.pi * args.freq / fluid.c
    print(
        f"note: --freq {args.freq!r} Hz converted with the adiabatic estimate k = 2 pi f / c = {k!r} 1/m",
        file=sys.stderr,
    )
    return k


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def sweep_columns(quantities) -> list[str]:
    unknown = [q for q in quantities if q not in QUANTITY_COLUMNS]
    if unknown:
        raise UsageError(f"unknown quantity {', '.join(unknown)} (known: {', '.join(QUANTITY_COLUMNS)})")
    columns = ["k", "branch"]
    for q in QUANTITY_COLUMNS:
        if q in quantities:
            columns.extend(QUANTITY_COLUMNS[q])
    return columns


def _asym_error(fluid, coeffs, k, regime, exact):
    try:
        expansion = asymptotics.expand(fluid, coeffs, k, regime, 1)
    except RegimeError:
        return {b: None for b in BRANCHES}
    return {b: float(abs(exact[b].x - expansion[b])) for b in BRANCHES}


def root_rows(fluid: FluidState, k: float, u0: float = 0.0, columns=None) -> list[dict]:
    """Three rows (one per branch) with the requested columns."""
    columns = columns or sweep_columns(DEFAULT_QUANTITIES)
    coeffs = derive_coefficients(fluid)
    roots = solve_dispersion(fluid, coeffs, k).shifted(u0)
    scales = acoustic_scales(fluid, coeffs, k)
    regime = classify_regime(fluid, coeffs, k)
    asym = {}
    if "large_pr_error" in columns:
        asym["large_pr_error"] = _asym_error(fluid, coeffs, k, "large_pr", roots)
        asym["small_pr_error"] = _asym_error(fluid, coeffs, k, "small_pr", roots)
    rows = []
    for root in roots:
        full = {
            "k": float(k),
            "branch": root.branch.value,
            "omega_re": float(root.omega.real),
            "omega_im": float(root.omega.imag),
            "phase_speed": float(root.phase_speed),
            "attenuation_rate": float(root.attenuation_rate),
            "Kn": scales.Kn,
            "Kn_th": scales.Kn_th,
            "continuum_ok": regime.continuum_ok,
            "overdamped": regime.overdamped_acoustic,
        }
        for key, per_branch in asym.items():
            full[key] = per_branch[root.branch]
        rows.append({c: full[c] for c in columns})
    return rows


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def cmd_fluids(args) -> int:
    records = load_default_database(args.db, args.lenient)
    if args.action == "list":
        for r in records:
            print(r.name)
        return EXIT_OK
    if not args.name:
        raise UsageError("fluids show needs a NAME")
    try:
        record = find(records, args.name)
    except KeyError:
        raise UsageError(f"unknown fluid {args.name!r}") from None
    coeffs = derive_coefficients(record.to_state())
    out = record.to_json()
    out["derived"] = {
        "Gamma": coeffs.Gamma,
        "Cp": coeffs.Cp,
        "cT": coeffs.cT,
        "Pr": coeffs.Pr,
        "alpha": coeffs.alpha,
        "beta": coeffs.beta,
        "epsilon": coeffs.epsilon,
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_roots(args) -> int:
    subject = _subject(args)
    fluid = subject.fluid
    k = _wavenumber(args, fluid)
    coeffs = derive_coefficients(fluid)
    roots = solve_dispersion(fluid, coeffs, k).shifted(args.u0)
    if args.format == "csv":
        columns = sweep_columns(DEFAULT_QUANTITIES)
        _write(rows_to_csv(root_rows(fluid, k, args.u0, columns), columns), args.out)
        return EXIT_OK
    scales = acoustic_scales(fluid, coeffs, k)
    regime = roots.regime
    if args.format == "json":
        doc = {
            "fluid": subject.name,
            "k": k,
            "u0": args.u0,
            "regime": regime.regime.value,
            "continuum_ok": regime.continuum_ok,
            "overdamped_acoustic": regime.overdamped_acoustic,
            "overdamped_isothermal": regime.overdamped_isothermal,
            "Kn": scales.Kn,
            "Kn_th": scales.Kn_th,
            "Pr": None if math.isinf(coeffs.Pr) else coeffs.Pr,
            "roots": [
                {
                    "branch": r.branch.value,
                    "x_re": r.x.real,
                    "x_im": r.x.imag,
                    "omega_re": r.omega.real,
                    "omega_im": r.omega.imag,
                    "phase_speed": r.phase_speed,
                    "attenuation_rate": r.attenuation_rate,
                }
                for r in roots
            ],
            "vieta_residuals": list(roots.vieta_residuals),
        }
        _write(json.dumps(doc, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [
        f"fluid {subject.name}, k = {k:.6g} 1/m, u0 = {args.u0:g} m/s",
        f"regime {regime.regime.value}; Kn = {scales.Kn:.3e}, Kn_th = {scales.Kn_th:.3e}, Pr = {coeffs.Pr:.4g}",
        f"continuum_ok {_fmt(regime.continuum_ok)}, overdamped_acoustic {_fmt(regime.overdamped_acoustic)}, "
        f"overdamped_isothermal {_fmt(regime.overdamped_isothermal)}",
        f"{'branch':<7}{'phase_speed [m/s]':>22}{'attenuation [1/s]':>22}{'omega/k [m/s]':>40}",
    ]
    for r in roots:
        lines.append(f"{r.branch.value:<7}{r.phase_speed:>22.12g}{r.attenuation_rate:>22.12g}{str(r.x):>40}")
    lines.append("vieta residuals " + ", ".join(f"{v:.3e}" for v in roots.vieta_residuals))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def sweep_wavenumbers(k_min: float, k_max: float, points: int, log: bool) -> np.ndarray:
    if not (k_min > 0 and k_max > k_min):
        raise UsageError("sweep needs 0 < k-min < k-max")
    if points < 2:
        raise UsageError("sweep needs --points >= 2")
    ks = np.geomspace(k_min, k_max, points) if log else np.linspace(k_min, k_max, points)
    ks[0], ks[-1] = k_min, k_max
    return ks


def cmd_sweep(args) -> int:
    subject = _subject(args)
    columns = sweep_columns(args.quantities.split(",") if args.quantities else DEFAULT_QUANTITIES)
    ks = sweep_wavenumbers(args.k_min, args.k_max, args.points, args.log)
    rows = []
    for k in ks:
        rows.extend(root_rows(subject.fluid, float(k), args.u0, columns))
    if args.format == "json":
        doc = {"fluid": subject.name, "u0": args.u0, "columns": columns, "rows": rows}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = rows_to_csv(rows, columns)
    _write(text, args.out)
    return EXIT_OK


def cmd_asym(args) -> int:
    subject = _subject(args)
    fluid = subject.fluid
    k = _wavenumber(args, fluid)
    coeffs = derive_coefficients(fluid)
    regime = args.regime.replace("-", "_")
    expansion = asymptotics.expand(fluid, coeffs, k, regime, args.order)
    exact = solve_dispersion(fluid, coeffs, k)
    comparison = asymptotics.compare(exact, expansion)
    validity = {key: (None if isinstance(v, float) and math.isinf(v) else v) for key, v in expansion.validity.items()}
    if args.format == "json":
        doc = {
            "fluid": subject.name,
            "k": k,
            "regime": expansion.regime.value,
            "order": expansion.order,
            "validity": validity,
            "branches": [
                {
                    "branch": c.branch.value,
                    "exact_re": c.exact.real,
                    "exact_im": c.exact.imag,
                    "approx_re": c.approx.real,
                    "approx_im": c.approx.imag,
                    "abs_error": c.abs_error,
                    "rel_error": None if math.isinf(c.rel_error) else c.rel_error,
                }
                for c in comparison
            ],
        }
        _write(json.dumps(doc, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [
        f"fluid {subject.name}, k = {k:.6g} 1/m, expansion {expansion.regime.value} order {expansion.order}",
        "validity " + ", ".join(f"{key}={_fmt(v)}" for key, v in validity.items()),
    ]
    if not expansion.in_window:
        lines.append("warning: outside the asymptotic validity window")
    lines.append(f"{'branch':<7}{'exact omega/k':>44}{'expansion':>44}{'abs error':>12}{'rel error':>12}")
    for c in comparison:
        lines.append(f"{c.branch.value:<7}{str(c.exact):>44}{str(c.approx):>44}{c.abs_error:>12.3e}{c.rel_error:>12.3e}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CheckResult

    try:
        records = load_default_database(args.db, args.lenient)
    except DatabaseError as exc:
        results = [CheckResult("database", FAIL, str(exc))]
    else:
        if args.fluid not in (None, "all") and args.fluid not in {r.name for r in records}:
            raise UsageError(f"unknown fluid {args.fluid!r}")
        results = run_battery(records, seed=args.seed, fluid=args.fluid)
    _write(format_report(results, args.seed), args.out)
    return EXIT_VALIDATION if any(r.status == FAIL for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--db", help=f"fluid database path (default: ${ENV_DB} or the bundled seed file)")
    common.add_argument("--lenient", action="store_true", help="accept unknown fields in the database")

    subject = argparse.ArgumentParser(add_help=False)
    group = subject.add_mutually_exclusive_group(required=True)
    group.add_argument("--fluid", help="fluid name from the database")
    group.add_argument("--state", help="inline state rho=..,T=..,mu=..,lambda=..,Cv=..,gamma=..,c=..")

    wavenumber = argparse.ArgumentParser(add_help=False)
    wgroup = wavenumber.add_mutually_exclusive_group(required=True)
    wgroup.add_argument("--k", type=float, help="wavenumber [1/m]")
    wgroup.add_argument("--freq", type=float, help="frequency [Hz], converted with k = 2 pi f / c")

    parser = _Parser(prog="nsdispersion", description="Sound dispersion and attenuation in viscous, heat-conducting fluids.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fluids", parents=[common], help="list or show database fluids")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_fluids)

    p = sub.add_parser("roots", parents=[common, subject, wavenumber], help="labeled roots at one wavenumber")
    p.add_argument("--u0", type=float, default=0.0, help="background speed added to phase speeds [m/s]")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("sweep", parents=[common, subject], help="roots over a range of wavenumbers")
    p.add_argument("--k-min", type=float, required=True)
    p.add_argument("--k-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--log", action="store_true", help="logarithmic spacing")
    p.add_argument("--u0", type=float, default=0.0)
    p.add_argument("--quantities", help=f"comma-separated subset of {','.join(QUANTITY_COLUMNS)}")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("asym", parents=[common, subject, wavenumber], help="compare exact roots with an expansion")
    p.add_argument("--regime", required=True, choices=["large-pr", "small-pr", "nonviscous", "stokes"])
    p.add_argument("--order", type=int, choices=[0, 1], default=1)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("verify", parents=[common], help="run the invariant battery")
    p.add_argument("--fluid", default="all", help="fluid name or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, RegimeError, DatabaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, ConsistencyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
