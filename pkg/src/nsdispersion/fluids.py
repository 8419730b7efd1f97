"""Fluid property database.

A database is a UTF-8 JSON document::

    {"schema_version": 1,
     "fluids": [{"name": "air", "rho": 1.225, "mu": 1.81e-5, "c": 340.0,
                 "lambda": 0.026, "T": 298.0, "Cv": 717.0, "gamma": 1.4,
                 "provenance": {"rho": "paper-table", "T": "standard-reference", ...}}]}

Unknown keys are rejected unless ``lenient=True``.  Each field may carry a
provenance tag; untagged fields are ``user-supplied``.  Only ``rho``, ``mu``,
``c`` and ``lambda`` may be tagged ``paper-table``: the bundled seed data
completes the tabulated transport data with reference values of ``T``,
``Cv`` and ``gamma``, which are tagged ``standard-reference``.

The default database is the bundled seed file unless the environment
variable ``NSDISPERSION_DB`` points elsewhere.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .dispersion import acoustic_scales
from .errors import DatabaseParseError, DatabaseValidationError, DomainError
from .thermo import FluidState, derive_coefficients, validate_identities

SCHEMA_VERSION = 1
ENV_DB = "NSDISPERSION_DB"

NUMERIC_FIELDS = ("rho", "mu", "c", "lambda", "T", "Cv", "gamma")
TABLE_FIELDS = frozenset({"rho", "mu", "c", "lambda"})
PROVENANCE_TAGS = frozenset({"paper-table", "user-supplied", "standard-reference"})
_RECORD_KEYS = frozenset(("name", "provenance") + NUMERIC_FIELDS)
_TOP_KEYS = frozenset({"schema_version", "fluids"})

#: Printed viscous lengths mu / (rho c) [m] and the tolerance for agreement.
PRINTED_VISCOUS_LENGTH = {
    "air": 4.3e-7,
    "freon": 2.3e-10,
    "water": 6e-10,
    "honey": 4.7e-6,
    "mercury": 7.6e-11,
}
VISCOUS_LENGTH_TOLERANCE = 0.05
#: Printed thermal lengths lambda / (rho Cp c) [m].
PRINTED_THERMAL_LENGTH = {"air": 6.6e-8, "water": 9.6e-11}
THERMAL_LENGTH_TOLERANCE = 0.10


@dataclass(frozen=True)
class FluidRecord:
    name: str
    rho: float
    mu: float
    c: float
    lam: float
    T: float
    Cv: float
    gamma: float
    provenance: dict = field(default_factory=dict, compare=True, hash=False)

    def to_state(self) -> FluidState:
        return FluidState(rho=self.rho, T=self.T, mu=self.mu, lam=self.lam, Cv=self.Cv, gamma=self.gamma, c=self.c)

    def value(self, key: str) -> float:
        return self.lam if key == "lambda" else getattr(self, key)

    def to_json(self) -> dict:
        out = {"name": self.name}
        for key in NUMERIC_FIELDS:
            out[key] = self.value(key)
        out["provenance"] = dict(self.provenance)
        return out


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _record_from_json(entry, index, lenient, seen):
    locus = f"fluids[{index}]"
    if not isinstance(entry, dict):
        raise DatabaseValidationError("record must be an object", locus)
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise DatabaseValidationError("required non-empty string", f"{locus}.name")
    locus = f"fluids[{index}] ({name})"
    if name in seen:
        raise DatabaseValidationError(f"duplicate fluid name {name!r}", f"{locus}.name")
    unknown = sorted(set(entry) - _RECORD_KEYS)
    if unknown and not lenient:
        raise DatabaseValidationError(f"unknown field(s) {', '.join(unknown)}", locus)
    values = {}
    for key in NUMERIC_FIELDS:
        if key not in entry:
            raise DatabaseValidationError("required", f"{locus}.{key}")
        value = entry[key]
        if not _is_number(value) or not math.isfinite(value):
            raise DatabaseValidationError(f"must be a finite number, got {value!r}", f"{locus}.{key}")
        values[key] = float(value)
    provenance = entry.get("provenance", {})
    if not isinstance(provenance, dict):
        raise DatabaseValidationError("must be an object", f"{locus}.provenance")
    tags = {}
    for key in NUMERIC_FIELDS:
        tag = provenance.get(key, "user-supplied")
        if tag not in PROVENANCE_TAGS:
            raise DatabaseValidationError(
                f"unknown tag {tag!r} (expected one of {', '.join(sorted(PROVENANCE_TAGS))})",
                f"{locus}.provenance.{key}",
            )
        if tag == "paper-table" and key not in TABLE_FIELDS:
            raise DatabaseValidationError("only rho, mu, c and lambda can come from the table", f"{locus}.provenance.{key}")
        tags[key] = tag
    extra_tags = sorted(set(provenance) - set(NUMERIC_FIELDS))
    if extra_tags and not lenient:
        raise DatabaseValidationError(f"provenance for unknown field(s) {', '.join(extra_tags)}", f"{locus}.provenance")
    record = FluidRecord(
        name=name,
        rho=values["rho"],
        mu=values["mu"],
        c=values["c"],
        lam=values["lambda"],
        T=values["T"],
        Cv=values["Cv"],
        gamma=values["gamma"],
        provenance=tags,
    )
    try:
        state = record.to_state()
    except DomainError as exc:
        key = "lambda" if exc.field == "lam" else exc.field
        raise DatabaseValidationError(str(exc), f"{locus}.{key}") from None
    report = validate_identities(state, derive_coefficients(state))
    if not report.ok:
        raise DatabaseValidationError(f"thermodynamic identities violated: {', '.join(report.flagged)}", locus)
    return record


def parse_database(document, lenient: bool = False) -> list[FluidRecord]:
    """Validate an already-decoded JSON object tree."""
    if not isinstance(document, dict):
        raise DatabaseValidationError("top level must be an object", "$")
    unknown = sorted(set(document) - _TOP_KEYS)
    if unknown and not lenient:
        raise DatabaseValidationError(f"unknown top-level field(s) {', '.join(unknown)}", "$")
    if "schema_version" not in document:
        raise DatabaseValidationError("required", "schema_version")
    if document["schema_version"] != SCHEMA_VERSION:
        raise DatabaseValidationError(
            f"unsupported schema version {document['schema_version']!r} (expected {SCHEMA_VERSION})", "schema_version"
        )
    fluids = document.get("fluids")
    if not isinstance(fluids, list):
        raise DatabaseValidationError("required list", "fluids")
    records = []
    seen = set()
    for index, entry in enumerate(fluids):
        record = _record_from_json(entry, index, lenient, seen)
        seen.add(record.name)
        records.append(record)
    return records


def load_database(source, lenient: bool = False) -> list[FluidRecord]:
    """Load and validate a database.

    ``source`` is JSON text (``str``), a path (``os.PathLike``), a binary or
    text file object, or an already-decoded ``dict``.
    """
    if isinstance(source, dict):
        return parse_database(source, lenient)
    if isinstance(source, os.PathLike):
        text = Path(source).read_text(encoding="utf-8")
    elif hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        text = source
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatabaseParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return parse_database(document, lenient)


def dump_database(records: Iterable[FluidRecord]) -> str:
    document = {"schema_version": SCHEMA_VERSION, "fluids": [r.to_json() for r in records]}
    return json.dumps(document, indent=2) + "\n"


def default_database_path() -> Path:
    env = os.environ.get(ENV_DB)
    if env:
        return Path(env)
    return Path(str(resources.files("nsdispersion") / "data" / "fluids.json"))


def load_default_database(path=None, lenient: bool = False) -> list[FluidRecord]:
    return load_database(Path(path) if path is not None else default_database_path(), lenient)


def find(records: Iterable[FluidRecord], name: str) -> FluidRecord:
    for record in records:
        if record.name == name:
            return record
    raise KeyError(name)


@dataclass(frozen=True)
class PrintedLengthCheck:
    name: str
    quantity: str
    computed: float
    printed: float
    rel_deviation: float
    tolerance: float

    @property
    def status(self) -> str:
        return "ok" if self.rel_deviation <= self.tolerance else "discrepant"


def printed_length_checks(records: Iterable[FluidRecord]) -> list[PrintedLengthCheck]:
    """Recompute the tabulated viscous and thermal lengths from raw rows.

    Records with no printed counterpart are skipped.  The thermal length uses
    the record's ``Cp = gamma Cv``.
    """
    out = []
    for record in records:
        state = record.to_state()
        coeffs = derive_coefficients(state)
        if record.name in PRINTED_VISCOUS_LENGTH:
            computed = acoustic_scales(state, coeffs, 1.0).Kn
            printed = PRINTED_VISCOUS_LENGTH[record.name]
            out.append(
                PrintedLengthCheck(record.name, "mu/(rho c)", computed, printed, abs(computed - printed) / printed, VISCOUS_LENGTH_TOLERANCE)
            )
        if record.name in PRINTED_THERMAL_LENGTH:
            computed = acoustic_scales(state, coeffs, 1.0).Kn_th
            printed = PRINTED_THERMAL_LENGTH[record.name]
            out.append(
                PrintedLengthCheck(
                    record.name, "lambda/(rho Cp c)", computed, printed, abs(computed - printed) / printed, THERMAL_LENGTH_TOLERANCE
                )
            )
    return out
