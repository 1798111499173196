"""Input schema, corpus loading and JSON (de)serialization of every report type.

Input records look like::

    {"a": ["0", "0", "1", "-1", "0"], "point": ["0", "0"],
     "conductor": 37, "minimal": true, "degree": 1}

Rationals are strings ``"p/q"`` (plain ints are accepted); floats are rejected
because they cannot carry an exact rational. A corpus file holds one record,
a list of records, or ``{"corpus": [...]}``.

Reals in reports are decimal strings that read back to the identical binary
value at the ``precision`` stored alongside them; big integers are decimal
strings as well.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Optional, Union

from .checks import CheckResult, SuiteReport
from .constants import REAL_FIELDS, AnalysisInput, ConstantsReport
from .curve import CurvePoint, WeierstrassCurve, as_rational
from .eds import EdsTerm
from .errors import BadConductor, EdsError, InputError
from .heights import HeightEnclosure
from .realnum import from_decimal, to_decimal

SCHEMA_KEYS = {"a", "point", "conductor", "minimal", "degree", "label"}


def allow_big_ints() -> None:
    """Lift CPython's int/str conversion cap; sequence terms get long."""
    setter = getattr(sys, "set_int_max_str_digits", None)
    if setter is not None:
        setter(0)


@dataclass(frozen=True)
class CurveInput:
    """One validated input record. ``conductor`` may be absent for sequence work."""

    curve: WeierstrassCurve
    point: CurvePoint
    conductor: Optional[int] = None
    minimal: bool = False
    degree: int = 1
    label: str = ""

    def analysis(self) -> AnalysisInput:
        if self.conductor is None:
            raise BadConductor(f"{self.name}: conductor is required for the bound")
        return AnalysisInput(self.curve, self.point, self.conductor, self.degree, self.minimal)

    @property
    def name(self) -> str:
        return self.label or f"{self.curve.ainvs_str()} P={self.point}"

    def to_dict(self) -> dict:
        out = {"a": [str(c) for c in self.curve.ainvs],
               "point": [str(self.point.x), str(self.point.y)],
               "minimal": self.minimal, "degree": self.degree}
        if self.conductor is not None:
            out["conductor"] = self.conductor
        if self.label:
            out["label"] = self.label
        return out


def _rational(value: Any, where: str):
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not allowed, write the rational as a string")
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_input(record: Any, where: str = "input") -> CurveInput:
    """Validate one record; every error names the invariant that failed."""
    if not isinstance(record, dict):
        raise InputError(f"{where}: expected an object, got {type(record).__name__}")
    unknown = set(record) - SCHEMA_KEYS
    if unknown:
        raise InputError(f"{where}: unknown keys {sorted(unknown)}")
    a = record.get("a")
    if not isinstance(a, list) or len(a) != 5:
        raise InputError(f"{where}: 'a' must be a list of five rationals [a1,a2,a3,a4,a6]")
    coeffs = [_rational(v, f"{where}.a[{i}]") for i, v in enumerate(a)]
    pt = record.get("point")
    if not isinstance(pt, list) or len(pt) != 2:
        raise InputError(f"{where}: 'point' must be a list [x, y]")
    x, y = (_rational(v, f"{where}.point[{i}]") for i, v in enumerate(pt))
    conductor = record.get("conductor")
    if conductor is not None and (isinstance(conductor, bool) or not isinstance(conductor, int)):
        raise InputError(f"{where}: 'conductor' must be an integer")
    minimal = record.get("minimal", False)
    if not isinstance(minimal, bool):
        raise InputError(f"{where}: 'minimal' must be a boolean")
    degree = record.get("degree", 1)
    if degree != 1 or isinstance(degree, bool):
        raise InputError(f"{where}: 'degree' must be 1 (curves over Q)")
    label = record.get("label", "")
    if not isinstance(label, str):
        raise InputError(f"{where}: 'label' must be a string")
    try:
        curve = WeierstrassCurve(*coeffs)
        point = curve.point(x, y)
    except EdsError as exc:
        raise type(exc)(f"{where}: {exc}") from None
    return CurveInput(curve, point, conductor, minimal, degree, label)


def load_records(path: Union[str, Path]) -> list[Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: not valid UTF-8 JSON ({exc})") from None
    if isinstance(data, dict) and "corpus" in data:
        data = data["corpus"]
    if isinstance(data, dict):
        return [data]
    if not isinstance(data, list):
        raise InputError(f"{path}: expected an object, a list or {{\"corpus\": [...]}}")
    return data


def load_corpus(path: Union[str, Path]) -> list[CurveInput]:
    """All records of a file, validated before anything is computed."""
    return [parse_input(r, f"{path}[{i}]") for i, r in enumerate(load_records(path))]


# Conductors from the standard tables; all three models are minimal.
DEFAULT_CORPUS_RECORDS = (
    {"label": "37a1", "a": ["0", "0", "1", "-1", "0"], "point": ["0", "0"],
     "conductor": 37, "minimal": True, "degree": 1},
    {"label": "43a1", "a": ["0", "1", "1", "0", "0"], "point": ["0", "0"],
     "conductor": 43, "minimal": True, "degree": 1},
    {"label": "53a1", "a": ["1", "-1", "1", "0", "0"], "point": ["0", "0"],
     "conductor": 53, "minimal": True, "degree": 1},
)


def default_corpus() -> list[CurveInput]:
    return [parse_input(dict(r), f"default[{i}]") for i, r in enumerate(DEFAULT_CORPUS_RECORDS)]


# ---- reports -------------------------------------------------------------

def term_to_dict(t: EdsTerm) -> dict:
    return {"n": t.n, "A": str(t.A), "B": str(t.B), "primitive_part": str(t.primitive_part),
            "has_primitive_divisor": t.has_primitive_divisor}


def term_from_dict(d: dict) -> EdsTerm:
    return EdsTerm(int(d["n"]), int(d["A"]), int(d["B"]), int(d["primitive_part"]),
                   bool(d["has_primitive_divisor"]))


def enclosure_to_dict(e: HeightEnclosure) -> dict:
    p = e.precision
    return {"lower": to_decimal(e.lower, p), "upper": to_decimal(e.upper, p),
            "doublings_used": e.doublings_used, "c_e_used": to_decimal(e.c_e_used, p),
            "precision": p}


def enclosure_from_dict(d: dict) -> HeightEnclosure:
    p = int(d["precision"])
    return HeightEnclosure(from_decimal(d["lower"], p), from_decimal(d["upper"], p),
                           int(d["doublings_used"]), from_decimal(d["c_e_used"], p), p)


def constants_to_dict(r: ConstantsReport) -> dict:
    p = r.precision
    out = {name: to_decimal(getattr(r, name), p) for name in REAL_FIELDS}
    out.update(s=r.s, S_primes=list(r.S_primes), mode=r.mode, precision=p,
               provenance=dict(r.provenance), diagnostics=dict(r.diagnostics))
    return out


def constants_from_dict(d: dict) -> ConstantsReport:
    p = int(d["precision"])
    reals = {name: from_decimal(d[name], p) for name in REAL_FIELDS}
    return ConstantsReport(**reals, s=int(d["s"]), S_primes=tuple(d["S_primes"]),
                           mode=d["mode"], precision=p, provenance=dict(d["provenance"]),
                           diagnostics=dict(d["diagnostics"]))


def check_to_dict(c: CheckResult) -> dict:
    return {f.name: getattr(c, f.name) for f in fields(c)}


def check_from_dict(d: dict) -> CheckResult:
    return CheckResult(**d)


def suite_to_dict(s: SuiteReport) -> dict:
    return {"passed": s.passed, "total_checked": s.total_checked,
            "results": [check_to_dict(c) for c in s.results]}


def suite_from_dict(d: dict) -> SuiteReport:
    return SuiteReport(tuple(check_from_dict(c) for c in d["results"]))


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
