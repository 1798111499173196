"""Run reports and the invariant suite over a corpus."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cache import SequenceCache, cached_sequence
from .checks import (SuiteReport, check_apparition, check_divisibility,
                     check_enclosure_consistency, check_helper_bounds, check_lang_bound,
                     check_mode_equivalence, check_valuation_law)
from .constants import (DEFAULT_HHAT_WIDTH, ConstantsReport, build_constants_report,
                        compute_C_E, compute_sigma_JE)
from .eds import EdsTerm, without_primitive_divisor
from .heights import HeightEnclosure, canonical_height_enclosure
from .io import (CurveInput, constants_from_dict, constants_to_dict, enclosure_from_dict,
                 enclosure_to_dict, suite_from_dict, suite_to_dict)
from .realnum import DEFAULT_PREC

DEFAULT_MAX_N = 60
MODE_EQUIVALENCE_N = 48
HELPER_LIMIT = 10 ** 5


def bound_reports(inp: CurveInput, mode: str = "closed-form",
                  prec: int = DEFAULT_PREC) -> tuple[ConstantsReport, ...]:
    """One report when minimality is asserted; otherwise the unknown-minimality
    report (the valid one) followed by the asserted-minimal comparison."""
    analysis = inp.analysis()
    if inp.minimal:
        return (build_constants_report(analysis, mode, prec),)
    return (build_constants_report(analysis, mode, prec, minimal=False),
            build_constants_report(analysis, mode, prec, minimal=True))


def run_suite(corpus: Sequence[CurveInput], max_n: int = DEFAULT_MAX_N,
              prec: int = DEFAULT_PREC, cache: Optional[SequenceCache] = None,
              helper_limit: int = HELPER_LIMIT) -> SuiteReport:
    """Every invariant on every corpus entry; an empty corpus runs nothing."""
    results = []
    for inp in corpus:
        name = inp.name
        E, P = inp.curve, inp.point
        terms = cached_sequence(E, P, max_n, cache)
        results.append(check_divisibility(terms, name))
        results.append(check_apparition(terms, subject=name))
        results.append(check_valuation_law(terms, E, subject=name))
        results.append(check_mode_equivalence(terms, MODE_EQUIVALENCE_N, name))
        c_e = compute_C_E(E, prec)
        results.append(check_enclosure_consistency(E, P, c_e, subject=name))
        _, J_E = compute_sigma_JE(inp.analysis(), prec)
        hhat = canonical_height_enclosure(E, P, DEFAULT_HHAT_WIDTH, c_e, prec=prec)
        results.append(check_lang_bound(J_E, hhat.lower, name))
    if corpus:
        results.append(check_helper_bounds(helper_limit))
    return SuiteReport(tuple(results))


def sequence_summary(terms: Sequence[EdsTerm]) -> dict:
    return {"N": len(terms),
            "without_primitive_divisor": without_primitive_divisor(terms),
            "primitive_parts": [str(t.primitive_part) for t in terms]}


@dataclass(frozen=True)
class RunReport:
    """Everything computed for one input. ``timings`` is informational and
    left out of the serialized form unless asked for, which keeps the JSON
    bit-for-bit stable."""

    input: dict
    sequence: dict
    heights: HeightEnclosure
    constants: tuple[ConstantsReport, ...]
    checks: SuiteReport
    timings: dict = field(default_factory=dict, compare=False)

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {"input": self.input, "sequence": self.sequence,
               "heights": enclosure_to_dict(self.heights),
               "constants": [constants_to_dict(c) for c in self.constants],
               "checks": suite_to_dict(self.checks)}
        if with_timings:
            out["timings"] = dict(self.timings)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        return cls(input=d["input"], sequence=d["sequence"],
                   heights=enclosure_from_dict(d["heights"]),
                   constants=tuple(constants_from_dict(c) for c in d["constants"]),
                   checks=suite_from_dict(d["checks"]), timings=dict(d.get("timings", {})))


def build_run_report(inp: CurveInput, max_n: int = DEFAULT_MAX_N, prec: int = DEFAULT_PREC,
                     mode: str = "closed-form", cache: Optional[SequenceCache] = None,
                     helper_limit: int = HELPER_LIMIT) -> RunReport:
    timings = {}
    t0 = time.perf_counter()
    terms = cached_sequence(inp.curve, inp.point, max_n, cache)
    timings["sequence"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    constants = bound_reports(inp, mode, prec)
    c_e = constants[0].C_E
    hhat = canonical_height_enclosure(inp.curve, inp.point, DEFAULT_HHAT_WIDTH, c_e, prec=prec)
    timings["constants"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    checks = run_suite([inp], max_n, prec, cache, helper_limit)
    timings["checks"] = time.perf_counter() - t0
    return RunReport(inp.to_dict(), sequence_summary(terms), hhat, constants, checks, timings)
