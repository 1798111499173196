"""Elliptic divisibility sequences over Q: primitive divisors, certified
canonical heights and the explicit index bound K(E, P)."""

from .arith import FactorEffort, Factorization, bounded_factor, omega, omega_K, rho, valuation
from .constants import AnalysisInput, ConstantsReport, build_constants_report
from .curve import (INFINITY, CurvePoint, ShortCurve, WeierstrassCurve, is_torsion, point_add,
                    scalar_multiply, to_short_form, validate_curve)
from .eds import (EdsTerm, generate_sequence, primitive_part, rank_of_apparition,
                  without_primitive_divisor)
from .errors import (BadConductor, EdsError, FactorizationIncomplete, IncompleteSequence,
                     InputError, MissingPrerequisite, NotPrime, PointNotOnCurve, SingularCurve,
                     TorsionPoint, WidthUnreachable)
from .heights import HeightEnclosure, canonical_height_enclosure
from .lattice import LatticeData, exact_logV1, periods, verify_tau_bounds
from .report import RunReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "AnalysisInput", "BadConductor", "ConstantsReport", "CurvePoint", "EdsError", "EdsTerm",
    "FactorEffort", "Factorization", "FactorizationIncomplete", "HeightEnclosure", "INFINITY",
    "IncompleteSequence", "InputError", "LatticeData", "MissingPrerequisite", "NotPrime",
    "PointNotOnCurve", "RunReport", "ShortCurve", "SingularCurve", "TorsionPoint",
    "WeierstrassCurve", "WidthUnreachable", "bounded_factor", "build_constants_report",
    "canonical_height_enclosure", "exact_logV1", "generate_sequence", "is_torsion", "omega",
    "omega_K", "periods", "point_add", "primitive_part", "rank_of_apparition", "rho",
    "run_suite", "scalar_multiply", "to_short_form", "validate_curve", "valuation",
    "verify_tau_bounds", "without_primitive_divisor",
]
