"""Every numeric literal of the explicit constant tower, in one place.

Values are decimal strings so that interval arithmetic encloses them exactly
as printed.
"""

from __future__ import annotations

from typing import NamedTuple


class Literal(NamedTuple):
    value: str
    role: str


LITERALS: dict[str, Literal] = {
    "CE_ADDITIVE": Literal(
        "2.84", "additive term of the explicit bound |h - 2 hhat| <= C_E"),
    "JE_SCALE": Literal(
        "1e15", "denominator scale of the explicit Lang-type lower bound J_E"),
    "JE_LOG_ARG": Literal(
        "104613", "argument factor inside the squared logarithm of J_E"),
    "LINEAR_FORMS_C1": Literal(
        "3.6e41", "c_1 of the lower bound for linear forms in two elliptic logarithms"),
    "C2_FACTOR": Literal(
        "256", "factor in C_2 = 256 c_1 D^6 log V_1 log V_2 (log B')^4"),
    "C3_CLOSED_FORM": Literal(
        "9.21e43", "closed-form leading factor of C_3 as printed (256 c_1 = 9.216e43)"),
    "V_CLOSED_FORM": Literal(
        "11", "closed-form replacement of 6 pi / sqrt(3) = 10.88... in log V_1 and log V_2'"),
    "V2_SHIFT": Literal(
        "6.2", "1/2 + 5.7: bound on |z / tau_1| minus log+|j|"),
    "TAU_SHIFT": Literal(
        "5.7", "|tau| <= 5.7 + log+|j| for tau in the fundamental domain"),
    "C5_ADDITIVE": Literal(
        "4", "additive term in the numerator of C_5"),
}


def lit(name: str) -> str:
    return LITERALS[name].value
