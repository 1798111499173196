"""Working precision and outward-rounded real arithmetic.

Certified quantities are computed in mpmath's interval context (``iv``),
whose operations round endpoints outward. A bound is then read off the
appropriate endpoint: ``upper`` for quantities used as upper bounds and
``lower`` for lower bounds. mpmath keeps precision in global context state,
so ``working_precision`` is not thread-safe; run parallel work in processes.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from typing import Union

from mpmath import iv, mp
from mpmath.libmp import repr_dps, to_str

DEFAULT_PREC = 128

Interval = type(iv.mpf(0))
RealLike = Union[int, Fraction, str, "mp.mpf", Interval]


@contextmanager
def working_precision(bits: int):
    if bits < 24:
        raise ValueError("precision below 24 bits is not supported")
    saved = mp.prec, iv.prec
    mp.prec = iv.prec = bits
    try:
        yield
    finally:
        mp.prec, iv.prec = saved


def ival(x: RealLike) -> Interval:
    """Enclose an exact value (int, Fraction, decimal string, mpf) in an interval."""
    if isinstance(x, Interval):
        return x
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, mp.mpf):
        return iv.mpf(x)
    return iv.mpf(x)


def lower(x: Interval) -> mp.mpf:
    return mp.make_mpf(x._mpi_[0])


def upper(x: Interval) -> mp.mpf:
    return mp.make_mpf(x._mpi_[1])


def mid(x: Interval) -> mp.mpf:
    with working_precision(max(mp.prec, iv.prec) + 4):
        return (lower(x) + upper(x)) / 2


def imax(*xs: Interval) -> Interval:
    """Interval enclosure of max over enclosures."""
    lo = max(lower(x) for x in xs)
    hi = max(upper(x) for x in xs)
    return iv.mpf([lo, hi])


def log_abs_int(n: int) -> Interval:
    """Enclosure of log|n| for a nonzero integer."""
    return iv.log(iv.mpf(abs(int(n))))


def to_decimal(x: "mp.mpf", prec: int) -> str:
    """Decimal string that parses back to exactly ``x`` at ``prec`` bits."""
    raw = x._mpf_ if isinstance(x, mp.mpf) else mp.mpf(x)._mpf_
    return to_str(raw, repr_dps(prec))


def from_decimal(text: str, prec: int) -> "mp.mpf":
    with working_precision(prec):
        return mp.mpf(text)
