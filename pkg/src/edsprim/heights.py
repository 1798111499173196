"""Naive heights over Q and certified canonical-height enclosures.

Normalization: ``hhat(R) = 1/2 * lim h(2^N R) / 4^N`` with ``h(R) = h(x(R))``,
so ``|h(R) - 2 hhat(R)| <= C_E``. This is HALF the more common x-coordinate
normalization (PARI's ``ellheight``, Sage's ``P.height()``); multiply by 2 to
compare with those. All explicit constants in ``constants`` assume this scale.

Height functions return mpmath intervals (see ``realnum``); read a bound off
with ``lower``/``upper`` or a representative value with ``mid``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from mpmath import iv, mp

from .curve import CurvePoint, WeierstrassCurve, as_rational, is_torsion
from .errors import TorsionPoint, WidthUnreachable
from .realnum import DEFAULT_PREC, Interval, ival, log_abs_int, lower, upper, working_precision

MAX_DOUBLINGS = 12


def naive_height(x, prec: int = DEFAULT_PREC) -> Interval:
    """h(x) = log max(|num|, den) of a rational in lowest terms."""
    x = as_rational(x)
    with working_precision(prec):
        return log_abs_int(max(abs(x.numerator), x.denominator))


def point_height(E: WeierstrassCurve, P: CurvePoint, prec: int = DEFAULT_PREC) -> Interval:
    E.require(P)
    if P.is_infinity:
        with working_precision(prec):
            return iv.mpf(0)
    return naive_height(P.x, prec)


def projective_height_g(g2, g3, prec: int = DEFAULT_PREC) -> Interval:
    """Height of the point (1 : g2 : g3) of P^2."""
    g2, g3 = as_rational(g2), as_rational(g3)
    den = g2.denominator * g3.denominator // gcd(g2.denominator, g3.denominator)
    triple = [den, int(g2 * den), int(g3 * den)]
    common = gcd(*triple)
    with working_precision(prec):
        return log_abs_int(max(abs(c) for c in triple) // common)


def h_infinity(x, prec: int = DEFAULT_PREC) -> Interval:
    """Archimedean part max(0, log|x|)."""
    x = as_rational(x)
    with working_precision(prec):
        if abs(x.numerator) <= x.denominator:
            return iv.mpf(0)
        value = log_abs_int(x.numerator) - log_abs_int(x.denominator)
        return iv.mpf([max(lower(value), 0), upper(value)])


def double_x(E: WeierstrassCurve, x: Fraction) -> Fraction:
    """x(2R) from x(R) by the duplication formula (R not 2-torsion)."""
    num = x ** 4 - E.b4 * x * x - 2 * E.b6 * x - E.b8
    den = 4 * x ** 3 + E.b2 * x * x + 2 * E.b4 * x + E.b6
    return num / den


@dataclass(frozen=True)
class HeightEnclosure:
    """Certified interval [lower, upper] containing hhat(P)."""

    lower: mp.mpf
    upper: mp.mpf
    doublings_used: int
    c_e_used: mp.mpf
    precision: int = DEFAULT_PREC

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def mid(self):
        return (self.lower + self.upper) / 2

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper

    def overlaps(self, other: "HeightEnclosure") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def scaled(self, factor: int) -> "HeightEnclosure":
        """Enclosure of factor * hhat(P), e.g. factor = n^2 for hhat(nP)."""
        with working_precision(self.precision):
            lo = lower(ival(self.lower) * factor)
            hi = upper(ival(self.upper) * factor)
        return HeightEnclosure(lo, hi, self.doublings_used, self.c_e_used, self.precision)


def doublings_needed(c_e, target_width) -> int:
    """Least N with C_E / 4^N <= target_width."""
    N = 0
    c_e, target_width = mp.mpf(c_e), mp.mpf(target_width)
    while c_e > target_width * 4 ** N:
        N += 1
    return N


def height_enclosure_at(E: WeierstrassCurve, P: CurvePoint, doublings: int, c_e,
                        prec: int = DEFAULT_PREC) -> HeightEnclosure:
    """[(h(2^N P) - C_E) / (2*4^N), (h(2^N P) + C_E) / (2*4^N)] with N = ``doublings``."""
    E.require(P)
    if is_torsion(E, P).is_torsion:
        raise TorsionPoint(f"{P} is a torsion point")
    x = P.x
    for _ in range(doublings):
        x = double_x(E, x)
    with working_precision(prec):
        h = log_abs_int(max(abs(x.numerator), x.denominator))
        c = ival(c_e)
        scale = 2 * iv.mpf(4) ** doublings
        lo = lower((h - c) / scale)
        hi = upper((h + c) / scale)
        c_e_used = upper(c)
    return HeightEnclosure(lo, hi, doublings, c_e_used, prec)


def canonical_height_enclosure(E: WeierstrassCurve, P: CurvePoint, target_width, c_e,
                               max_doublings: int = MAX_DOUBLINGS,
                               prec: int = DEFAULT_PREC) -> HeightEnclosure:
    """Enclosure of hhat(P) of width at most ``target_width``.

    Uses the fewest doublings N with C_E / 4^N <= target_width; raises
    WidthUnreachable when that N exceeds ``max_doublings``.
    """
    with working_precision(prec):
        target_width = mp.mpf(target_width)
    if not target_width > 0:
        raise ValueError("target_width must be positive")
    N = doublings_needed(c_e, target_width)
    if N > max_doublings:
        raise WidthUnreachable(
            f"width {target_width} needs {N} doublings (cap {max_doublings})")
    return height_enclosure_at(E, P, N, c_e, prec)
