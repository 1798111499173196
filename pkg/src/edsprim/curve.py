"""Exact arithmetic on elliptic curves over Q in long Weierstrass form.

Coefficients and coordinates are ``fractions.Fraction`` values, which are kept
in lowest terms with a positive denominator, so the denominator of ``x(nP)``
can be read off directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import PointNotOnCurve, SingularCurve

Rational = Fraction
RationalLike = Union[Fraction, int, str]

# Over Q every torsion point has order at most 12 (Mazur), so a point with
# nP != O for all n <= 12 has infinite order.
MAZUR_BOUND = 12


def as_rational(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction or a string such as ``"-3/4"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with derived invariants."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    b2: Fraction = field(init=False)
    b4: Fraction = field(init=False)
    b6: Fraction = field(init=False)
    b8: Fraction = field(init=False)
    c4: Fraction = field(init=False)
    c6: Fraction = field(init=False)
    discriminant: Fraction = field(init=False)
    j: Fraction = field(init=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise SingularCurve(f"discriminant vanishes for {self.ainvs_str()}")
        derived = dict(b2=b2, b4=b4, b6=b6, b8=b8, c4=c4, c6=c6,
                       discriminant=disc, j=c4 ** 3 / disc)
        for name, value in derived.items():
            object.__setattr__(self, name, value)

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def ainvs_str(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    @property
    def b2_as_printed(self) -> Fraction:
        """``a1 + 4 a2``: the variant printed in the source notation table.

        Only surfaced in diagnostics; every computation uses ``b2 = a1^2 + 4 a2``.
        """
        return self.a1 + 4 * self.a2

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x ** 3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def point(self, x: RationalLike, y: RationalLike) -> CurvePoint:
        """Build an affine point, checking the curve equation."""
        P = CurvePoint(as_rational(x), as_rational(y))
        self.require(P)
        return P

    def require(self, *points: CurvePoint) -> None:
        for P in points:
            if not self.contains(P):
                raise PointNotOnCurve(f"{P} does not lie on {self.ainvs_str()}")

    def negate(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)


@dataclass(frozen=True)
class CurvePoint:
    """A point of E(Q); ``CurvePoint()`` (both coordinates None) is the identity O."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


def validate_curve(a1: RationalLike, a2: RationalLike, a3: RationalLike,
                   a4: RationalLike, a6: RationalLike) -> WeierstrassCurve:
    """Build a curve from its a-invariants; raises SingularCurve when Δ = 0."""
    return WeierstrassCurve(*(as_rational(a) for a in (a1, a2, a3, a4, a6)))


def _add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + E.a1 * x2 + E.a3 == 0:
            return INFINITY
        den = 2 * y1 + E.a1 * x1 + E.a3
        lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) / den
        nu = (-x1 ** 3 + E.a4 * x1 + 2 * E.a6 - E.a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + E.a1 * lam - E.a2 - x1 - x2
    y3 = -(lam + E.a1) * x3 - nu - E.a3
    return CurvePoint(x3, y3)


def point_add(E: WeierstrassCurve, p1: CurvePoint, p2: CurvePoint) -> CurvePoint:
    """Chord-tangent sum p1 + p2 on E."""
    E.require(p1, p2)
    return _add(E, p1, p2)


def _mul(E: WeierstrassCurve, P: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        return _mul(E, E.negate(P), -n)
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = _add(E, result, addend)
        n >>= 1
        if n:
            addend = _add(E, addend, addend)
    return result


def scalar_multiply(E: WeierstrassCurve, P: CurvePoint, n: int) -> CurvePoint:
    """nP by binary double-and-add in affine coordinates."""
    E.require(P)
    return _mul(E, P, int(n))


class TorsionCheck(NamedTuple):
    is_torsion: bool
    order: Optional[int]


def is_torsion(E: WeierstrassCurve, P: CurvePoint) -> TorsionCheck:
    """Decide whether P has finite order, returning the order when it does.

    Looks for nP = O with n <= 12; by Mazur's classification of rational
    torsion this loop is conclusive for any model over Q.
    """
    E.require(P)
    Q = P
    for n in range(1, MAZUR_BOUND + 1):
        if Q.is_infinity:
            return TorsionCheck(True, n)
        Q = _add(E, Q, P)
    return TorsionCheck(False, None)


@dataclass(frozen=True)
class ShortCurve:
    """E': y^2 = 4x^3 - g2 x - g3 together with the map from the long model.

    The map is (x, y) -> (x + shift_x, 2y + a1 x + a3) with
    shift_x = a1^2/12 + a2/3 = b2/12.
    """

    g2: Fraction
    g3: Fraction
    shift_x: Fraction
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)

    @property
    def discriminant(self) -> Fraction:
        return self.g2 ** 3 - 27 * self.g3 ** 2

    @property
    def j(self) -> Fraction:
        return 1728 * self.g2 ** 3 / self.discriminant

    def contains(self, x: Fraction, y: Fraction) -> bool:
        return y * y == 4 * x ** 3 - self.g2 * x - self.g3

    def transform_point(self, P: CurvePoint) -> Optional[tuple[Fraction, Fraction]]:
        if P.is_infinity:
            return None
        return (P.x + self.shift_x, 2 * P.y + self.a1 * P.x + self.a3)


def to_short_form(E: WeierstrassCurve) -> ShortCurve:
    """Change variables to y^2 = 4x^3 - g2 x - g3 (g2 = c4/12, g3 = c6/216)."""
    return ShortCurve(g2=E.c4 / 12, g3=E.c6 / 216,
                      shift_x=E.a1 * E.a1 / 12 + E.a2 / 3,
                      a1=E.a1, a2=E.a2, a3=E.a3)
