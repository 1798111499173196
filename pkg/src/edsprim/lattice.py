"""Real period lattice of y^2 = 4x^3 - g2 x - g3 by the arithmetic-geometric mean.

Diagnostics only: the default bound pipeline does not depend on anything here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .curve import ShortCurve
from .errors import SingularCurve
from .literals import lit
from .realnum import DEFAULT_PREC, working_precision


@dataclass(frozen=True)
class LatticeData:
    """Period data of E'.

    ``tau1`` is the real period and ``tau2`` the companion generator with
    Im(tau2) > 0 and |Re(tau2/tau1)| <= 1/2. ``tau`` is tau2/tau1 carried into
    the standard fundamental domain (|Re tau| <= 1/2, |tau| >= 1); ``reduction``
    is the SL2(Z) matrix (a, b, c, d) doing so, tau = (a t + b)/(c t + d). When
    c = 0 the reduced basis still has a real first vector (``real_basis``).
    """

    tau1: mp.mpf
    tau2: mp.mpc
    tau: mp.mpc
    im_tau: mp.mpf
    reduction: tuple[int, int, int, int]
    discriminant_sign: int

    @property
    def real_basis(self) -> bool:
        return self.reduction[2] == 0


def _roots(short: ShortCurve):
    coeffs = [4, 0, -mp.mpf(short.g2.numerator) / short.g2.denominator,
              -mp.mpf(short.g3.numerator) / short.g3.denominator]
    return mp.polyroots(coeffs, maxsteps=200, extraprec=2 * mp.prec)


def raw_periods(short: ShortCurve, prec: int = DEFAULT_PREC):
    """(omega1, omega2): real period and a second generator with Im > 0."""
    if short.discriminant == 0:
        raise SingularCurve("g2^3 - 27 g3^2 = 0")
    with working_precision(prec + 20):
        roots = _roots(short)
        if short.discriminant > 0:
            e1, e2, e3 = sorted((mp.re(r) for r in roots), reverse=True)
            w1 = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))
            w2 = mp.mpc(0, 1) * mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e2 - e3))
        else:
            e1 = mp.re(min(roots, key=lambda r: abs(mp.im(r))))
            beta = mp.sqrt(3 * e1 * e1 - mp.mpf(short.g2.numerator) / short.g2.denominator / 4)
            alpha = 3 * e1
            w1 = 2 * mp.pi / mp.agm(2 * mp.sqrt(beta), mp.sqrt(2 * beta + alpha))
            w2 = -w1 / 2 + mp.mpc(0, 1) * mp.pi / mp.agm(2 * mp.sqrt(beta), mp.sqrt(2 * beta - alpha))
    with working_precision(prec):
        return +w1, +w2


def reduce_tau(t):
    """Move t (Im t > 0) into the fundamental domain; returns (tau, (a, b, c, d))."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10_000):
        k = int(mp.nint(mp.re(t)))
        if k:
            t -= k
            a, b = a - k * c, b - k * d
        if abs(t) < 1:
            t = -1 / t
            a, b, c, d = -c, -d, a, b
        else:
            return t, (a, b, c, d)
    raise RuntimeError("fundamental-domain reduction did not terminate")


def periods(short: ShortCurve, prec: int = DEFAULT_PREC) -> LatticeData:
    w1, w2 = raw_periods(short, prec)
    with working_precision(prec):
        t = w2 / w1
        shift = int(mp.nint(mp.re(t)))
        tau2 = w2 - shift * w1
        tau, matrix = reduce_tau(tau2 / w1)
        return LatticeData(tau1=+w1, tau2=+tau2, tau=tau, im_tau=mp.im(tau),
                           reduction=matrix,
                           discriminant_sign=1 if short.discriminant > 0 else -1)


@dataclass(frozen=True)
class TauCheck:
    passed: bool
    abs_tau: mp.mpf
    abs_tau_bound: mp.mpf
    abs_tau_margin: mp.mpf
    im_tau_margin: mp.mpf


def verify_tau_bounds(lat: LatticeData, j_abs, prec: int = DEFAULT_PREC) -> TauCheck:
    """Check |tau| <= 5.7 + log+|j| and Im tau >= sqrt(3)/2 (closed domain).

    Im tau = sqrt(3)/2 is attained exactly when j = 0 (tau = e^{2 pi i/3}), so the
    comparison allows rounding slack of 2^(-prec/2).
    """
    with working_precision(prec):
        if isinstance(j_abs, Fraction):
            j_abs = mp.mpf(j_abs.numerator) / j_abs.denominator
        j_abs = abs(mp.mpf(j_abs))
        logplus = mp.log(j_abs) if j_abs > 1 else mp.mpf(0)
        bound = mp.mpf(lit("TAU_SHIFT")) + logplus
        abs_tau = abs(lat.tau)
        im_margin = lat.im_tau - mp.sqrt(3) / 2
        slack = mp.mpf(2) ** (-prec // 2)
        ok = abs_tau <= bound and im_margin > -slack
        return TauCheck(bool(ok), abs_tau, bound, bound - abs_tau, im_margin)


def exact_logV1(lat: LatticeData, h, D: int = 1, prec: int = DEFAULT_PREC):
    """max(h, 3 pi / (D Im tau))."""
    with working_precision(prec):
        return max(mp.mpf(h), 3 * mp.pi / (D * abs(lat.im_tau)))
