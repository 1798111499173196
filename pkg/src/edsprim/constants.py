"""The explicit constant tower and the index bound K(E, P).

Every constant is evaluated in interval arithmetic and then rounded in the
direction that keeps the final bound valid: upward for everything that
enlarges K(E, P), downward for the Lang-type lower bound J_E. Each value is
stored as an mpf carrying that directed endpoint.

Conventions that are easy to get wrong:

* hhat is the half-normalized canonical height of ``heights``.
* b2 is a1^2 + 4 a2 throughout.
* Conductor is an input; only its consistency with the discriminant is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal as TypingLiteral, NamedTuple, Optional

from mpmath import iv, mp

from .arith import DEFAULT_EFFORT, FactorEffort, bounded_factor, largest_prime_factor, omega, rho
from .curve import CurvePoint, ShortCurve, WeierstrassCurve, is_torsion, to_short_form
from .errors import BadConductor, EdsError, FactorizationIncomplete, MissingPrerequisite, TorsionPoint
from .heights import HeightEnclosure, canonical_height_enclosure, h_infinity, naive_height, projective_height_g
from .lattice import exact_logV1, periods
from .literals import lit
from .realnum import DEFAULT_PREC, imax, ival, log_abs_int, lower, to_decimal, upper, working_precision

ReportMode = TypingLiteral["closed-form", "analytic"]
DEFAULT_HHAT_WIDTH = "1e-3"
ROOT_TOLERANCE = "1e-15"
ROOT_INFLATION = "1e-9"


@dataclass(frozen=True)
class AnalysisInput:
    """A curve, a point, its conductor and what is known about minimality.

    Validation: conductor > 1, conductor divides the numerator of the
    discriminant, the point lies on the curve and has infinite order.
    """

    curve: WeierstrassCurve
    point: CurvePoint
    conductor: int
    degree: int = 1
    minimal: bool = False

    def __post_init__(self):
        if self.degree != 1:
            raise EdsError("only curves over Q (degree 1) are supported")
        self.curve.require(self.point)
        if is_torsion(self.curve, self.point).is_torsion:
            raise TorsionPoint(f"{self.point} is a torsion point")
        validate_conductor(self.curve, self.conductor)

    @property
    def discriminant_int(self) -> int:
        return abs(self.curve.discriminant.numerator)


def validate_conductor(E: WeierstrassCurve, conductor: int) -> None:
    if isinstance(conductor, bool) or not isinstance(conductor, int):
        raise BadConductor("conductor must be an integer")
    if conductor < 11:
        raise BadConductor(f"conductor {conductor} is below 11, the least conductor over Q")
    disc = abs(E.discriminant.numerator)
    if disc % conductor:
        bad = [p for p, _ in bounded_factor(conductor).factors if disc % p]
        detail = f"primes {bad} do not divide" if bad else "does not divide"
        raise BadConductor(f"conductor {conductor}: {detail} the discriminant {disc}")


def compute_C_E(E: WeierstrassCurve, prec: int = DEFAULT_PREC):
    """2.84 + h(j)/12 + h(Δ)/6 + h_inf(j)/6 + h_inf(b2/12), rounded up."""
    with working_precision(prec):
        value = (ival(lit("CE_ADDITIVE"))
                 + naive_height(E.j, prec) / 12
                 + naive_height(E.discriminant, prec) / 6
                 + h_infinity(E.j, prec) / 6
                 + h_infinity(E.b2 / 12, prec))
        return upper(value)


def _exact_sigma(disc: int, conductor: int) -> Optional[int]:
    power, k = conductor, 1
    while power < disc:
        power *= conductor
        k += 1
    return k if power == disc else None


def compute_sigma_JE(inp: AnalysisInput, prec: int = DEFAULT_PREC):
    """(sigma, J_E) with sigma = log|Δ| / log f_E rounded up and J_E rounded down."""
    disc, f = inp.discriminant_int, inp.conductor
    validate_conductor(inp.curve, f)
    if disc <= 1:
        raise BadConductor("|Δ| must exceed 1")
    D = inp.degree
    with working_precision(prec):
        k = _exact_sigma(disc, f)
        sigma = iv.mpf(k) if k is not None else log_abs_int(disc) / log_abs_int(f)
        denom = (ival(lit("JE_SCALE")) * D ** 3 * sigma ** 6
                 * iv.log(ival(lit("JE_LOG_ARG")) * D * sigma ** 2) ** 2)
        J_E = log_abs_int(disc) / denom
        return upper(sigma), lower(J_E)


def compute_S(inp: AnalysisInput, effort: FactorEffort = DEFAULT_EFFORT) -> tuple[tuple[int, ...], int]:
    """Finite places that can break the valuation law: p = 2 and non-minimal primes.

    Over Q nothing ramifies. With minimality asserted S = {2}; otherwise S is
    {2, 3} plus each p >= 5 with p^4 | c4 and p^12 | Δ (the only primes where
    the model can fail to be minimal).
    """
    if inp.minimal:
        return (2,), 1
    E = inp.curve
    c4 = abs(E.c4.numerator)
    disc = inp.discriminant_int
    fac = bounded_factor(disc, effort)
    if not fac.complete:
        raise FactorizationIncomplete(f"cannot factor the discriminant {disc}")
    extra = [p for p, e in fac.factors
             if p >= 5 and e >= 12 and c4 % p ** 4 == 0]
    S = tuple(sorted({2, 3, *extra}))
    return S, len(S)


def compute_D1_D2(E: WeierstrassCurve, D: int = 1, C_E=None, prec: int = DEFAULT_PREC,
                  effort: FactorEffort = DEFAULT_EFFORT):
    """D_1 = 2 (P(Δ)^(log2 D + 1) max{4, log2 H(j)} (2 P(Δ)^D + 1))^2 and D_2 = C_E."""
    big_p = largest_prime_factor(abs(E.discriminant.numerator), effort)
    if C_E is None:
        C_E = compute_C_E(E, prec)
    with working_precision(prec):
        D_1 = 2 * _D1_core(E, D, big_p, prec, plus_one=True) ** 2
        return upper(D_1), C_E


def _D1_core(E, D, big_p, prec, plus_one):
    log2_H = naive_height(E.j, prec) / iv.log(iv.mpf(2))
    p_pow = iv.exp(iv.log(iv.mpf(big_p)) * (iv.log(iv.mpf(D)) / iv.log(iv.mpf(2)) + 1))
    last = 2 * iv.mpf(big_p) ** D + (1 if plus_one else 0)
    return p_pow * imax(iv.mpf(4), log2_H) * last


def D1_closed_form_variant(E: WeierstrassCurve, D: int = 1, prec: int = DEFAULT_PREC,
                           effort: FactorEffort = DEFAULT_EFFORT):
    """The smaller D_1 of the explicit-computation list (no factor 2, no '+1'); diagnostics only."""
    big_p = largest_prime_factor(abs(E.discriminant.numerator), effort)
    with working_precision(prec):
        return upper(_D1_core(E, D, big_p, prec, plus_one=False) ** 2)


def _largest_root_modulus(short: ShortCurve):
    coeffs = [4, 0, -mp.mpf(short.g2.numerator) / short.g2.denominator,
              -mp.mpf(short.g3.numerator) / short.g3.denominator]
    roots, err = mp.polyroots(coeffs, maxsteps=200,
                              extraprec=2 * mp.prec, error=True)
    if err > mp.mpf(ROOT_TOLERANCE):
        raise ArithmeticError(f"root finder error {err} above tolerance")
    return max(abs(r) for r in roots)


def compute_C4(short: ShortCurve, prec: int = DEFAULT_PREC):
    """(C_4, x_T bound): C_4 = max{|a1^2/12| + |a2/3|, 2 x_T}, rounded up.

    x_T is the largest |x| over the nontrivial 2-torsion of E', i.e. the largest
    root modulus of 4x^3 - g2 x - g3; the numeric value is inflated by 1e-9 and
    capped by the Cauchy bound 1 + max(|g2|, |g3|)/4.
    """
    with working_precision(prec):
        if short.g2 == 0 and short.g3 == 0:
            x_T = iv.mpf(0)
        else:
            cauchy = 1 + imax(ival(abs(short.g2)), ival(abs(short.g3))) / 4
            x_T = iv.mpf(upper(ival(_largest_root_modulus(short)) + ival(ROOT_INFLATION)))
            if upper(x_T) > upper(cauchy):
                x_T = iv.mpf(upper(cauchy))
        shift_part = ival(abs(short.a1 ** 2 / 12)) + ival(abs(short.a2 / 3))
        C_4 = imax(shift_part, 2 * x_T)
        return upper(C_4), upper(x_T)


class ArchimedeanPieces(NamedTuple):
    h_triple: mp.mpf
    log_V1: mp.mpf
    log_V2_prime: mp.mpf
    log_B_prime: mp.mpf


def compute_h_V_B(short: ShortCurve, E: WeierstrassCurve, D: int = 1,
                  prec: int = DEFAULT_PREC, log_V1=None) -> ArchimedeanPieces:
    """Closed forms for h, log V_1, log V_2', log B' (all rounded up).

    ``log_V1`` may be supplied to replace the closed form max{h, 11/D} by a
    tighter analytic value; it is never allowed to exceed the closed form.
    """
    with working_precision(prec):
        h = imax(iv.mpf(1), projective_height_g(short.g2, short.g3, prec),
                 naive_height(short.j, prec))
        eleven = ival(lit("V_CLOSED_FORM"))
        closed_v1 = imax(h, eleven / D)
        v1 = closed_v1
        if log_V1 is not None:
            v1 = iv.mpf(min(mp.mpf(log_V1), upper(closed_v1)))
        v2 = imax(h, eleven / D * (ival(lit("V2_SHIFT")) + h_infinity(E.j, prec)) ** 2)
        log_d = iv.log(iv.mpf(D))
        b = imax(iv.e * h, v1 / D, v2 / D, log_d)
        return ArchimedeanPieces(upper(h), upper(v1), upper(v2), upper(b))


class Tower(NamedTuple):
    C_3: mp.mpf
    C_2: mp.mpf
    C_5: mp.mpf
    K_E: mp.mpf
    K_bound: mp.mpf


def compute_C3_C2_C5_K(*, C_E, J_E, D_1, D_2, C_4, log_V1, log_V2_prime, log_B_prime,
                       hhat: Optional[HeightEnclosure], s: int, D: int = 1,
                       prec: int = DEFAULT_PREC) -> Tower:
    """C_3, C_2, C_5 and K(E,P) = max{C_5^(2/3), exp(hhat_upper / D)}.

    C_5 = J_E^-1 (4 + 2 C_E + 2 s D_2 + log C_4) + 2 s D_1
          + 2 C_3 max{log V_2' / J_E, 1}.
    """
    named = dict(C_E=C_E, J_E=J_E, D_1=D_1, D_2=D_2, C_4=C_4, log_V1=log_V1,
                 log_V2_prime=log_V2_prime, log_B_prime=log_B_prime, hhat=hhat)
    missing = [k for k, v in named.items() if v is None]
    if missing:
        raise MissingPrerequisite(f"missing constants: {', '.join(missing)}")
    with working_precision(prec):
        J = ival(J_E)
        C_3 = ival(lit("C3_CLOSED_FORM")) * iv.mpf(D) ** 6 * ival(log_V1) * ival(log_B_prime) ** 4
        C_2 = C_3 * imax(ival(log_V2_prime), ival(hhat.upper))
        C_5 = ((ival(lit("C5_ADDITIVE")) + 2 * ival(C_E) + 2 * s * ival(D_2) + iv.log(ival(C_4))) / J
               + 2 * s * ival(D_1)
               + 2 * C_3 * imax(ival(log_V2_prime) / J, iv.mpf(1)))
        K_E = iv.exp(iv.log(C_5) * 2 / 3)
        K = imax(K_E, iv.exp(ival(hhat.upper) / D))
        return Tower(upper(C_3), upper(C_2), upper(C_5), upper(K_E), upper(K))


def compute_C(hhat_upper, D_1, D_2, prec: int = DEFAULT_PREC):
    """C = hhat * D_1 + D_2 with hhat at its upper end."""
    with working_precision(prec):
        return upper(ival(hhat_upper) * ival(D_1) + ival(D_2))


def rhs_lemma_divprim(n: int, hhat, C_E, s: int, C, prec: int = 53):
    """2 hhat n^2 (1 - rho(n)) - 2 log n - C_E (omega(n) + 1) - s C."""
    r = rho(n)
    with working_precision(prec):
        hhat, C_E, C = mp.mpf(hhat), mp.mpf(C_E), mp.mpf(C)
        return (2 * hhat * n * n * (1 - mp.mpf(r.numerator) / r.denominator)
                - 2 * mp.log(n) - C_E * (omega(n) + 1) - s * C)


def first_positive_rhs(hhat_lower, C_E, s: int, C, max_steps: int = 10 ** 6) -> Optional[int]:
    """Smallest n at which ``rhs_lemma_divprim`` is positive.

    Below sqrt((C_E + sC) / (2 hhat)) the value is negative outright, so the
    scan starts there.
    """
    hhat_lower = mp.mpf(hhat_lower)
    if hhat_lower <= 0:
        return None
    n0 = max(1, int(mp.floor(mp.sqrt((mp.mpf(C_E) + s * mp.mpf(C)) / (2 * hhat_lower)))))
    for n in range(n0, n0 + max_steps):
        if rhs_lemma_divprim(n, hhat_lower, C_E, s, C) > 0:
            return n
    return None


REAL_FIELDS = ("C_E", "sigma", "J_E", "D_1", "D_2", "C", "h_triple", "log_V1",
               "log_V2_prime", "log_B_prime", "C_3", "C_2", "C_4", "x_T_bound",
               "C_5", "K_E", "K_bound", "hhat_lower", "hhat_upper")

PROVENANCE = {
    "C_E": "2.84 + h(j)/12 + h(Δ)/6 + h_inf(j)/6 + h_inf(b2/12); rounded up",
    "sigma": "log|Δ| / log f_E; exact when |Δ| is a power of f_E, else rounded up",
    "J_E": "log|Δ| / (1e15 D^3 sigma^6 log^2(104613 D sigma^2)); rounded down",
    "S_primes": "{2} if minimal asserted, else {2,3} plus p>=5 with p^4|c4, p^12|Δ",
    "D_1": "2 (P(Δ)^(log2 D+1) max{4, log2 H(j)} (2 P(Δ)^D + 1))^2",
    "D_2": "equal to C_E",
    "C": "hhat_upper D_1 + D_2",
    "h_triple": "max{1, h(1:g2:g3), h(j)}",
    "log_V1": "max{h, 11/D} (closed form) or max{h, 3 pi/(D Im tau)} (analytic)",
    "log_V2_prime": "max{h, 11/D (6.2 + log+|j|)^2}",
    "log_B_prime": "max{e h, log V_1/D, log V_2'/D, log D}",
    "C_3": "9.21e43 D^6 log V_1 (log B')^4",
    "C_2": "C_3 max{log V_2', hhat_upper}",
    "C_4": "max{|a1^2/12| + |a2/3|, 2 x_T}",
    "x_T_bound": "largest root modulus of 4x^3 - g2 x - g3, + 1e-9, capped by Cauchy bound",
    "C_5": "J_E^-1 (4 + 2C_E + 2s D_2 + log C_4) + 2s D_1 + 2 C_3 max{log V_2'/J_E, 1}",
    "K_E": "C_5^(2/3)",
    "K_bound": "max{K_E, exp(hhat_upper / D)}",
}


@dataclass(frozen=True)
class ConstantsReport:
    C_E: mp.mpf
    sigma: mp.mpf
    J_E: mp.mpf
    s: int
    S_primes: tuple[int, ...]
    D_1: mp.mpf
    D_2: mp.mpf
    C: mp.mpf
    h_triple: mp.mpf
    log_V1: mp.mpf
    log_V2_prime: mp.mpf
    log_B_prime: mp.mpf
    C_3: mp.mpf
    C_2: mp.mpf
    C_4: mp.mpf
    x_T_bound: mp.mpf
    C_5: mp.mpf
    K_E: mp.mpf
    K_bound: mp.mpf
    hhat_lower: mp.mpf
    hhat_upper: mp.mpf
    mode: str
    precision: int
    provenance: dict = field(default_factory=dict, compare=True)
    diagnostics: dict = field(default_factory=dict, compare=True)


def build_constants_report(inp: AnalysisInput, mode: ReportMode = "closed-form",
                           prec: int = DEFAULT_PREC, hhat_width=DEFAULT_HHAT_WIDTH,
                           minimal: Optional[bool] = None) -> ConstantsReport:
    """Evaluate the whole tower for one (curve, point, conductor) input.

    ``minimal`` overrides the input's minimality assertion (used to report
    both choices of S side by side).
    """
    if mode not in ("closed-form", "analytic"):
        raise ValueError(f"unknown mode {mode!r}")
    if minimal is not None and minimal != inp.minimal:
        inp = AnalysisInput(inp.curve, inp.point, inp.conductor, inp.degree, minimal)
    E, D = inp.curve, inp.degree
    short = to_short_form(E)

    C_E = compute_C_E(E, prec)
    sigma, J_E = compute_sigma_JE(inp, prec)
    S, s = compute_S(inp)
    D_1, D_2 = compute_D1_D2(E, D, C_E, prec)
    C_4, x_T = compute_C4(short, prec)
    hhat = canonical_height_enclosure(E, inp.point, mp.mpf(hhat_width), C_E, prec=prec)
    C = compute_C(hhat.upper, D_1, D_2, prec)

    diagnostics: dict = {}
    closed = compute_h_V_B(short, E, D, prec)
    pieces = closed
    if mode == "analytic":
        with working_precision(prec):
            lat = periods(short, prec)
            exact = exact_logV1(lat, closed.h_triple, D, prec)
        pieces = compute_h_V_B(short, E, D, prec, log_V1=exact)
        diagnostics["log_V1_closed_form"] = to_decimal(closed.log_V1, prec)
        diagnostics["log_V1_analytic"] = to_decimal(exact, prec)
        diagnostics["im_tau"] = to_decimal(lat.im_tau, prec)

    tower = compute_C3_C2_C5_K(C_E=C_E, J_E=J_E, D_1=D_1, D_2=D_2, C_4=C_4,
                               log_V1=pieces.log_V1, log_V2_prime=pieces.log_V2_prime,
                               log_B_prime=pieces.log_B_prime, hhat=hhat, s=s, D=D,
                               prec=prec)

    diagnostics.update({
        "b2": str(E.b2),
        "b2_as_printed": str(E.b2_as_printed),
        "D_1_closed_form_variant": to_decimal(D1_closed_form_variant(E, D, prec), prec),
        "D_2_equals_C_E": D_2 == C_E,
        "lang_bound_holds": J_E <= hhat.lower,
        "hhat_doublings": hhat.doublings_used,
        "first_positive_rhs_n": first_positive_rhs(hhat.lower, C_E, s, C),
        "minimality": "asserted-minimal" if inp.minimal else "unknown",
        "hhat_normalization": "half of the x-coordinate normalization",
    })
    return ConstantsReport(
        C_E=C_E, sigma=sigma, J_E=J_E, s=s, S_primes=S, D_1=D_1, D_2=D_2, C=C,
        h_triple=pieces.h_triple, log_V1=pieces.log_V1,
        log_V2_prime=pieces.log_V2_prime, log_B_prime=pieces.log_B_prime,
        C_3=tower.C_3, C_2=tower.C_2, C_4=C_4, x_T_bound=x_T, C_5=tower.C_5,
        K_E=tower.K_E, K_bound=tower.K_bound, hhat_lower=hhat.lower,
        hhat_upper=hhat.upper, mode=mode, precision=prec,
        provenance=dict(PROVENANCE), diagnostics=diagnostics)
