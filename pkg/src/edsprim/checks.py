"""Property checks over computed sequences, heights and constants.

Each check returns a ``CheckResult``; ``run_suite`` strings them together for
a corpus and stops at nothing, so the report lists every failure. Checks that
would need a factorization of large terms are phrased with gcds instead: a
"rank block" Q_r is the primitive part of B_r, i.e. the product of the prime
powers whose rank of apparition is exactly r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from sympy import primerange

from .arith import omega, part_supported_on, rho, strip_common_primes, valuation
from .curve import CurvePoint, WeierstrassCurve
from .eds import EdsTerm, MODES, primitive_part, rank_of_apparition
from .heights import height_enclosure_at

DIVISIBILITY = "divisibility"
APPARITION = "apparition"
VALUATION_LAW = "valuation_law"
MODE_EQUIVALENCE = "mode_equivalence"
HELPER_BOUNDS = "helper_bounds"
ENCLOSURE_CONSISTENCY = "enclosure_consistency"
LANG_BOUND = "lang_bound"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""
    subject: str = ""


def _fail(name, checked, detail, subject):
    return CheckResult(name, False, checked, detail, subject)


def check_divisibility(terms: Sequence[EdsTerm], subject: str = "") -> CheckResult:
    """B_m | B_n whenever m | n."""
    N, checked = len(terms), 0
    for m in range(1, N + 1):
        for n in range(2 * m, N + 1, m):
            checked += 1
            if terms[n - 1].B % terms[m - 1].B:
                return _fail(DIVISIBILITY, checked, f"B_{m} does not divide B_{n}", subject)
    return CheckResult(DIVISIBILITY, True, checked, subject=subject)


def check_apparition(terms: Sequence[EdsTerm], prime_bound: int = 10 ** 4,
                     subject: str = "") -> CheckResult:
    """p | B_m iff n_p | m, for explicit primes up to ``prime_bound`` and for
    every prime at once through the rank blocks."""
    N, checked = len(terms), 0
    for p in primerange(2, prime_bound + 1):
        n_p = rank_of_apparition(terms, p).n_p
        if n_p is None:
            continue
        for t in terms:
            checked += 1
            if (t.B % p == 0) != (t.n % n_p == 0):
                return _fail(APPARITION, checked, f"p={p}, n_p={n_p}, m={t.n}", subject)
    for r in range(1, N + 1):
        block = terms[r - 1].primitive_part
        if block == 1:
            continue
        for t in terms:
            checked += 1
            if t.n % r == 0:
                ok = strip_common_primes(block, t.B) == 1
            else:
                ok = gcd(block, t.B) == 1
            if not ok:
                return _fail(APPARITION, checked, f"rank block of n={r} vs B_{t.n}", subject)
    return CheckResult(APPARITION, True, checked, subject=subject)


def check_valuation_law(terms: Sequence[EdsTerm], curve: WeierstrassCurve,
                        prime_bound: int = 10 ** 4, subject: str = "") -> CheckResult:
    """Valuation law ord_p(B_{m n_p}) = ord_p(B_{n_p}) + 2 ord_p(m), odd p not dividing Δ.

    The law is nu(z(nQ)) = nu(z(Q)) + nu(n) for z = x/y; since -nu(x) = 2 nu(z)
    and B_n is the full denominator of x(nP), ord_p(m) enters twice.
    """
    N, checked = len(terms), 0
    bad = 2 * abs(curve.discriminant.numerator) * curve.discriminant.denominator
    for p in primerange(3, prime_bound + 1):
        if bad % p == 0:
            continue
        n_p = rank_of_apparition(terms, p).n_p
        if n_p is None:
            continue
        base = valuation(terms[n_p - 1].B, p)
        for m in range(1, N // n_p + 1):
            checked += 1
            if valuation(terms[m * n_p - 1].B, p) != base + 2 * valuation(m, p):
                return _fail(VALUATION_LAW, checked, f"p={p}, n_p={n_p}, m={m}", subject)
    for r in range(1, N + 1):
        block = strip_common_primes(terms[r - 1].primitive_part, bad)
        if block == 1:
            continue
        for m in range(1, N // r + 1):
            checked += 1
            if part_supported_on(terms[m * r - 1].B, block) != block * part_supported_on(m, block) ** 2:
                return _fail(VALUATION_LAW, checked, f"rank block of n={r}, m={m}", subject)
    return CheckResult(VALUATION_LAW, True, checked, subject=subject)


def check_mode_equivalence(terms: Sequence[EdsTerm], max_n: int = 48,
                           subject: str = "") -> CheckResult:
    checked = 0
    for n in range(1, min(max_n, len(terms)) + 1):
        checked += 1
        a, b = (primitive_part(terms, n, mode) for mode in MODES)
        if a != b or a != terms[n - 1].primitive_part:
            return _fail(MODE_EQUIVALENCE, checked, f"n={n}: {a} vs {b}", subject)
    return CheckResult(MODE_EQUIVALENCE, True, checked, subject=subject)


def check_helper_bounds(limit: int = 10 ** 5) -> CheckResult:
    """rho(n) < 1/2 for n <= limit and 2^omega(n) <= n for 2 <= n <= limit."""
    half = Fraction(1, 2)
    for n in range(1, limit + 1):
        if not rho(n) < half:
            return _fail(HELPER_BOUNDS, n, f"rho({n}) >= 1/2", "")
        if n >= 2 and 2 ** omega(n) > n:
            return _fail(HELPER_BOUNDS, n, f"omega({n}) > log2({n})", "")
    return CheckResult(HELPER_BOUNDS, True, limit)


def check_enclosure_consistency(curve: WeierstrassCurve, point: CurvePoint, c_e,
                                max_doublings: int = 8, subject: str = "") -> CheckResult:
    """Enclosures for N = 0..max_doublings are nested and pairwise intersecting."""
    encl = [height_enclosure_at(curve, point, N, c_e) for N in range(max_doublings + 1)]
    checked = 0
    for i, a in enumerate(encl):
        for b in encl[i + 1:]:
            checked += 1
            if not a.overlaps(b):
                return _fail(ENCLOSURE_CONSISTENCY, checked,
                             f"N={a.doublings_used} and N={b.doublings_used} disjoint", subject)
    for a, b in zip(encl, encl[1:]):
        checked += 1
        if not (a.lower <= b.lower and b.upper <= a.upper):
            return _fail(ENCLOSURE_CONSISTENCY, checked,
                         f"N={b.doublings_used} not inside N={a.doublings_used}", subject)
    return CheckResult(ENCLOSURE_CONSISTENCY, True, checked, subject=subject)


def check_lang_bound(J_E, hhat_lower, subject: str = "") -> CheckResult:
    ok = J_E <= hhat_lower
    return CheckResult(LANG_BOUND, bool(ok), 1,
                       "" if ok else f"J_E={J_E} exceeds hhat lower end {hhat_lower}", subject)


@dataclass(frozen=True)
class SuiteReport:
    results: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    @property
    def total_checked(self) -> int:
        return sum(r.checked for r in self.results)
