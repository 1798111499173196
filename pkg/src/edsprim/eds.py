"""The elliptic divisibility sequence B_n = denominator of x(nP) and its primitive parts."""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import lcm
from typing import Iterable, Literal, Optional, Sequence

from sympy import primefactors

from .arith import FactorEffort, Factorization, bounded_factor, strip_common_primes
from .curve import CurvePoint, WeierstrassCurve, _add, _mul, is_torsion
from .errors import IncompleteSequence, TorsionPoint

Mode = Literal["all-previous", "divisors-only"]
MODES = ("all-previous", "divisors-only")


@dataclass(frozen=True)
class EdsTerm:
    n: int
    A: int
    B: int
    primitive_part: int
    has_primitive_divisor: bool
    known_factors: Optional[Factorization] = None


@dataclass(frozen=True)
class ApparitionRecord:
    """Rank of apparition of ``prime``; ``n_p`` is None when not seen up to ``search_bound``."""

    prime: int
    n_p: Optional[int]
    search_bound: int


def multiples(E: WeierstrassCurve, P: CurvePoint, N: int, start: int = 1) -> Iterable[tuple[int, CurvePoint]]:
    """Yield (n, nP) for n = start..N by repeated addition."""
    Q = _mul(E, P, start)
    for n in range(start, N + 1):
        if Q.is_infinity:
            raise TorsionPoint(f"{n}P = O: the point has finite order")
        yield n, Q
        Q = _add(E, Q, P)


def terms_from_fractions(pairs: Sequence[tuple[int, int]],
                         factor_effort: Optional[FactorEffort] = None) -> list[EdsTerm]:
    """Build terms n = 1.. from (A_n, B_n) pairs, filling in primitive parts."""
    terms = []
    seen = 1  # lcm of B_1..B_{n-1}
    for n, (A, B) in enumerate(pairs, start=1):
        prim = strip_common_primes(B, seen)
        fac = bounded_factor(B, factor_effort) if factor_effort is not None else None
        terms.append(EdsTerm(n, A, B, prim, prim > 1, fac))
        seen = lcm(seen, B)
    return terms


def generate_sequence(E: WeierstrassCurve, P: CurvePoint, N: int,
                      factor_effort: Optional[FactorEffort] = None) -> list[EdsTerm]:
    """Terms n = 1..N with x(nP) = A_n/B_n in lowest terms, B_n > 0.

    Primitive parts use the all-previous rule. Pass ``factor_effort`` to attach
    a (possibly partial) factorization of each B_n.
    """
    if N < 1:
        raise ValueError("N must be positive")
    E.require(P)
    if is_torsion(E, P).is_torsion:
        raise TorsionPoint(f"{P} is a torsion point")
    pairs = [(Q.x.numerator, Q.x.denominator) for _, Q in multiples(E, P, N)]
    return terms_from_fractions(pairs, factor_effort)


def extend_sequence(E: WeierstrassCurve, P: CurvePoint, terms: list[EdsTerm], N: int) -> list[EdsTerm]:
    """Extend a contiguous prefix of terms to n = 1..N."""
    _check_contiguous(terms, len(terms))
    if len(terms) >= N:
        return list(terms[:N])
    pairs = [(t.A, t.B) for t in terms]
    pairs += [(Q.x.numerator, Q.x.denominator)
              for _, Q in multiples(E, P, N, start=len(terms) + 1)]
    return terms_from_fractions(pairs)


def _check_contiguous(terms: Sequence[EdsTerm], n: int) -> None:
    if len(terms) < n:
        raise IncompleteSequence(f"need terms 1..{n}, have {len(terms)}")
    for i in range(n):
        if terms[i].n != i + 1:
            raise IncompleteSequence(f"term at position {i} has index {terms[i].n}")


def rank_of_apparition(terms: Sequence[EdsTerm], p: int) -> ApparitionRecord:
    _check_contiguous(terms, len(terms))
    for t in terms:
        if t.B % p == 0:
            return ApparitionRecord(p, t.n, len(terms))
    return ApparitionRecord(p, None, len(terms))


def primitive_part(terms: Sequence[EdsTerm], n: int, mode: Mode = "all-previous") -> int:
    """B_n with every prime shared with earlier terms removed by gcd-stripping.

    ``all-previous`` strips against B_1..B_{n-1} and is exact by definition.
    ``divisors-only`` strips against B_{n/q} for the primes q | n; it agrees with
    the exact rule whenever prime divisibility of the sequence is periodic, which
    holds for integral models.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    _check_contiguous(terms, n)
    b = terms[n - 1].B
    if mode == "all-previous":
        earlier = range(1, n)
    else:
        earlier = (n // q for q in primefactors(n))
    for m in earlier:
        b = strip_common_primes(b, terms[m - 1].B)
        if b == 1:
            break
    return b


def without_primitive_divisor(terms: Sequence[EdsTerm]) -> list[int]:
    return [t.n for t in terms if not t.has_primitive_divisor]


def with_corrupted_term(terms: Sequence[EdsTerm], n: int, B: int) -> list[EdsTerm]:
    """Copy of ``terms`` with B_n replaced (fault injection for the checks)."""
    out = list(terms)
    out[n - 1] = replace(out[n - 1], B=B)
    return out
