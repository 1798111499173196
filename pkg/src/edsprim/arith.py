"""Integer helpers: valuations, rho/omega, and effort-bounded factorization.

Factorization here is for reporting only. Primitive-divisor detection works by
gcd-stripping and never needs it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

from sympy import isprime, pollard_rho, primefactors, primerange

from .errors import FactorizationIncomplete, NotPrime


def valuation(B: int, p: int) -> int:
    """Largest e with p**e dividing B (B != 0)."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    B = abs(int(B))
    if B == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while B % p == 0:
        B //= p
        e += 1
    return e


def strip_common_primes(b: int, other: int) -> int:
    """Remove from b every prime that also divides ``other``."""
    g = gcd(b, other)
    while g > 1:
        b //= g
        g = gcd(b, g)
    return b


def part_supported_on(b: int, support: int) -> int:
    """The largest divisor of b built only from primes dividing ``support``."""
    return b // strip_common_primes(b, support)


def rho(n: int) -> Fraction:
    """Sum of 1/p^2 over the distinct primes p dividing n (exact)."""
    if n < 1:
        raise ValueError("rho is defined for n >= 1")
    return sum((Fraction(1, p * p) for p in primefactors(n)), Fraction(0))


def omega(n: int) -> int:
    """Number of distinct prime divisors of n."""
    if n < 1:
        raise ValueError("omega is defined for n >= 1")
    return len(primefactors(n))


def omega_K(n: int) -> int:
    # over Q the prime ideals above n are the rational primes dividing n
    return omega(n)


@dataclass(frozen=True)
class FactorEffort:
    trial_bound: int = 10 ** 6
    rho_steps: int = 10 ** 5
    rho_retries: int = 2


DEFAULT_EFFORT = FactorEffort()


@dataclass(frozen=True)
class Factorization:
    """Prime factors found so far; ``cofactor`` is the unfactored composite part."""

    factors: tuple[tuple[int, int], ...]
    cofactor: int
    complete: bool

    def value(self) -> int:
        return prod(p ** e for p, e in self.factors) * self.cofactor

    def largest_prime(self) -> int:
        if not self.complete:
            raise FactorizationIncomplete("factorization is only partial")
        return max((p for p, _ in self.factors), default=1)


_CHUNK = 512


@lru_cache(maxsize=8)
def _prime_chunks(bound: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    primes = list(primerange(2, bound + 1))
    chunks = []
    for i in range(0, len(primes), _CHUNK):
        block = tuple(primes[i:i + _CHUNK])
        chunks.append((block, prod(block)))
    return tuple(chunks)


def _trial_divide(n: int, bound: int, found: dict[int, int]) -> int:
    for block, block_product in _prime_chunks(bound):
        if n == 1:
            break
        if gcd(n, block_product) == 1:
            continue
        for p in block:
            while n % p == 0:
                n //= p
                found[p] = found.get(p, 0) + 1
    return n


def _rho_split(n: int, effort: FactorEffort, found: dict[int, int]) -> list[int]:
    """Split n with Pollard rho; returns the composite parts left over."""
    if n == 1:
        return []
    if isprime(n):
        found[n] = found.get(n, 0) + 1
        return []
    d = pollard_rho(n, retries=effort.rho_retries, max_steps=effort.rho_steps)
    if d is None or d in (1, n):
        return [n]
    return _rho_split(d, effort, found) + _rho_split(n // d, effort, found)


def bounded_factor(B: int, effort: FactorEffort = DEFAULT_EFFORT) -> Factorization:
    """Trial division up to ``effort.trial_bound``, then capped Pollard rho."""
    B = abs(int(B))
    if B == 0:
        raise ValueError("cannot factor 0")
    found: dict[int, int] = {}
    rest = _trial_divide(B, effort.trial_bound, found)
    leftovers = _rho_split(rest, effort, found)
    cofactor = prod(leftovers)
    return Factorization(tuple(sorted(found.items())), cofactor, cofactor == 1)


def largest_prime_factor(n: int, effort: FactorEffort = DEFAULT_EFFORT) -> int:
    """P(n): largest prime dividing n; raises when n cannot be fully factored."""
    fac = bounded_factor(n, effort)
    if not fac.complete:
        raise FactorizationIncomplete(
            f"could not fully factor {n} (unfactored part {fac.cofactor})")
    return fac.largest_prime()
