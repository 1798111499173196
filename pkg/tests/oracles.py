"""Independent reference computations used to derive frozen test values.

Nothing here imports the package: the group law works on the completed-square
model y^2 = x^3 + a x^2 + b x + c (which keeps x), primitive divisors are found
by a power test instead of gcd-stripping, and heights and periods use plain
mpmath.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from mpmath import mp

F = Fraction


def completed_square(a1, a2, a3, a4, a6):
    """(a, b, c) with (y + (a1 x + a3)/2)^2 = x^3 + a x^2 + b x + c."""
    a1, a2, a3, a4, a6 = map(F, (a1, a2, a3, a4, a6))
    return a2 + a1 * a1 / 4, a4 + a1 * a3 / 2, a6 + a3 * a3 / 4


def cubic_add(abc, P, Q):
    a, b, c = abc
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a * x1 + b) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - a - x1 - x2
    return x3, -(y1 + lam * (x3 - x1))


def denominators(ainvs, point, N):
    a1, _, a3, _, _ = map(F, ainvs)
    abc = completed_square(*ainvs)
    x, y = map(F, point)
    P = (x, y + (a1 * x + a3) / 2)
    out, Q = [], P
    for _ in range(N):
        out.append(Q[0].denominator)
        Q = cubic_add(abc, Q, P)
    return out


def has_new_prime(Bs, n):
    """B_n has a prime not dividing lcm(B_1..B_{n-1}): B_n does not divide L^e."""
    L = 1
    for b in Bs[: n - 1]:
        L = L * b // gcd(L, b)
    B = Bs[n - 1]
    return B > 1 and pow(L, B.bit_length(), B) != 0


def no_primitive_set(Bs):
    return {n for n in range(1, len(Bs) + 1) if not has_new_prime(Bs, n)}


def hhat_by_doubling(ainvs, point, N, dps=60):
    """1/2 * h(x(2^N P)) / 4^N, doubling on the completed-square model."""
    a1, _, a3, _, _ = map(F, ainvs)
    abc = completed_square(*ainvs)
    x, y = map(F, point)
    Q = (x, y + (a1 * x + a3) / 2)
    for _ in range(N):
        Q = cubic_add(abc, Q, Q)
    with mp.workdps(dps):
        h = mp.log(max(abs(Q[0].numerator), Q[0].denominator))
        return h / (2 * mp.mpf(4) ** N)


def real_root_bisection(g2, g3, lo, hi, steps=200):
    """Root of 4x^3 - g2 x - g3 in [lo, hi] by exact rational bisection."""
    f = lambda t: 4 * t ** 3 - F(g2) * t - F(g3)
    lo, hi = F(lo), F(hi)
    assert f(lo) * f(hi) < 0
    for _ in range(steps):
        mid = (lo + hi) / 2
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def eisenstein_invariants(w1, w2, terms=60, dps=50):
    """(g2, g3) of the lattice Z w1 + Z w2 from q-expansions of E4, E6."""
    with mp.workdps(dps):
        tau = w2 / w1
        if mp.im(tau) < 0:
            tau = -tau
        q = mp.exp(2j * mp.pi * tau)
        sigma = lambda k, n: sum(d ** k for d in range(1, n + 1) if n % d == 0)
        e4 = 1 + 240 * sum(sigma(3, n) * q ** n for n in range(1, terms))
        e6 = 1 - 504 * sum(sigma(5, n) * q ** n for n in range(1, terms))
        s = 2 * mp.pi / w1
        return s ** 4 * e4 / 12, s ** 6 * e6 / 216
