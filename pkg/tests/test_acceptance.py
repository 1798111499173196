"""Exit criteria of the build, one test per criterion.

Each test prints a single ``CRITERION <k>: PASS|FAIL <detail>`` line (also
visible without ``-s``). Run just these with ``pytest -m acceptance``.
"""

from __future__ import annotations

import time

import pytest
from mpmath import mp

from edsprim.arith import part_supported_on, strip_common_primes, valuation
from edsprim.checks import (check_apparition, check_divisibility, check_helper_bounds,
                            check_mode_equivalence)
from edsprim.constants import AnalysisInput, build_constants_report, compute_h_V_B
from edsprim.curve import ShortCurve, scalar_multiply, to_short_form, validate_curve
from edsprim.eds import generate_sequence, rank_of_apparition, without_primitive_divisor
from edsprim.heights import canonical_height_enclosure, height_enclosure_at
from edsprim.lattice import exact_logV1, periods
from sympy import primerange

pytestmark = pytest.mark.acceptance

REF_A = (0, 0, 1, -1, 0)
REF_P = (0, 0)
HHAT_ORACLE = mp.mpf("0.025555704077058985807")  # doubling limit at N = 10

MODE_CURVES = {
    "37a1": ((0, 0, 1, -1, 0), (0, 0)),
    "43a1": ((0, 1, 1, 0, 0), (0, 0)),
    "53a1": ((1, -1, 1, 0, 0), (0, 0)),
}

LATTICE_CORPUS = {
    "11a1": (0, -1, 1, -10, -20), "14a1": (1, 0, 1, 4, -6), "19a1": (0, 1, 1, -9, -15),
    "26a1": (1, 0, 1, -5, -8), "43a1": (0, 1, 1, 0, 0), "15a1": (1, 1, 1, -10, -10),
    "37a1": (0, 0, 1, -1, 0), "53a1": (1, -1, 1, 0, 0), "389a1": (0, 1, 1, -2, 0),
    "5077a1": (0, 0, 1, -7, 6),
}


def _verdict(capsys, k: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def ref():
    E = validate_curve(*REF_A)
    return E, E.point(*REF_P)


@pytest.fixture(scope="module")
def ref_terms(ref):
    return generate_sequence(*ref, 60)


def test_criterion_1_reference_sequence(capsys, ref):
    start = time.perf_counter()
    terms = generate_sequence(*ref, 60)
    elapsed = time.perf_counter() - start
    first = [t.B for t in terms[:10]]
    missing = without_primitive_divisor(terms)
    ok = (first == [1, 1, 1, 1, 4, 1, 9, 25, 49, 16] and missing == [1, 2, 3, 4, 6, 10]
          and elapsed < 60)
    _verdict(capsys, 1, ok, f"B_1..B_10={first}; no primitive divisor at {missing}; "
                            f"{elapsed:.2f}s")


def test_criterion_2_divisibility_and_apparition(capsys, ref_terms):
    div = check_divisibility(ref_terms)
    app = check_apparition(ref_terms, prime_bound=10 ** 4)
    ok = div.passed and app.passed
    _verdict(capsys, 2, ok, f"divisibility {div.checked} pairs, apparition {app.checked} "
                            f"cases; {div.detail or app.detail or 'zero exceptions'}")


def test_criterion_3_valuation_law(capsys, ref_terms):
    """ord_p(B_{m n_p}) = ord_p(B_{n_p}) + ord_p(m), every odd p != 37 with n_p <= 60.

    Explicit primes below 10^4 are checked one by one; the remaining primes
    are covered exactly by comparing, for each rank r, the parts of B_{mr}
    and of Q_r * m supported on the primes of rank r (Q_r = primitive part).
    """
    N = len(ref_terms)
    exceptions = []
    for p in primerange(3, 10 ** 4):
        if p == 37:
            continue
        n_p = rank_of_apparition(ref_terms, p).n_p
        if n_p is None:
            continue
        base = valuation(ref_terms[n_p - 1].B, p)
        for m in range(1, N // n_p + 1):
            got = valuation(ref_terms[m * n_p - 1].B, p)
            if got != base + valuation(m, p):
                exceptions.append(f"p={p} n_p={n_p} m={m}: {got} != {base}+{valuation(m, p)}")
    for r in range(1, N + 1):
        block = strip_common_primes(ref_terms[r - 1].primitive_part, 2 * 37)
        if block == 1:
            continue
        for m in range(1, N // r + 1):
            if part_supported_on(ref_terms[m * r - 1].B, block) != block * part_supported_on(m, block):
                exceptions.append(f"rank block r={r}, m={m}")
    ok = not exceptions
    detail = "zero exceptions" if ok else f"{len(exceptions)} exceptions, first: {exceptions[0]}"
    _verdict(capsys, 3, ok, detail)


def test_criterion_4_height_enclosure(capsys, ref):
    E, P = ref
    report = build_constants_report(AnalysisInput(E, P, 37, 1, True))
    c_e = report.C_E
    enc = canonical_height_enclosure(E, P, "1e-3", c_e)
    width_ok = enc.width <= mp.mpf("1e-3")
    distance = max(enc.lower - HHAT_ORACLE, HHAT_ORACLE - enc.upper, 0)
    contains_ok = distance <= mp.mpf("5e-4") and enc.contains(mp.mpf("0.025556"))
    chain = [height_enclosure_at(E, P, N, c_e) for N in range(11)]
    nested = all(a.lower <= b.lower and b.upper <= a.upper for a, b in zip(chain, chain[1:]))
    two_p = canonical_height_enclosure(E, scalar_multiply(E, P, 2), "1e-3", c_e)
    overlap = two_p.overlaps(enc.scaled(4))
    ok = width_ok and contains_ok and nested and overlap
    _verdict(capsys, 4, ok, f"[{mp.nstr(enc.lower, 8)}, {mp.nstr(enc.upper, 8)}] "
                            f"width {mp.nstr(enc.width, 3)} (N={enc.doublings_used}); "
                            f"nested N=0..10: {nested}; hhat(2P) meets 4 hhat(P): {overlap}")


def test_criterion_5_constants(capsys, ref):
    E, P = ref
    inp = AnalysisInput(E, P, 37, 1, True)
    hi = build_constants_report(inp, prec=128)
    lo = build_constants_report(inp, prec=64)
    again = build_constants_report(inp, prec=128)
    problems = []
    if abs(hi.C_E - mp.mpf("5.7434")) > mp.mpf("1e-3"):
        problems.append(f"C_E={hi.C_E}")
    if hi.sigma != 1:
        problems.append(f"sigma={hi.sigma}")
    if abs(hi.J_E / mp.mpf("2.70e-17") - 1) > mp.mpf("0.01"):
        problems.append(f"J_E={hi.J_E}")
    if abs(hi.C_4 - mp.mpf("2.215")) > mp.mpf("1e-2"):
        problems.append(f"C_4={hi.C_4}")
    if not hi.J_E <= hi.hhat_lower:
        problems.append("J_E > hhat_lower")
    from edsprim.constants import REAL_FIELDS
    for name in REAL_FIELDS:
        a, b = getattr(lo, name), getattr(hi, name)
        if abs(a - b) > mp.mpf("1e-6") * abs(b):
            problems.append(f"{name} differs at 64/128 bits")
    if not (mp.isfinite(hi.K_bound) and again.K_bound._mpf_ == hi.K_bound._mpf_ and again == hi):
        problems.append("K not reproducible")
    ok = not problems
    _verdict(capsys, 5, ok, f"C_E={mp.nstr(hi.C_E, 8)} sigma={hi.sigma} "
                            f"J_E={mp.nstr(hi.J_E, 6)} C_4={mp.nstr(hi.C_4, 6)} "
                            f"K={mp.nstr(hi.K_bound, 6)}; "
                            + ("all within tolerance" if ok else "; ".join(problems)))


def test_criterion_6_mode_equivalence(capsys):
    results = {}
    for label, (a, pt) in MODE_CURVES.items():
        E = validate_curve(*a)
        results[label] = check_mode_equivalence(generate_sequence(E, E.point(*pt), 48), 48)
    ok = all(r.passed for r in results.values())
    _verdict(capsys, 6, ok, ", ".join(f"{k}: {r.checked} n {'agree' if r.passed else r.detail}"
                                      for k, r in results.items()))


def test_criterion_7_helper_bounds(capsys):
    start = time.perf_counter()
    result = check_helper_bounds(10 ** 5)
    elapsed = time.perf_counter() - start
    ok = result.passed and elapsed < 10
    _verdict(capsys, 7, ok, f"{result.checked} values, {elapsed:.2f}s {result.detail}")


def test_criterion_8_lattice(capsys):
    signs, problems = set(), []
    half_root3 = mp.sqrt(3) / 2
    for label, a in LATTICE_CORPUS.items():
        E = validate_curve(*a)
        short = to_short_form(E)
        lat = periods(short)
        signs.add(lat.discriminant_sign)
        if E.j == 0:
            problems.append(f"{label} has j = 0")
        if not (abs(lat.tau) >= 1 and lat.im_tau > half_root3):
            problems.append(f"{label}: tau={mp.nstr(lat.tau, 10)}")
        closed = compute_h_V_B(short, E)
        if not exact_logV1(lat, closed.h_triple) <= closed.log_V1:
            problems.append(f"{label}: exact log V1 above closed form")
    sq = periods(ShortCurve(4, 0, 0))
    if abs(sq.tau - mp.mpc(0, 1)) > mp.mpf("1e-10"):
        problems.append(f"g2=4, g3=0 gives tau={sq.tau}")
    if signs != {1, -1}:
        problems.append("corpus does not span both discriminant signs")
    ok = not problems
    _verdict(capsys, 8, ok, f"{len(LATTICE_CORPUS)} curves, signs {sorted(signs)}; "
                            + ("all postconditions hold" if ok else "; ".join(problems)))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
