from __future__ import annotations

from fractions import Fraction

import pytest
from mpmath import mp

from conftest import CURVES
from edsprim.constants import (AnalysisInput, build_constants_report, compute_C3_C2_C5_K,
                               compute_C4, compute_S, compute_sigma_JE, first_positive_rhs,
                               rhs_lemma_divprim)
from edsprim.curve import to_short_form, validate_curve
from edsprim.errors import BadConductor, MissingPrerequisite
from oracles import real_root_bisection

# independent plain-mpmath evaluation of every formula on the reference input
ORACLE = {
    "C_E": "5.7434007581809181968",
    "J_E": "2.7030277170102716335e-17",
    "D_1": "4323535238.0553780418",
    "D_1_variant": "2104504796.7636666806",
    "h_triple": "11.613603032723672787",
    "log_V2_prime": "2218.8789108213879139",
    "C_3": "2.5927522347460506622e58",
    "C_5": "4.2567105164768642914e78",
    "K_bound": "2.626532289774412e52",
}


def _input(label="37a1", minimal=True, conductor=None):
    a, pt, f = CURVES[label]
    E = validate_curve(*a)
    return AnalysisInput(E, E.point(*pt), conductor or f, 1, minimal)


@pytest.fixture(scope="module")
def report():
    return build_constants_report(_input())


def _close(x, ref, rel="1e-15"):
    ref = mp.mpf(ref)
    return abs(mp.mpf(x) - ref) <= mp.mpf(rel) * abs(ref)


@pytest.mark.parametrize("name", ["C_E", "J_E", "D_1", "h_triple", "log_V2_prime", "C_3",
                                  "C_5", "K_bound"])
def test_against_oracle(report, name):
    assert _close(getattr(report, name), ORACLE[name])


def test_directed_rounding(report):
    with mp.workprec(256):
        assert report.C_E >= mp.mpf(ORACLE["C_E"]) - mp.mpf("1e-19")
        assert report.J_E <= mp.mpf(ORACLE["J_E"]) * (1 + mp.mpf("1e-19"))
    assert report.sigma == 1
    assert report.D_2 == report.C_E
    assert report.K_E == report.K_bound  # C_5^(2/3) dominates exp(hhat)


def test_D1_variant_in_diagnostics(report):
    assert _close(report.diagnostics["D_1_closed_form_variant"], ORACLE["D_1_variant"])
    assert mp.mpf(report.diagnostics["D_1_closed_form_variant"]) < report.D_1


def test_C5_recomposes(report):
    r = report
    with mp.workprec(200):
        c5 = ((4 + 2 * r.C_E + 2 * r.s * r.D_2 + mp.log(r.C_4)) / r.J_E + 2 * r.s * r.D_1
              + 2 * r.C_3 * max(r.log_V2_prime / r.J_E, 1))
        assert abs(c5 - r.C_5) <= mp.mpf("1e-30") * c5
        assert abs(mp.power(r.C_5, mp.mpf(2) / 3) - r.K_E) <= mp.mpf("1e-30") * r.K_E


def test_C4_against_bisection():
    short = to_short_form(validate_curve(0, 0, 1, -1, 0))
    assert (short.g2, short.g3) == (4, -1)
    lo, hi = real_root_bisection(short.g2, short.g3, -2, -1)
    C_4, x_T = compute_C4(short)
    assert Fraction(-hi) <= Fraction(str(x_T)) <= Fraction(-lo) + Fraction(2, 10 ** 9)
    with mp.workprec(256):
        assert C_4 == 2 * x_T
    assert abs(C_4 - mp.mpf("2.2143197433775352")) < mp.mpf("1e-8")


def _scaled_37a(u):
    # u-scaling of 37a1: a_i -> u^i a_i, Δ -> u^12 * 37, same conductor
    E = validate_curve(0, 0, u ** 3, -(u ** 4), 0)
    return AnalysisInput(E, E.point(0, 0), 37)


def test_sigma_exact_power():
    sigma, _ = compute_sigma_JE(_scaled_37a(37))
    assert sigma == 13


def test_sigma_inexact_rounded_up():
    sigma, J_E = compute_sigma_JE(_scaled_37a(5))
    with mp.workprec(256):
        exact = mp.log(mp.mpf(5) ** 12 * 37) / mp.log(37)
        assert exact <= sigma <= exact * (1 + mp.mpf("1e-30"))
    assert 0 < J_E < compute_sigma_JE(_input())[1]


def test_S_sets():
    assert compute_S(_input()) == ((2,), 1)
    assert compute_S(_input(minimal=False)) == ((2, 3), 2)
    assert compute_S(_scaled_37a(5)) == ((2, 3, 5), 3)


@pytest.mark.parametrize("conductor", [35, 1, 10, 74])
def test_bad_conductor(conductor):
    with pytest.raises(BadConductor):
        _input(conductor=conductor)


def test_missing_prerequisite(report):
    with pytest.raises(MissingPrerequisite, match="J_E"):
        compute_C3_C2_C5_K(C_E=report.C_E, J_E=None, D_1=report.D_1, D_2=report.D_2,
                           C_4=report.C_4, log_V1=report.log_V1,
                           log_V2_prime=report.log_V2_prime, log_B_prime=report.log_B_prime,
                           hhat=None, s=1)


def test_two_precisions_agree(report):
    low = build_constants_report(_input(), prec=64)
    for name in ("C_E", "sigma", "J_E", "D_1", "C", "C_3", "C_2", "C_4", "C_5", "K_bound"):
        a, b = getattr(low, name), getattr(report, name)
        assert abs(a - b) <= mp.mpf("1e-6") * abs(b), name
    # the higher precision never loosens a directed bound
    assert report.C_5 <= low.C_5 and report.K_bound <= low.K_bound
    assert report.J_E >= low.J_E


def test_reproducible(report):
    again = build_constants_report(_input())
    assert again == report
    assert again.K_bound._mpf_ == report.K_bound._mpf_


def test_unknown_minimality_enlarges_K(report):
    unknown = build_constants_report(_input(minimal=False))
    assert unknown.s == 2 and unknown.K_bound >= report.K_bound
    # the s-dependent part of C_5 is ~1e-61 of the total: strict only at 256 bits
    hi_known = build_constants_report(_input(), prec=256)
    hi_unknown = build_constants_report(_input(minimal=False), prec=256)
    assert hi_unknown.K_bound > hi_known.K_bound


def test_analytic_mode(report):
    analytic = build_constants_report(_input(), mode="analytic")
    assert analytic.log_V1 <= report.log_V1
    assert mp.mpf(analytic.diagnostics["im_tau"]) > mp.sqrt(3) / 2
    assert analytic.K_bound <= report.K_bound


def test_lang_bound_and_rhs(report):
    assert report.J_E <= report.hhat_lower
    n = report.diagnostics["first_positive_rhs_n"]
    assert n == first_positive_rhs(report.hhat_lower, report.C_E, report.s, report.C)
    assert rhs_lemma_divprim(n, report.hhat_lower, report.C_E, report.s, report.C) > 0
    assert rhs_lemma_divprim(n - 1, report.hhat_lower, report.C_E, report.s, report.C) <= 0
