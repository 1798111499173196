from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from edsprim.constants import compute_h_V_B
from edsprim.curve import ShortCurve, to_short_form, validate_curve
from edsprim.errors import SingularCurve
from edsprim.lattice import exact_logV1, periods, raw_periods, reduce_tau, verify_tau_bounds
from oracles import eisenstein_invariants

# Cremona labels; five curves of each discriminant sign, none with j = 0
LATTICE_CORPUS = {
    "11a1": (0, -1, 1, -10, -20),
    "14a1": (1, 0, 1, 4, -6),
    "19a1": (0, 1, 1, -9, -15),
    "26a1": (1, 0, 1, -5, -8),
    "43a1": (0, 1, 1, 0, 0),
    "15a1": (1, 1, 1, -10, -10),
    "37a1": (0, 0, 1, -1, 0),
    "53a1": (1, -1, 1, 0, 0),
    "389a1": (0, 1, 1, -2, 0),
    "5077a1": (0, 0, 1, -7, 6),
}


def test_corpus_spans_both_signs():
    signs = {validate_curve(*a).discriminant > 0 for a in LATTICE_CORPUS.values()}
    assert signs == {True, False}
    assert all(validate_curve(*a).j != 0 for a in LATTICE_CORPUS.values())


@pytest.mark.parametrize("label", sorted(LATTICE_CORPUS))
def test_periods_reproduce_invariants(label):
    short = to_short_form(validate_curve(*LATTICE_CORPUS[label]))
    w1, w2 = raw_periods(short, 160)
    with mp.workdps(50):
        g2, g3 = eisenstein_invariants(w1, w2)
        assert abs(g2 - mp.mpf(short.g2.numerator) / short.g2.denominator) < mp.mpf("1e-30")
        assert abs(g3 - mp.mpf(short.g3.numerator) / short.g3.denominator) < mp.mpf("1e-30")
    assert mp.im(w1) == 0 and mp.im(w2) > 0


@pytest.mark.parametrize("label", sorted(LATTICE_CORPUS))
def test_fundamental_domain_and_logV1(label):
    E = validate_curve(*LATTICE_CORPUS[label])
    short = to_short_form(E)
    lat = periods(short)
    assert abs(lat.tau) >= 1 and abs(mp.re(lat.tau)) <= mp.mpf(1) / 2
    assert lat.im_tau > mp.sqrt(3) / 2
    assert verify_tau_bounds(lat, E.j).passed
    closed = compute_h_V_B(short, E)
    assert exact_logV1(lat, closed.h_triple) <= closed.log_V1


def test_square_lattice():
    lat = periods(ShortCurve(Fraction(4), Fraction(0), Fraction(0)))
    assert abs(lat.tau - mp.mpc(0, 1)) < mp.mpf("1e-10")
    assert lat.discriminant_sign == 1


def test_j_zero_sits_on_the_corner():
    E = validate_curve(0, 0, 0, 0, 1)
    lat = periods(to_short_form(E))
    with mp.workprec(128):
        assert abs(lat.im_tau - mp.sqrt(3) / 2) < mp.mpf("1e-30")
    assert verify_tau_bounds(lat, 0).passed


def test_singular_rejected():
    with pytest.raises(SingularCurve):
        raw_periods(ShortCurve(Fraction(3), Fraction(1), Fraction(0)))


@settings(max_examples=100, deadline=None)
@given(st.floats(-50, 50), st.floats(1e-3, 20))
def test_reduce_tau(re_part, im_part):
    t = mp.mpc(re_part, im_part)
    tau, (a, b, c, d) = reduce_tau(t)
    assert a * d - b * c == 1
    assert abs(mp.re(tau)) <= mp.mpf(1) / 2 + mp.mpf("1e-12")
    assert abs(tau) >= 1 - mp.mpf("1e-12")
    assert abs((a * t + b) / (c * t + d) - tau) < mp.mpf("1e-8")
