"""Numeric pipeline: Bessel series, Charlier polynomials, limits, ensembles."""

from fractions import Fraction

import pytest
from mpmath import mp

from gwp1.charlier import (
    asymptotic_match_check,
    bessel_j,
    brute_force_expectation,
    char_poly_expectation,
    charlier_orthogonality_check,
    charlier_poly,
    charlier_poly_recurrence,
    charlier_scaling_limit_check,
    difference_equation_residual,
    gamma_real,
    numeric_f_g,
    numeric_wronskian,
)


def test_gamma_classical_values():
    with mp.workprec(120):
        assert abs(gamma_real(1, 96) - 1) < mp.mpf(2) ** -90
        assert abs(gamma_real(Fraction(1, 2), 96) - mp.sqrt(mp.pi)) < mp.mpf(2) ** -88
        target = mp.mpf(3) / 4 * mp.sqrt(mp.pi)
        assert abs(gamma_real(Fraction(5, 2), 96) - target) < mp.mpf(2) ** -88
    with pytest.raises(ValueError):
        gamma_real(-3, 96)


def test_bessel_half_integer_closed_forms():
    with mp.workprec(140):
        x = mp.mpf(2)
        assert abs(bessel_j(mp.mpf("0.5"), x, 128) - mp.sqrt(2 / (mp.pi * x)) * mp.sin(x)) < mp.mpf(2) ** -120
        assert abs(bessel_j(mp.mpf("-0.5"), x, 128) - mp.sqrt(2 / (mp.pi * x)) * mp.cos(x)) < mp.mpf(2) ** -120


def test_bessel_small_argument_leading_term():
    with mp.workprec(100):
        nu, x = mp.mpf(2), mp.mpf("1e-8")
        lead = (x / 2) ** nu / gamma_real(3, 100)
        assert abs(bessel_j(nu, x, 96) / lead - 1) < mp.mpf("1e-15")
    with pytest.raises(ValueError):
        bessel_j(1, -1, 64)


def test_charlier_poly_small_cases():
    assert charlier_poly(0, 1).coefficients == (Fraction(1),)
    assert charlier_poly(1, 1).coefficients == (Fraction(-3, 2), Fraction(1))
    with pytest.raises(ValueError):
        charlier_poly(1, 0)
    with pytest.raises(ValueError):
        charlier_poly(-1, 1)


@pytest.mark.parametrize("a", [1, Fraction(1, 2), Fraction(7, 3)])
def test_explicit_sum_matches_recurrence(a):
    for ell in range(7):
        assert (
            charlier_poly(ell, a).coefficients
            == charlier_poly_recurrence(ell, a).coefficients
        )


def test_orthogonality_grid():
    tol = mp.mpf(10) ** -20
    for l in range(5):
        for lp in range(5):
            assert charlier_orthogonality_check(l, lp, 1, tol, 128)


def test_difference_equation_residuals():
    for z in ("5.25", "10.25", "20.25"):
        for eps in (Fraction(1, 2), 1, 2):
            for which in ("f", "g"):
                res = difference_equation_residual(mp.mpf(z), eps, 128, which)
                assert res < mp.mpf(2) ** -64


def test_wronskian_unity():
    for z in ("7.25", "12.25"):
        for eps in (Fraction(1, 2), 1, 2):
            assert abs(numeric_wronskian(mp.mpf(z), eps, 128) - 1) < mp.mpf(2) ** -64


def test_near_integer_order_rejected():
    with pytest.raises(ValueError):
        numeric_f_g(mp.mpf("10.5") + mp.mpf(2) ** -200, 1, 128)


def test_asymptotic_match():
    r20 = asymptotic_match_check(20, 1, 3, 192)
    r40 = asymptotic_match_check(40, 1, 3, 192)
    assert r20.rel_error < mp.mpf(10) ** -4
    ratio = r20.abs_error / r40.abs_error
    assert 8 <= ratio <= 32
    r0 = asymptotic_match_check(20, 1, 0, 192)
    # M=0: error is dominated by the first dropped term (24-eps^2)/(24 eps^2 z)
    expected = mp.mpf(23) / 24 / 20
    assert abs(r0.abs_error / abs(r0.numeric) / expected - 1) < mp.mpf("0.1")


def test_scaling_limit():
    rep = charlier_scaling_limit_check(0, 0, 1, [20, 40, 80], 192)
    with mp.workprec(200):
        target = mp.sqrt(1 / mp.pi) * mp.cos(mp.mpf(2))
        assert abs(rep.target - target) < mp.mpf(2) ** -150
    assert rep.monotone_decreasing
    with pytest.raises(ValueError):
        charlier_scaling_limit_check(0, 2, 1, [2], 64)


def test_char_poly_expectation_small():
    assert abs(char_poly_expectation(1, 1, [mp.mpf(3)], 128) - mp.mpf(3) / 2) < mp.mpf(2) ** -100
    with pytest.raises(ValueError):
        char_poly_expectation(1, 1, [mp.mpf(3), mp.mpf(3)], 64)


def test_brute_force_agrees_with_determinant():
    tol = mp.mpf(10) ** -15
    for L in (1, 2):
        for us in ((mp.mpf(3),), (mp.mpf(3), mp.mpf("4.5"))):
            cp = char_poly_expectation(L, 1, us, 128)
            bf = brute_force_expectation(L, 1, us, 60, 128)
            assert abs(cp - bf) < tol
    with pytest.raises(ValueError):
        brute_force_expectation(3, 1, [mp.mpf(3)], 60, 64)
    with pytest.raises(ValueError):
        brute_force_expectation(1, 1, [mp.mpf(3)], 2, 64)
