from fractions import Fraction

import pytest

from quartic_hasse.density import (DensityInterval, brute_force_density,
                                   delta2, gamma, lam, mu_lower_bound, sigma)
from quartic_hasse.modp import is_L1_L2cubed, is_square_class


def test_closed_form_values():
    assert sigma(5) == Fraction(4 * 4 * 9 * 3 * 2, 24 * 5 ** 5)
    assert delta2() == Fraction(3, 16)
    assert lam(5) == Fraction(3041, 3125)
    assert gamma(5) == Fraction(6 * 5 * 4, 5 ** 5)
    with pytest.raises(ValueError):
        sigma(3)
    with pytest.raises(ValueError):
        gamma(2)


def test_sigma_matches_oracle():
    for p in (5, 7, 11, 13):
        assert brute_force_density(p, "splits_completely") == sigma(p)


def test_gamma_matches_oracle():
    for p in (3, 5, 7, 11, 13):
        assert brute_force_density(p, "L1L2cubed") == gamma(p)


def test_lam_matches_oracle():
    for p in (3, 5, 7, 11, 13):
        assert 1 - brute_force_density(p, "square_class") == lam(p)


def test_oracle_accepts_scalar_predicate():
    # the slow per-form predicate path must agree with the mask path
    assert brute_force_density(5, is_L1_L2cubed) == gamma(5)
    assert brute_force_density(5, is_square_class) == 1 - lam(5)


def test_oracle_budget():
    with pytest.raises(ValueError):
        brute_force_density(17, "splits_completely")


def test_density_interval_invariants():
    DensityInterval(Fraction(1, 3), Fraction(1, 2))
    with pytest.raises(AssertionError):
        DensityInterval(Fraction(1, 2), Fraction(1, 3))
    with pytest.raises(AssertionError):
        DensityInterval(Fraction(0), Fraction(1, 2))
    with pytest.raises(AssertionError):
        DensityInterval(Fraction(1, 2), Fraction(1))


def test_mu_lower_bound_basic():
    iv = mu_lower_bound(1, (5, 7, 11))
    assert 0 < iv.lower <= iv.upper < 1
    # the core magnitude: 12 / (5*7*11)^5 ~ 1.4e-12 shrunk by the local factors
    assert iv.upper < Fraction(12, (5 * 7 * 11) ** 5)
    assert iv.lower > iv.upper * Fraction(9, 10)     # tail costs < 10%


def test_mu_reproducible_and_monotone_in_cutoff():
    a = mu_lower_bound(1, (5, 7, 11), cutoff=2000)
    b = mu_lower_bound(1, (5, 7, 11), cutoff=2000)
    assert (a.lower, a.upper) == (b.lower, b.upper)
    c = mu_lower_bound(1, (5, 7, 11), cutoff=4000)
    # more lam factors shrink the upper bound; the sharper tail raises lower
    assert c.upper <= a.upper
    assert c.lower >= a.lower * Fraction(99, 100)


def test_mu_depends_on_h_through_gamma():
    # an extra odd prime divisor of h swaps a lam factor for a gamma factor
    base = mu_lower_bound(1, (5, 7, 11), cutoff=2000)
    withp = mu_lower_bound(53, (5, 7, 11), cutoff=2000)
    assert withp.upper < base.upper


def test_mu_rejects_bad_input():
    with pytest.raises(ValueError):
        mu_lower_bound(0, (5, 7, 11))
    with pytest.raises(ValueError):
        mu_lower_bound(1, (5, 5, 7))
    with pytest.raises(ValueError):
        mu_lower_bound(10, (5, 7, 11))      # 5 | h
    with pytest.raises(ValueError):
        mu_lower_bound(1, (5, 7, 11), cutoff=10)
