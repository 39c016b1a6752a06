import math
from fractions import Fraction

import pytest

from digitdens.moments import (
    asymptotic_comparators,
    binomial_identity_check,
    chebyshev_window_count,
    empirical_moments,
    mean_closed_form,
    mean_profile,
)
from digitdens.numeric import DYADIC_HALF, DYADIC_ONE, Dyadic
from digitdens.series import diagonal_F


def test_mean_closed_form_examples():
    assert mean_closed_form(0).as_fraction() == Fraction(3, 4)
    assert mean_closed_form(1).as_fraction() == Fraction(23, 32)
    assert mean_closed_form(1) == (Dyadic(3, 2) + Dyadic(11, 4)).halve()
    assert mean_closed_form(0, "ctilde") == DYADIC_HALF
    assert mean_closed_form(1, "ctilde") < DYADIC_HALF < mean_closed_form(1)
    with pytest.raises(ValueError):
        mean_closed_form(1, "both")


def test_means_straddle_half():
    for lam in range(1, 1001):
        assert mean_closed_form(lam, "ctilde") < DYADIC_HALF < mean_closed_form(lam, "c"), lam


def test_empirical_moments_small():
    em = empirical_moments(1)
    assert em.mean_c.as_fraction() == Fraction(23, 32)
    assert em.second_c == Fraction(265, 512)
    assert em.sigma_c == Fraction(1, 1024)
    em3 = empirical_moments(3)
    assert em3.second_c == Fraction(diagonal_F(3, 1), 8**3)


def test_empirical_matches_closed_form():
    for lam in range(0, 12):
        em = empirical_moments(lam)
        assert em.mean_c == mean_closed_form(lam, "c"), lam
        assert em.mean_ctilde == mean_closed_form(lam, "ctilde"), lam
        assert em.sigma_c >= 0 and em.sigma_ctilde >= 0


def test_moments_worker_determinism():
    import json

    a = json.dumps(empirical_moments(9, workers=1).to_json_obj(), sort_keys=True)
    b = json.dumps(empirical_moments(9, workers=2).to_json_obj(), sort_keys=True)
    assert a == b


def test_profile():
    pr0 = mean_profile(0)
    assert pr0.m_k[1] == DYADIC_HALF
    assert pr0.m_k[0] == Dyadic(1, 2)
    for lam in (0, 1, 2, 5, 11, 30):
        pr = mean_profile(lam)
        assert pr.window_total() == DYADIC_ONE, lam
        for i in range(len(pr.M_ell) - 1):
            assert pr.M_ell[i] <= pr.M_ell[i + 1]
    pr = mean_profile(400)
    assert 0.9 < float(pr.m_k[0].as_fraction()) * math.sqrt(math.pi * 400) < 1.1
    assert max(pr.gaussian_residuals.values()) < 0.05


def test_binomial_identity():
    assert binomial_identity_check(0)
    assert binomial_identity_check(2)
    assert binomial_identity_check(30)
    for lam in range(0, 64):
        assert binomial_identity_check(lam), lam


def test_comparator_constants():
    # sqrt(43)/(12 sqrt(pi)) = 0.3083032...
    assert abs(asymptotic_comparators(1, "sigma") - 0.3083032) < 1e-6
    assert abs(asymptotic_comparators(1, "special_c") - 0.5 - 0.172747) < 1e-5
    assert abs(asymptotic_comparators(10**12, "mean_c") - 0.5) < 1e-5
    with pytest.raises(ValueError):
        asymptotic_comparators(10, "unknown")
    with pytest.raises(ValueError):
        asymptotic_comparators(0, "sigma")


def test_residual_decay():
    for variant in ("c", "ctilde"):
        scaled = []
        for lam in (50, 200, 800, 3200):
            exact = mean_closed_form(lam, variant).as_fraction()
            approx = Fraction(asymptotic_comparators(lam, f"mean_{variant}"))
            scaled.append(abs(float(exact - approx)) * lam**2.5)
        assert max(scaled) < 30
        assert scaled[-1] < 1.1 * scaled[-2]


def test_variance_against_diagonal():
    # exact variance via the diagonal pipeline approaches 43/(144 pi lam^2);
    # the deviation from 1 shrinks over the window
    devs = []
    for lam in (20, 30, 40, 50, 60):
        second = Fraction(diagonal_F(lam, 1), 8**lam)
        mean = mean_closed_form(lam).as_fraction()
        ratio = float(second - mean * mean) * lam * lam * 144 * math.pi / 43
        assert abs(ratio - 1) <= 0.35, (lam, ratio)
        devs.append(abs(ratio - 1))
    assert devs[-1] < devs[0]


def test_profile_json():
    obj = mean_profile(2).to_json_obj()
    assert obj["m_k"]["3"] == "1/2^5"  # mean of delta(3, t) over t in [4, 8)
    assert len(obj["M_ell"]) == 5


def test_chebyshev_window():
    w = chebyshev_window_count(3, DYADIC_HALF)
    assert w.count_c == 8  # every c_t lands strictly inside (1/2, 1)
    assert w.count == w.count_ctilde == 5
    assert chebyshev_window_count(6, Dyadic(0)).count == 0
    w14 = chebyshev_window_count(14, Dyadic(1, 2))
    assert w14.fraction >= Fraction(99, 100)
