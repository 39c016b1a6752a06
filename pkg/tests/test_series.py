import random
from fractions import Fraction

import pytest

from digitdens.density import c, delta, interval_sums
from digitdens.guards import CostGuardError
from digitdens.numeric import Dyadic
from digitdens.series import (
    H_series,
    RationalFunctionSpec,
    TruncSeries,
    bivariate_A,
    bivariate_A_tilde,
    closed_form_H_check,
    diagonal_F,
    expand,
    implicit_root_series,
    log_root_series,
    minimal_polynomial_residual,
    special_sequence_columns,
    trivariate_A,
    trivariate_F,
)
from digitdens.series import _minpoly_residual_of

rng = random.Random(5)

ROOT_EXPECT = {
    (0, 0): Fraction(1, 8), (1, 0): Fraction(-1, 8), (0, 1): Fraction(-1, 8),
    (2, 0): Fraction(3, 32), (0, 2): Fraction(3, 32), (1, 1): Fraction(1, 8),
    (3, 0): Fraction(-1, 16), (0, 3): Fraction(-1, 16),
    (2, 1): Fraction(-3, 32), (1, 2): Fraction(-3, 32),
    (4, 0): Fraction(5, 128), (0, 4): Fraction(5, 128),
    (3, 1): Fraction(1, 16), (1, 3): Fraction(1, 16), (2, 2): Fraction(13, 192),
}
LOG_EXPECT = {
    (1, 0): Fraction(-1), (0, 1): Fraction(-1),
    (2, 0): Fraction(1, 4), (0, 2): Fraction(1, 4),
    (3, 0): Fraction(-1, 12), (0, 3): Fraction(-1, 12),
    (4, 0): Fraction(1, 32), (0, 4): Fraction(1, 32), (2, 2): Fraction(-1, 48),
}


def test_truncseries_bounds():
    s = TruncSeries((2, 2), [Fraction(i) for i in range(9)])
    assert s[1, 1] == 4
    with pytest.raises(IndexError):
        s[3, 0]
    with pytest.raises(IndexError):
        s[0, -1]
    with pytest.raises(IndexError):
        s[0]
    csv = s.to_csv()
    assert csv.splitlines()[0] == "e0,e1,value,decimal"


def test_expand_basics():
    geo = expand(RationalFunctionSpec({(0,): 1}, {(0,): 1, (1,): -2}), (12,))
    assert [geo[i] for i in range(13)] == [Fraction(2) ** i for i in range(13)]
    x = expand(RationalFunctionSpec({(0, 0): 1}, {(0, 0): 4, (1, 0): -2, (0, 1): -2, (1, 1): 1}), (5, 5))
    for i in range(6):
        for j in range(6):
            assert x[i, j] == Fraction(1, 2 ** (i + 1) * 2 ** (j + 1))
    with pytest.raises(ValueError):
        RationalFunctionSpec({(0,): 1}, {(1,): 1})


def test_trivariate_coefficients_against_density_oracle():
    bounds = (4, 6, 6)
    got = expand(trivariate_A(), bounds)
    for lam in range(5):
        for k in range(7):
            for ell in range(7):
                oracle = 4**lam * sum(
                    delta(lam + 1 - k, t).as_fraction() * delta(lam + 1 - ell, t).as_fraction()
                    for t in range(1 << lam, 2 << lam)
                )
                assert got[lam, k, ell] == oracle, (lam, k, ell)


def test_trivariate_F_values():
    fs = expand(trivariate_F(), (1, 2, 2))
    assert fs[0, 0, 0] == Fraction(1, 4)
    assert fs[1, 2, 2] == Fraction(265, 64)


def test_diagonal_F():
    assert diagonal_F(0, 0) == Fraction(1, 4)
    assert diagonal_F(1, 1) == Fraction(265, 64)
    for lam in range(9):
        _, s2, _, t2 = interval_sums(lam)
        assert diagonal_F(lam, 1) == 4**lam * s2.as_fraction()
        assert diagonal_F(lam, 0) == 4**lam * t2.as_fraction()
    with pytest.raises(ValueError):
        diagonal_F(3, 2)
    with pytest.raises(CostGuardError):
        diagonal_F(61)


def test_second_moment_identity():
    # interval sums of c^2 equal the scaled diagonal coefficients
    for lam in range(8):
        _, s2, _, _ = interval_sums(lam)
        assert s2.as_fraction() == Fraction(diagonal_F(lam, 1), 4**lam)


def test_coefficient_sum_identity():
    # summing the cube coefficients over k, ell <= lam+1 (scaled by 4^-lam)
    # gives the interval sum of c^2; the truncation at lam (not lam+1) gives
    # the strict variant
    bounds = (8, 10, 10)
    cube = expand(trivariate_A(), bounds)
    for lam in range(9):
        _, s2, _, t2 = interval_sums(lam)
        total = sum(cube[lam, k, ell] for k in range(lam + 2) for ell in range(lam + 2))
        assert Fraction(total, 4**lam) == s2.as_fraction(), lam
        strict = sum(cube[lam, k, ell] for k in range(lam + 1) for ell in range(lam + 1))
        assert Fraction(strict, 4**lam) == t2.as_fraction(), lam


def test_implicit_root_series():
    root = implicit_root_series(4)
    for key, expect in ROOT_EXPECT.items():
        assert root[key] == expect, key
    logroot = log_root_series(4)
    for key, expect in LOG_EXPECT.items():
        assert logroot[key] == expect, key
    # mixed log terms of total degree <= 4 other than (2,2) vanish
    for (a, b), v in logroot.items():
        if a and b and (a, b) != (2, 2) and a + b <= 4:
            assert v == 0, (a, b)


def test_special_sequence():
    cols = special_sequence_columns(6)
    assert cols[0] == (0, Dyadic(1))
    assert cols[1] == (1, Dyadic(3, 2))
    assert cols[2] == (5, Dyadic(5, 3))
    for j, (tj, v) in enumerate(cols):
        assert tj == (4**j - 1) // 3
        assert v == c(tj), j
    # the cutoff machinery must not disturb exactness for any j_max
    for jm in (1, 3, 9, 33, 70):
        for j, (tj, v) in enumerate(special_sequence_columns(jm)):
            assert v == c(tj), (jm, j)


def test_H_series_methods_agree():
    a = H_series(128, "recurrence")
    b = H_series(128, "diagonal")
    assert a == b
    assert a[0] == 1 and a[1] == Fraction(3, 4) and a[2] == Fraction(5, 8)
    with pytest.raises(ValueError):
        H_series(4, "guess")


def test_bivariate_A_reproduces_columns():
    # [x^j y^k] of the corrected-denominator function equals
    # delta(j - k, t_j); the partial-sum variant's diagonal gives c
    got = expand(bivariate_A(), (5, 7))
    cols = special_sequence_columns(5)
    for j in range(6):
        tj = cols[j][0]
        for k in range(8):
            assert got[j, k] == delta(j - k, tj).as_fraction(), (j, k)
    diag = expand(bivariate_A_tilde(), (5, 5))
    for j in range(6):
        assert diag[j, j] == cols[j][1].as_fraction(), j


def test_minimal_polynomial():
    assert minimal_polynomial_residual(10).is_zero()
    assert minimal_polynomial_residual(64).is_zero()
    h = [v.as_fraction() for _, v in special_sequence_columns(10)]
    h[1] += 1
    assert any(_minpoly_residual_of(h, 10))


def test_closed_form():
    assert closed_form_H_check(5)
    assert closed_form_H_check(64)


def test_special_c_positive():
    half = Dyadic(1, 1)
    for _, v in special_sequence_columns(200)[1:]:
        assert v > half
