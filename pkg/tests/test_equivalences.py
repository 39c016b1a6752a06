import random
from fractions import Fraction

import pytest

from digitdens.density import c
from digitdens.digits import sum_of_digits
from digitdens.equivalences import (
    A_POLY_COEFFS,
    B_POLY_COEFFS,
    BlockPolynomialValue,
    a_poly,
    b_poly,
    density_via_pochhammer,
    row_count_direct,
    zabek_period,
)
from digitdens.guards import CostGuardError
from digitdens.numeric import Dyadic

rng = random.Random(404)


def test_pochhammer_density():
    assert density_via_pochhammer(0) == Dyadic(1)
    assert density_via_pochhammer(1).as_fraction() == Fraction(3, 4)
    assert density_via_pochhammer(3).as_fraction() == Fraction(11, 16)
    for t in range(0, 15):
        assert density_via_pochhammer(t) == c(t), t
    with pytest.raises(CostGuardError):
        density_via_pochhammer(19)


def test_b_poly():
    assert b_poly(1, 3) == Fraction(1, 4)
    assert b_poly(3, 3) == Fraction(11, 16)
    assert b_poly(0, 3) == 0
    with pytest.raises(ValueError):
        b_poly(5, 3)


def test_b_poly_equals_c():
    for t in range(1, 1 << 10):
        st = sum_of_digits(t)
        if st <= 3:
            assert b_poly(st + 1, t) == c(t).as_fraction(), t


def test_a_poly_against_direct_count():
    assert a_poly(1, 3) == 4 == row_count_direct(3, 1)
    assert a_poly(2, 4) == 3 == row_count_direct(4, 2)
    assert a_poly(1, 0) == 1
    for t in range(0, 300):
        for alpha in range(1, 5):
            assert a_poly(alpha, t) == row_count_direct(t, alpha), (t, alpha)
    for _ in range(50):
        t = rng.randrange(1 << 10)
        for alpha in range(1, 5):
            assert a_poly(alpha, t) == row_count_direct(t, alpha), (t, alpha)
    with pytest.raises(ValueError):
        a_poly(0, 3)


def test_block_polynomial_coefficients_nonnegative():
    for table in (A_POLY_COEFFS, B_POLY_COEFFS):
        for coeffs in table.values():
            assert all(v >= 0 for v in coeffs.values())


def test_block_polynomial_value_type():
    v = BlockPolynomialValue(2, Fraction(1, 4))
    assert v.alpha == 2
    with pytest.raises(ValueError):
        BlockPolynomialValue(0, Fraction(1, 4))
    with pytest.raises(ValueError):
        BlockPolynomialValue(5, Fraction(0))


def test_zabek_period():
    assert zabek_period(1, 1) == 2
    assert zabek_period(2, 2) == 8
    assert zabek_period(4, 1) == 8
    for t in range(1, 40):
        mu = t.bit_length() - 1
        for alpha in range(1, 5):
            assert zabek_period(t, alpha) == 1 << (alpha + mu), (t, alpha)
    with pytest.raises(CostGuardError):
        zabek_period(1 << 18, 4)


def test_b_poly_against_period_recount():
    # b(alpha, t) 2^(alpha+mu) counts the n < 2^(alpha+mu) with
    # 2^alpha not dividing C(n+t, t) (the sequence's shortest period)
    ts = list(range(1, 128)) + [rng.randrange(128, 1 << 10) for _ in range(24)]
    for t in ts:
        st = t.bit_count()
        mu = t.bit_length() - 1
        for alpha in range(0, 5):
            lam = alpha + mu
            count = sum(
                1
                for n in range(1 << lam)
                if n.bit_count() + st - (n + t).bit_count() < alpha
            )
            assert b_poly(alpha, t) * (1 << lam) == count, (t, alpha)
