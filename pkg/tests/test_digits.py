import math
import random

import pytest

from digitdens.digits import (
    BitWord,
    block_count,
    nu2,
    nu2_binomial,
    nu2_binomial_range,
    nu2_pochhammer,
    reverse_binary,
    sum_of_digits,
)
from digitdens.guards import CostGuardError

rng = random.Random(20260810)


def test_sum_of_digits():
    assert sum_of_digits(0) == 0
    assert sum_of_digits(7) == 3
    for k in range(0, 40):
        assert sum_of_digits(1 << k) == 1
    with pytest.raises(ValueError):
        sum_of_digits(-1)


def test_nu2():
    assert nu2(24) == 3
    assert nu2(1) == 0
    assert nu2(1 << 10) == 10
    with pytest.raises(ValueError):
        nu2(0)


def test_pochhammer_valuation_against_factored_products():
    assert nu2_pochhammer(2, 3) == 3  # 2*3*4 = 24
    assert nu2_pochhammer(1, 4) == 3  # 4! = 24
    assert nu2_pochhammer(17, 0) == 0
    for _ in range(200):
        n = rng.randrange(1, 1 << 20)
        t = rng.randrange(0, 30)
        prod = math.prod(range(n, n + t), start=1)
        expect = 0 if prod & 1 else (prod & -prod).bit_length() - 1
        assert nu2_pochhammer(n, t) == expect
    with pytest.raises(CostGuardError):
        nu2_pochhammer(1, 1 << 13)


def test_digit_sum_difference_via_pochhammer():
    # s(n+t) - s(n) = t - nu2((n+1)(n+2)...(n+t)); dense on a subrange of the
    # full (n < 2^16, t < 2^8) box plus random samples across all of it
    for n in range(1 << 10):
        for t in range(1 << 6):
            assert sum_of_digits(n + t) - sum_of_digits(n) == t - nu2_pochhammer(n + 1, t)
    for _ in range(400):
        n = rng.randrange(1 << 16)
        t = rng.randrange(1 << 8)
        assert sum_of_digits(n + t) - sum_of_digits(n) == t - nu2_pochhammer(n + 1, t)


def test_binomial_valuation_examples():
    assert nu2_binomial(1, 3) == 2  # C(4,3) = 4
    assert nu2_binomial(0, 17) == 0
    assert nu2_binomial(1, 1) == 1
    for method in ("legendre", "kummer"):
        assert nu2_binomial(1, 3, method) == 2
    with pytest.raises(ValueError):
        nu2_binomial(1, 1, "lucas")


def test_binomial_valuation_methods_agree():
    for t in range(64):
        assert nu2_binomial_range(t, 1 << 10, "legendre") == nu2_binomial_range(t, 1 << 10, "kummer")
    for _ in range(500):
        n = rng.randrange(1 << 16)
        t = rng.randrange(1 << 8)
        leg = nu2_binomial(n, t, "legendre")
        assert leg == nu2_binomial(n, t, "kummer")
        assert leg == nu2_binomial_range(t, n + 1, "legendre")[n]
        assert leg == nu2_binomial_range(t, n + 1, "kummer")[n]


def test_digit_sum_difference_via_binomial():
    for n in range(1 << 9):
        for t in range(1 << 6):
            assert sum_of_digits(n + t) - sum_of_digits(n) == sum_of_digits(t) - nu2_binomial(n, t)


def test_row_column_symmetry():
    # nu2 C(n+t, t) = nu2 C(2^lam - 1 - t, n) for 1 <= t < 2^lam and
    # 0 <= n <= 2^lam - 1 - t; dense for lam <= 9, sampled at lam = 12
    for lam in range(1, 10):
        top = 1 << lam
        for t in range(1, top):
            for n in range(top - t):
                assert nu2_binomial(n, t) == (
                    n.bit_count() + (top - 1 - t - n).bit_count() - (top - 1 - t).bit_count()
                ), (lam, t, n)
    lam = 12
    top = 1 << lam
    for _ in range(2000):
        t = rng.randrange(1, top)
        n = rng.randrange(0, top - t)
        assert nu2_binomial(n, t) == (
            n.bit_count() + (top - 1 - t - n).bit_count() - (top - 1 - t).bit_count()
        )


def test_reverse_binary():
    assert reverse_binary(11) == 13
    for k in range(0, 20):
        assert reverse_binary(1 << k) == 1
    for _ in range(500):
        t = rng.randrange(1, 1 << 40) | 1
        assert reverse_binary(t) & 1
        assert reverse_binary(reverse_binary(t)) == t
    with pytest.raises(ValueError):
        reverse_binary(0)


def test_block_count():
    assert block_count(3, "01") == 1
    assert block_count(5, "1") == 2
    assert block_count(0b1010, "10") == 2
    assert block_count(3, "011") == 1
    assert block_count(3, "001") == 1
    assert block_count(0, "1") == 0
    for t in range(4096):
        assert block_count(t, "1") == sum_of_digits(t)
    with pytest.raises(ValueError):
        block_count(5, "00")
    with pytest.raises(ValueError):
        block_count(5, BitWord((0, 0, 0)))


def test_bitword():
    w = BitWord.from_str("0110")
    assert str(w) == "0110" and len(w) == 4
    with pytest.raises(ValueError):
        BitWord.from_str("")
    with pytest.raises(ValueError):
        BitWord.from_str("012")
    with pytest.raises(ValueError):
        BitWord(())
