"""Equivalent routes to the densities through divisibility in Pascal's triangle.

Four independent reformulations are implemented and cross-checked against the
column densities:

  * rising-factorial divisibility: c_t equals the density of n with
    2^(t+1) not dividing (n+1)(n+2)...(n+t);
  * column densities b_{2^alpha}(t) of {n : 2^alpha does not divide C(n+t, t)},
    via the printed block-count polynomials (alpha <= 4);
  * row counts a_{2^alpha}(t) = |{n <= t : 2^alpha does not divide C(t, n)}|,
    via the printed polynomials and by direct counting;
  * the shortest period of (C(n, t) mod 2^alpha)_n, which equals 2^(alpha+mu)
    for 2^mu <= t < 2^(mu+1).

Only the printed polynomial instances (alpha <= 4) are transcribed; no attempt
is made to generate formulas for higher moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digits import block_count, nu2
from .guards import require_cost
from .numeric import Dyadic

__all__ = [
    "BlockPolynomialValue",
    "density_via_pochhammer",
    "b_poly",
    "a_poly",
    "row_count_direct",
    "zabek_period",
    "A_POLY_COEFFS",
    "B_POLY_COEFFS",
]


@dataclass(frozen=True)
class BlockPolynomialValue:
    alpha: int
    value: Fraction

    def __post_init__(self):
        if not 0 <= self.alpha <= 4:
            raise ValueError("alpha must lie in [0, 4]")
        if self.value < 0:
            raise ValueError("block polynomial values are nonnegative")
        if self.alpha == 0 and self.value != 0:
            raise ValueError("the modulus-1 density is 0")


def density_via_pochhammer(t: int, max_cost: int | None = None) -> Dyadic:
    """Density of {n : 2^(t+1) does not divide (n+1)(n+2)...(n+t)}.

    Counted over one full period 2^(t+1) with a prefix array of valuation
    sums; equals c_t.  Cost 2^(t+1); guarded at t <= 18.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return Dyadic(1)
    require_cost("density_via_pochhammer", 1 << (t + 1), 1 << 19, max_cost)
    period = 1 << (t + 1)
    prefix = [0] * (period + t + 1)
    acc = 0
    for i in range(1, period + t + 1):
        acc += (i & -i).bit_length() - 1
        prefix[i] = acc
    count = 0
    for n in range(period):
        if prefix[n + t] - prefix[n] <= t:
            count += 1
    return Dyadic(count, t + 1)


# Ratio polynomials a_{2^alpha}(t) / a_2(t) and b_{2^alpha}(t) / b_2(t) as
# coefficient tables: {(block words): coefficient} where a key lists the
# blocks whose counts are multiplied (repeats mean powers).
A_POLY_COEFFS: dict[int, dict[tuple[str, ...], Fraction]] = {
    1: {(): Fraction(1)},
    2: {(): Fraction(1), ("10",): Fraction(1, 2)},
    3: {
        (): Fraction(1),
        ("10",): Fraction(3, 8),
        ("100",): Fraction(1),
        ("110",): Fraction(1, 4),
        ("10", "10"): Fraction(1, 8),
    },
    4: {
        (): Fraction(1),
        ("10",): Fraction(5, 12),
        ("100",): Fraction(1, 2),
        ("110",): Fraction(1, 8),
        ("1000",): Fraction(2),
        ("1010",): Fraction(1, 2),
        ("1100",): Fraction(1, 2),
        ("1110",): Fraction(1, 8),
        ("10", "10"): Fraction(1, 16),
        ("10", "100"): Fraction(1, 2),
        ("10", "110"): Fraction(1, 8),
        ("10", "10", "10"): Fraction(1, 48),
    },
}

B_POLY_COEFFS: dict[int, dict[tuple[str, ...], Fraction]] = {
    1: {(): Fraction(1)},
    2: {(): Fraction(1), ("01",): Fraction(1, 2)},
    3: {
        (): Fraction(1),
        ("01",): Fraction(3, 8),
        ("011",): Fraction(1),
        ("001",): Fraction(1, 4),
        ("01", "01"): Fraction(1, 8),
    },
    4: {
        (): Fraction(1),
        ("01",): Fraction(5, 12),
        ("011",): Fraction(1, 2),
        ("001",): Fraction(1, 8),
        ("0111",): Fraction(2),
        ("0101",): Fraction(1, 2),
        ("0011",): Fraction(1, 2),
        ("0001",): Fraction(1, 8),
        ("01", "01"): Fraction(1, 16),
        ("01", "011"): Fraction(1, 2),
        ("01", "001"): Fraction(1, 8),
        ("01", "01", "01"): Fraction(1, 48),
    },
}


def _eval_ratio(coeffs: dict[tuple[str, ...], Fraction], t: int) -> Fraction:
    total = Fraction(0)
    cache: dict[str, int] = {}
    for words, coef in coeffs.items():
        term = coef
        for w in words:
            if w not in cache:
                cache[w] = block_count(t, w)
            term *= cache[w]
        total += term
    return total


def b_poly(alpha: int, t: int) -> Fraction:
    """Density of {n : 2^alpha does not divide C(n+t, t)} via block counts.

    Printed instances only (alpha <= 4).  For alpha = s(t)+1 this equals c_t.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if not 0 <= alpha <= 4:
        raise ValueError("the block polynomial is transcribed only for alpha <= 4")
    if alpha == 0:
        return Fraction(0)
    return _eval_ratio(B_POLY_COEFFS[alpha], t) / (1 << t.bit_count())


def a_poly(alpha: int, t: int) -> Fraction:
    """|{n <= t : 2^alpha does not divide C(t, n)}| via block counts (alpha <= 4)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if not 1 <= alpha <= 4:
        raise ValueError("the row polynomial is transcribed only for 1 <= alpha <= 4")
    return _eval_ratio(A_POLY_COEFFS[alpha], t) * (1 << t.bit_count())


def row_count_direct(t: int, alpha: int, max_cost: int | None = None) -> int:
    """Direct count of n <= t with 2^alpha not dividing C(t, n).

    The valuation is evaluated as s(n) + s(t-n) - s(t) to avoid big-integer
    binomials.  Cost t+1; guarded at t <= 2^14.
    """
    if t < 0 or alpha < 0:
        raise ValueError("arguments must be nonnegative")
    require_cost("row_count_direct", t + 1, (1 << 14) + 1, max_cost)
    st = t.bit_count()
    count = 0
    for n in range(t + 1):
        if n.bit_count() + (t - n).bit_count() - st < alpha:
            count += 1
    return count


def zabek_period(t: int, alpha: int, max_cost: int | None = None) -> int:
    """Shortest period of the sequence (C(n, t) mod 2^alpha)_{n>=0}.

    Found by direct search over the candidate 2^(alpha+mu) and its divisors,
    where 2^mu <= t < 2^(mu+1); the result is verified to equal the candidate.
    The residues are maintained incrementally as (valuation, odd part mod
    2^alpha) pairs, so no big integers arise.
    """
    if t < 1 or alpha < 1:
        raise ValueError("need t >= 1 and alpha >= 1")
    mu = t.bit_length() - 1
    lam = alpha + mu
    require_cost("zabek_period", 1 << (lam + 1), 1 << 21, max_cost)
    mod = 1 << alpha
    mask = mod - 1
    inv = {}
    for o in range(1, mod, 2):
        inv[o] = pow(o, -1, mod) if alpha > 1 else 1
    length = 1 << (lam + 1)
    seq = [0] * min(t, length)
    if t < length:
        seq.append(1 % mod)
    nu_acc = 0
    odd = 1 % mod
    for n in range(t, length - 1):
        x = n + 1
        nu_acc += nu2(x)
        odd = (odd * ((x >> nu2(x)) & mask)) & mask
        y = n + 1 - t
        nu_acc -= nu2(y)
        odd = (odd * inv[(y >> nu2(y)) & mask]) & mask
        seq.append(0 if nu_acc >= alpha else (odd << nu_acc) & mask)
    for e in range(lam + 1):
        period = 1 << e
        if all(seq[i + period] == seq[i] for i in range(length - period)):
            if period != 1 << lam:
                raise RuntimeError(
                    f"period search for t={t}, alpha={alpha} found {period}, "
                    f"expected {1 << lam}"
                )
            return period
    raise RuntimeError(f"no power-of-two period up to 2^{lam} for t={t}, alpha={alpha}")
