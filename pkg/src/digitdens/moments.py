"""First and second moments of c_t and c~_t over dyadic intervals, the
per-offset density profile, and the floating-point asymptotic comparators.

All moment values are exact (Dyadic or Fraction); floating point appears only
in comparator evaluation and residuals, so that no test of an exact quantity
can hinge on round-off.

For 2^lam <= t < 2^(lam+1), the mean of c_t has the closed form
(1/4^lam) sum_{s=0}^{lam+1} C(2 lam, s) (1 - 2^(s-lam-2)), and the mean of
the individual densities over the interval,

    m[k, lam] = 2^(-j-1)/4^lam * sum_{s<=j} C(2 lam, s) 2^s,   j = lam+1-k,

approaches the Gaussian profile exp(-k^2/lam)/sqrt(pi lam).  Second moments
come either from direct enumeration or from the diagonal coefficients of the
trivariate generating function (series module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .density import interval_sums, iter_interval_values
from .guards import require_cost
from .numeric import DYADIC_HALF, Dyadic

__all__ = [
    "MomentReport",
    "ProfileReport",
    "ChebyshevWindow",
    "mean_closed_form",
    "mean_profile",
    "binomial_identity_check",
    "empirical_moments",
    "asymptotic_comparators",
    "chebyshev_window_count",
    "ASYMPTOTIC_FORMULAS",
]


# ---------------------------------------------------------------------------
# exact closed forms
# ---------------------------------------------------------------------------


def mean_closed_form(lam: int, variant: str = "c", max_cost: int | None = None) -> Dyadic:
    """Exact mean of c_t (or c~_t) over t in [2^lam, 2^(lam+1))."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("mean_closed_form", lam, 10**4, max_cost)
    if variant == "c":
        hi, shift = lam + 1, lam + 2
    elif variant == "ctilde":
        hi, shift = lam, lam + 1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    big = 1 << shift
    num = 0
    binom = 1
    for s in range(hi + 1):
        if s > 2 * lam:
            break
        num += binom * (big - (1 << s))
        binom = binom * (2 * lam - s) // (s + 1)
    return Dyadic(num, 2 * lam + shift)


@dataclass
class ProfileReport:
    """Interval means of the individual densities and their cumulatives."""

    lam: int
    m_k: dict[int, Dyadic]
    M_ell: list[Dyadic]
    gaussian_residuals: dict[int, float] = field(default_factory=dict)

    def window_total(self) -> Dyadic:
        """Window sum plus the geometric tail below it; equals one exactly."""
        total = Dyadic(0)
        for v in self.m_k.values():
            total = total + v
        return total + self.m_k[min(self.m_k)]

    def to_json_obj(self) -> dict:
        return {
            "lambda": self.lam,
            "m_k": {str(k): str(v) for k, v in sorted(self.m_k.items())},
            "M_ell": [str(v) for v in self.M_ell],
            "gaussian_residuals": {
                str(k): f"{v:.6g}" for k, v in sorted(self.gaussian_residuals.items())
            },
        }


def mean_profile(lam: int, max_cost: int | None = None) -> ProfileReport:
    """Exact m[k, lam] for k in [1-lam, lam+1] plus cumulative distribution.

    Below k = 1-lam the profile continues geometrically (each step down
    halves).  Gaussian residuals |m[k, lam] sqrt(pi lam) exp(k^2/lam) - 1| are
    reported for |k| <= sqrt(lam).
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("mean_profile", lam, 10**4, max_cost)
    # partial[j] = sum_{s=0}^{j} C(2 lam, s) 2^s for j = 0..2 lam
    partial = [0] * (2 * lam + 1)
    binom = 1
    acc = 0
    for s in range(2 * lam + 1):
        acc += binom << s
        partial[s] = acc
        binom = binom * (2 * lam - s) // (s + 1)
    # below k = 1 - lam the profile is geometric; include two tail entries so
    # the report covers k = 0 and k = -1 even for tiny lambda
    m_k: dict[int, Dyadic] = {}
    for k in range(-lam - 1, lam + 2):
        j = lam + 1 - k
        m_k[k] = Dyadic(partial[min(j, 2 * lam)], 2 * lam + j + 1)
    # cumulative binomial sums for M
    cum = [0] * (2 * lam + 1)
    binom = 1
    acc = 0
    for s in range(2 * lam + 1):
        acc += binom
        cum[s] = acc
        binom = binom * (2 * lam - s) // (s + 1)
    M_ell = []
    for ell in range(2 * lam + 1):
        M_ell.append(Dyadic(cum[ell], 2 * lam) - m_k[lam + 1 - ell])
    residuals: dict[int, float] = {}
    if lam >= 1:
        width = math.isqrt(lam)
        for k in range(-width, width + 1):
            mk = float(m_k[k].as_fraction())
            residuals[k] = abs(mk * math.sqrt(math.pi * lam) * math.exp(k * k / lam) - 1.0)
    return ProfileReport(lam, m_k, M_ell, residuals)


def binomial_identity_check(lam: int, max_cost: int | None = None) -> bool:
    """Exact check of
    sum_{s<=lam} C(2 lam, s) 2^s
      = (2/3) 2^lam C(2 lam, lam)
        + (1/2) 9^lam (1 - (1/3) sum_{k<=lam} C(2k, k) (2/9)^k),
    carried out in integers after clearing denominators."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("binomial_identity_check", lam, 10**3, max_cost)
    lhs = 0
    binom = 1
    for s in range(lam + 1):
        if s > 2 * lam:
            break
        lhs += binom << s
        binom = binom * (2 * lam - s) // (s + 1)
    central = math.comb(2 * lam, lam)
    csum = 0
    for k in range(lam + 1):
        csum += math.comb(2 * k, k) * (1 << k) * 9 ** (lam - k)
    return 6 * lhs == (1 << (lam + 2)) * central + 3 * 9**lam - csum


# ---------------------------------------------------------------------------
# enumeration-based moments
# ---------------------------------------------------------------------------


@dataclass
class MomentReport:
    """Exact interval moments; sigma fields hold the variances."""

    lam: int
    mean_c: Dyadic
    mean_ctilde: Dyadic
    second_c: Fraction
    second_ctilde: Fraction
    sigma_c: Fraction
    sigma_ctilde: Fraction
    asym_residuals: dict[str, float] = field(default_factory=dict)

    def std_c(self) -> float:
        return math.sqrt(float(self.sigma_c))

    def std_ctilde(self) -> float:
        return math.sqrt(float(self.sigma_ctilde))

    def to_json_obj(self) -> dict:
        return {
            "lambda": self.lam,
            "mean_c": str(self.mean_c),
            "mean_ctilde": str(self.mean_ctilde),
            "second_c": str(self.second_c),
            "second_ctilde": str(self.second_ctilde),
            "variance_c": str(self.sigma_c),
            "variance_ctilde": str(self.sigma_ctilde),
            "std_c": f"{self.std_c():.12g}",
            "std_ctilde": f"{self.std_ctilde():.12g}",
            "asym_residuals": {k: f"{v:.6g}" for k, v in sorted(self.asym_residuals.items())},
        }


def empirical_moments(lam: int, workers: int = 1, max_cost: int | None = None) -> MomentReport:
    """Exact moments over t in [2^lam, 2^(lam+1)) by direct enumeration.

    ``second_c`` is the interval mean of c_t^2 (likewise for c~); variances
    are second moments minus squared means.  Deterministic across worker
    counts.  Cost 2^lam columns; guarded at lam <= 22.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("empirical_moments", 1 << lam, 1 << 22, max_cost)
    s1, s2, t1, t2 = interval_sums(lam, workers=workers, max_cost=max_cost)
    n = 1 << lam
    mean_c = Dyadic(s1.mantissa, s1.scale + lam)
    mean_t = Dyadic(t1.mantissa, t1.scale + lam)
    second_c = s2.as_fraction() / n
    second_t = t2.as_fraction() / n
    var_c = second_c - mean_c.as_fraction() ** 2
    var_t = second_t - mean_t.as_fraction() ** 2
    residuals = {}
    if lam >= 1:
        residuals = {
            "mean_c": abs(float(mean_c.as_fraction() - _exact_float(asymptotic_comparators(lam, "mean_c")))),
            "mean_ctilde": abs(float(mean_t.as_fraction() - _exact_float(asymptotic_comparators(lam, "mean_ctilde")))),
            "secmom_c": abs(float(second_c - _exact_float(asymptotic_comparators(lam, "secmom_c")))),
            "secmom_ctilde": abs(float(second_t - _exact_float(asymptotic_comparators(lam, "secmom_ctilde")))),
        }
    return MomentReport(lam, mean_c, mean_t, second_c, second_t, var_c, var_t, residuals)


def _exact_float(x: float) -> Fraction:
    return Fraction(x)


# ---------------------------------------------------------------------------
# asymptotic comparators (floating point by design)
# ---------------------------------------------------------------------------


def _mean_c_asym(lam: float) -> float:
    return 0.5 + 1 / (2 * math.sqrt(math.pi * lam)) + 15 / (16 * math.sqrt(math.pi) * lam**1.5)


def _mean_ctilde_asym(lam: float) -> float:
    return 0.5 - 1 / (2 * math.sqrt(math.pi * lam)) + 49 / (16 * math.sqrt(math.pi) * lam**1.5)


def _secmom_c_asym(n: float) -> float:
    return (
        0.25
        + 1 / (2 * math.sqrt(math.pi * n))
        + 1 / (4 * math.pi * n)
        + 15 / (16 * math.sqrt(math.pi) * n**1.5)
        + 89 / (72 * math.pi * n**2)
    )


def _secmom_ctilde_asym(n: float) -> float:
    return (
        0.25
        - 1 / (2 * math.sqrt(math.pi * n))
        + 1 / (4 * math.pi * n)
        + 49 / (16 * math.sqrt(math.pi) * n**1.5)
        - 199 / (72 * math.pi * n**2)
    )


SIGMA_CONSTANT = math.sqrt(43) / (12 * math.sqrt(math.pi))
SPECIAL_C_CONSTANT = math.sqrt(3) / (4 * math.sqrt(2 * math.pi))

ASYMPTOTIC_FORMULAS = {
    "mean_c": _mean_c_asym,
    "mean_ctilde": _mean_ctilde_asym,
    "secmom_c": _secmom_c_asym,
    "secmom_ctilde": _secmom_ctilde_asym,
    "sigma": lambda lam: SIGMA_CONSTANT / lam,
    "special_c": lambda j: 0.5 + SPECIAL_C_CONSTANT / math.sqrt(j),
}


def asymptotic_comparators(arg: int | float, which: str) -> float:
    """Evaluate the named truncated asymptotic expansion in double precision."""
    if arg < 1:
        raise ValueError("argument must be >= 1")
    try:
        formula = ASYMPTOTIC_FORMULAS[which]
    except KeyError:
        raise ValueError(f"unknown formula id {which!r}") from None
    return formula(arg)


# ---------------------------------------------------------------------------
# concentration window counts
# ---------------------------------------------------------------------------


@dataclass
class ChebyshevWindow:
    """Counts of t in [2^lam, 2^(lam+1)) inside the concentration window."""

    lam: int
    epsilon: Dyadic
    count: int
    fraction: Fraction
    count_c: int
    count_ctilde: int


def chebyshev_window_count(lam: int, epsilon: Dyadic, max_cost: int | None = None) -> ChebyshevWindow:
    """Count t with 1/2 - eps < c~_t < 1/2 < c_t < 1/2 + eps, all strict.

    ``count_c`` and ``count_ctilde`` report the two one-sided conditions
    separately.  Cost 2^lam; guarded at lam <= 22.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("chebyshev_window_count", 1 << lam, 1 << 22, max_cost)
    half_plus = DYADIC_HALF + epsilon
    half_minus = DYADIC_HALF - epsilon
    both = 0
    n_c = 0
    n_t = 0
    for _, cv, tv in iter_interval_values(lam, max_cost=max_cost):
        ok_c = DYADIC_HALF < cv < half_plus
        ok_t = half_minus < tv < DYADIC_HALF
        if ok_c:
            n_c += 1
        if ok_t:
            n_t += 1
        if ok_c and ok_t:
            both += 1
    return ChebyshevWindow(lam, epsilon, both, Fraction(both, 1 << lam), n_c, n_t)
