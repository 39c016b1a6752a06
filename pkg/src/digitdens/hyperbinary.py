"""Proper hyperbinary expansions and their digit-count statistics.

A hyperbinary expansion of n is a base-2 digit string over {0, 1, 2} summing
to n; it is proper if it is empty or its leading digit is nonzero.  The counts
h[i, j] of proper expansions of t-1 with i twos and j zeros rebuild the phi
column of the density module through the weights 2^-(i+j), which is this
module's cross-check target.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .density import PhiColumn
from .guards import require_cost
from .numeric import DYADIC_ZERO, Dyadic

__all__ = [
    "HyperExpansion",
    "HyperbinaryCounts",
    "enumerate_proper",
    "h_counts",
    "phi_from_hyperbinary",
    "corollary_sum",
]


@dataclass(frozen=True)
class HyperExpansion:
    """Digits over {0, 1, 2}, most significant first; empty for n = 0."""

    digits: tuple[int, ...]

    def __post_init__(self):
        if any(d not in (0, 1, 2) for d in self.digits):
            raise ValueError("digits must lie in {0, 1, 2}")
        if self.digits and self.digits[0] == 0:
            raise ValueError("a proper expansion has no leading zero")

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = 2 * v + d
        return v

    @property
    def twos(self) -> int:
        return self.digits.count(2)

    @property
    def zeros(self) -> int:
        return self.digits.count(0)

    def weight(self) -> Dyadic:
        """2^-(#twos + #zeros), the phi-reconstruction weight."""
        return Dyadic(1, self.twos + self.zeros)

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits) if self.digits else "()"


@lru_cache(maxsize=None)
def _expansions(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for eps in (0, 1, 2):
        if eps > n or (n - eps) & 1:
            continue
        m = (n - eps) >> 1
        if m == 0 and eps == 0:
            continue
        for prefix in _expansions(m):
            out.append(prefix + (eps,))
    return tuple(sorted(out))


def enumerate_proper(n: int, max_cost: int | None = None) -> list[HyperExpansion]:
    """All proper hyperbinary expansions of n, duplicate-free, sorted."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_cost("enumerate_proper", n, 1 << 20, max_cost)
    return [HyperExpansion(d) for d in _expansions(n)]


@dataclass(frozen=True)
class HyperbinaryCounts:
    """counts[(i, j)]: proper expansions of t-1 with i twos and j zeros."""

    t: int
    counts: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def weighted_total(self) -> Dyadic:
        s = DYADIC_ZERO
        for (i, j), n in self.counts.items():
            s = s + Dyadic(n, i + j)
        return s


def _h_mix(hu: dict, hu1: dict) -> dict:
    """Counts for 2t+1 from those of t and t+1:
    h[i, j](2t+1) = h[i-1, j](t) + h[i, j-1](t+1)."""
    out: dict[tuple[int, int], int] = {}
    for (i, j), v in hu.items():
        key = (i + 1, j)
        out[key] = out.get(key, 0) + v
    for (i, j), v in hu1.items():
        key = (i, j + 1)
        out[key] = out.get(key, 0) + v
    return out


_H1 = {(0, 0): 1}


def _h_recurrence(t: int) -> dict[tuple[int, int], int]:
    t >>= ((t & -t).bit_length() - 1)
    hu = _H1
    hv = _H1
    for ch in bin(t)[3:]:
        m = _h_mix(hu, hv)
        if ch == "0":
            hv = m
        else:
            hu = m
    return hu


def h_counts(t: int, method: str = "recurrence", max_cost: int | None = None) -> HyperbinaryCounts:
    """Tally (#twos, #zeros) over the proper expansions of t-1.

    ``enumerate`` lists the expansions; ``recurrence`` walks the binary digits
    of t with the same two-column scheme as the density recurrence.  The two
    must agree.
    """
    if t < 1:
        raise ValueError("t must be positive")
    require_cost("h_counts", t, 1 << 20, max_cost)
    if method == "recurrence":
        return HyperbinaryCounts(t, dict(_h_recurrence(t)))
    if method == "enumerate":
        counts: dict[tuple[int, int], int] = {}
        for digits in _expansions(t - 1):
            key = (digits.count(2), digits.count(0))
            counts[key] = counts.get(key, 0) + 1
        return HyperbinaryCounts(t, counts)
    raise ValueError(f"unknown method {method!r}")


def phi_from_hyperbinary(t: int, k: int, max_cost: int | None = None) -> Dyadic:
    """phi(k, t) rebuilt as sum over i - j = k of 2^-(i+j) h[i, j](t)."""
    counts = h_counts(t, max_cost=max_cost)
    s = DYADIC_ZERO
    for (i, j), n in counts.counts.items():
        if i - j == k:
            s = s + Dyadic(n, i + j)
    return s


def phi_column_from_hyperbinary(t: int, max_cost: int | None = None) -> PhiColumn:
    """Whole reconstructed column; cross-check against density.phi_column."""
    counts = h_counts(t, max_cost=max_cost)
    support: dict[int, Dyadic] = {}
    for (i, j), n in counts.counts.items():
        k = i - j
        support[k] = support.get(k, DYADIC_ZERO) + Dyadic(n, i + j)
    return PhiColumn(t, {k: v for k, v in support.items() if v})


def corollary_sum(t: int, max_cost: int | None = None) -> Dyadic:
    """Partial weighted sum over i >= j >= 0; equals p_t of the density module."""
    counts = h_counts(t, max_cost=max_cost)
    s = DYADIC_ZERO
    for (i, j), n in counts.counts.items():
        if i >= j:
            s = s + Dyadic(n, i + j)
    return s
