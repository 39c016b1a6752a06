"""Binary digit primitives: digit sums, 2-adic valuations, carries, reversal,
and block (subword) counting.

All functions work in base 2 only.  Two independent routes to the valuation
of a binomial coefficient are provided: the digit-sum formula and an explicit
carry count; agreement of the two is a test target, so neither is expressed
through the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .guards import require_cost

__all__ = [
    "BitWord",
    "sum_of_digits",
    "nu2",
    "nu2_pochhammer",
    "nu2_binomial",
    "nu2_binomial_range",
    "reverse_binary",
    "block_count",
]


@dataclass(frozen=True)
class BitWord:
    """A finite 0/1 word, most significant bit first.  Used as a block-counting pattern."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) < 1:
            raise ValueError("BitWord must have length >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("BitWord entries must be 0 or 1")

    @classmethod
    def from_str(cls, text: str) -> "BitWord":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 word: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)


def sum_of_digits(n: int) -> int:
    """Number of ones in the binary expansion of n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n.bit_count()


def nu2(n: int) -> int:
    """Largest e with 2^e dividing n; rejects n = 0 (infinite valuation)."""
    if n <= 0:
        raise ValueError("n must be positive")
    return (n & -n).bit_length() - 1


def nu2_pochhammer(n: int, t: int, max_cost: int | None = None) -> int:
    """2-adic valuation of the rising factorial n(n+1)...(n+t-1).

    Deliberately computed as the term-by-term sum of valuations over the
    range, so it can serve as an independent oracle; intended for t <= 2^12.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")
    require_cost("nu2_pochhammer", t, 1 << 12, max_cost)
    total = 0
    for i in range(n, n + t):
        total += (i & -i).bit_length() - 1
    return total


def nu2_binomial(n: int, t: int, method: str = "legendre") -> int:
    """2-adic valuation of C(n+t, t).

    ``legendre`` evaluates s(n) + s(t) - s(n+t); ``kummer`` simulates the
    binary addition n + t and counts the carries.
    """
    if n < 0 or t < 0:
        raise ValueError("arguments must be nonnegative")
    if method == "legendre":
        return n.bit_count() + t.bit_count() - (n + t).bit_count()
    if method == "kummer":
        carries = 0
        carry = 0
        while n or t or carry:
            s = (n & 1) + (t & 1) + carry
            carry = s >> 1
            carries += carry
            n >>= 1
            t >>= 1
        return carries
    raise ValueError(f"unknown method {method!r}")


def nu2_binomial_range(t: int, n_hi: int, method: str = "legendre") -> list[int]:
    """Vectorized ``nu2_binomial`` for n = 0 .. n_hi-1 at fixed t.

    The two methods stay independent: ``legendre`` through digit sums,
    ``kummer`` through the carry positions of the addition (the XOR of the
    sum with both addends has a set bit exactly where a carry arrives).
    """
    if t < 0 or n_hi < 0:
        raise ValueError("arguments must be nonnegative")
    if method == "legendre":
        st = t.bit_count()
        return [st + n.bit_count() - (n + t).bit_count() for n in range(n_hi)]
    if method == "kummer":
        return [((n + t) ^ n ^ t).bit_count() for n in range(n_hi)]
    raise ValueError(f"unknown method {method!r}")


def reverse_binary(t: int) -> int:
    """The integer whose base-2 representation is that of t >= 1 reversed."""
    if t < 1:
        raise ValueError("t must be positive")
    return int(bin(t)[:1:-1], 2)


def block_count(t: int, w: BitWord | str) -> int:
    """Occurrences of the word w as a factor of the binary expansion of t.

    The expansion is padded on the left with len(w)-1 zeros, i.e. occurrences
    are counted in the two-sided word ...000(binary of t); this is the unique
    convention under which the block polynomials of the ``equivalences``
    module reproduce the column densities.  Words without a 1 are rejected
    (their count would be infinite).
    """
    if isinstance(w, str):
        w = BitWord.from_str(w)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if 1 not in w.bits:
        raise ValueError("all-zero words occur infinitely often")
    pattern = str(w)
    text = "0" * (len(pattern) - 1) + bin(t)[2:]
    count = 0
    start = 0
    while True:
        pos = text.find(pattern, start)
        if pos < 0:
            return count
        count += 1
        start = pos + 1
