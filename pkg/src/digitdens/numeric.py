"""Exact arithmetic foundation: dyadic rationals and binomial coefficients.

Every density handled by this package is a dyadic rational p/2^e, so
:class:`Dyadic` is the workhorse number type.  The general rational type is
the standard library :class:`fractions.Fraction` (re-exported as ``Rational``);
it is needed only for quantities that leave the dyadic world, such as series
coefficients with odd factors in the denominator.

Python integers are arbitrary precision with a fast small-int path, so a
single mantissa representation covers both the machine-word regime and the
overflow regime without explicit promotion logic.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction

__all__ = ["Dyadic", "Rational", "binomial_exact", "DYADIC_ZERO", "DYADIC_ONE", "DYADIC_HALF"]


class Dyadic:
    """Exact rational with a power-of-two denominator.

    The value is ``mantissa * 2**(-scale)`` with the canonical-form invariant
    that ``mantissa`` is odd, or ``mantissa == 0 and scale == 0``.  ``scale``
    may be negative (even integers).  Instances are immutable; arithmetic is
    closed and exact, with no rounding anywhere.
    """

    __slots__ = ("mantissa", "scale")

    def __init__(self, mantissa: int, scale: int = 0):
        if mantissa == 0:
            scale = 0
        else:
            shift = (mantissa & -mantissa).bit_length() - 1
            if shift:
                mantissa >>= shift
                scale -= shift
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "scale", scale)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def _raw(cls, mantissa: int, scale: int) -> "Dyadic":
        """Construct without normalizing; caller guarantees canonical form."""
        d = object.__new__(cls)
        object.__setattr__(d, "mantissa", mantissa)
        object.__setattr__(d, "scale", scale)
        return d

    # -- conversions ---------------------------------------------------------

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "Dyadic":
        """Exact conversion; raises ValueError unless the denominator is a power of two."""
        if isinstance(value, int):
            return cls(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    def as_fraction(self) -> Fraction:
        if self.scale >= 0:
            return Fraction(self.mantissa, 1 << self.scale)
        return Fraction(self.mantissa << -self.scale)

    def as_integer_ratio(self) -> tuple[int, int]:
        if self.scale >= 0:
            return (self.mantissa, 1 << self.scale)
        return (self.mantissa << -self.scale, 1)

    def __float__(self) -> float:
        num, den = self.as_integer_ratio()
        return num / den

    def __bool__(self) -> bool:
        return self.mantissa != 0

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if self.mantissa == 0:
            return "0"
        if self.scale <= 0:
            return str(self.mantissa << -self.scale)
        return f"{self.mantissa}/2^{self.scale}"

    def __repr__(self) -> str:
        return f"Dyadic({self.mantissa}, {self.scale})"

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Inverse of ``str``; also accepts "p/q" with q a power of two."""
        text = text.strip()
        if "/" not in text:
            return cls(int(text))
        num, _, den = text.partition("/")
        if den.startswith("2^"):
            return cls(int(num), int(den[2:]))
        d = int(den)
        if d <= 0 or d & (d - 1):
            raise ValueError(f"not a dyadic rational: {text!r}")
        return cls(int(num), d.bit_length() - 1)

    def to_decimal(self, digits: int = 12) -> str:
        """Decimal rendering with explicit precision, rounded half away from zero."""
        if digits < 0:
            raise ValueError("digits must be >= 0")
        num, den = self.as_integer_ratio()
        sign = "-" if num < 0 else ""
        num = abs(num)
        scaled = num * 10**digits
        q, r = divmod(scaled, den)
        if 2 * r >= den:
            q += 1
        if digits == 0:
            return f"{sign}{q}"
        intpart, fracpart = divmod(q, 10**digits)
        return f"{sign}{intpart}.{fracpart:0{digits}d}"

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.as_fraction() + other
            return NotImplemented
        e = self.scale if self.scale >= o.scale else o.scale
        m = (self.mantissa << (e - self.scale)) + (o.mantissa << (e - o.scale))
        return Dyadic(m, e)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.as_fraction() - other
            return NotImplemented
        e = self.scale if self.scale >= o.scale else o.scale
        m = (self.mantissa << (e - self.scale)) - (o.mantissa << (e - o.scale))
        return Dyadic(m, e)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return other - self.as_fraction()
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.as_fraction() * other
            return NotImplemented
        if self.mantissa == 0 or o.mantissa == 0:
            return DYADIC_ZERO
        return Dyadic(self.mantissa * o.mantissa, self.scale + o.scale)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic._raw(-self.mantissa, self.scale)

    def __abs__(self):
        return Dyadic._raw(abs(self.mantissa), self.scale)

    def halve(self) -> "Dyadic":
        """Exact division by two."""
        if self.mantissa == 0:
            return self
        return Dyadic._raw(self.mantissa, self.scale + 1)

    def shift(self, k: int) -> "Dyadic":
        """Exact multiplication by 2**k."""
        if self.mantissa == 0:
            return self
        return Dyadic._raw(self.mantissa, self.scale - k)

    # -- comparisons ---------------------------------------------------------

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                a = self.as_fraction()
                return (a > other) - (a < other)
            return NotImplemented
        d = self.scale - o.scale
        if d >= 0:
            lhs, rhs = self.mantissa, o.mantissa << d
        else:
            lhs, rhs = self.mantissa << -d, o.mantissa
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is NotImplemented else r == 0

    def __lt__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is NotImplemented else r < 0

    def __le__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is NotImplemented else r <= 0

    def __gt__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is NotImplemented else r > 0

    def __ge__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is NotImplemented else r >= 0

    def __hash__(self):
        return hash(self.as_fraction())


DYADIC_ZERO = Dyadic._raw(0, 0)
DYADIC_ONE = Dyadic._raw(1, 0)
DYADIC_HALF = Dyadic._raw(1, 1)


def binomial_exact(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 when k < 0 or k > n.  Requires n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
