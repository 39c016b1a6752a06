"""Exact densities of binary digit-sum differences.

For nonnegative t, ``delta(k, t)`` is the asymptotic density of the set
{n : s(n+t) - s(n) = k}, where s is the binary sum-of-digits function.  The
whole t-th column is computed bottom-up from the two-term recurrence

    delta(k, 1)    = 2^(k-2) for k <= 1, else 0
    delta(k, 2t)   = delta(k, t)
    delta(k, 2t+1) = delta(k-1, t)/2 + delta(k+1, t+1)/2

by walking the binary digits of t most-significant-first while keeping the
pair of adjacent columns (prefix u, prefix u+1).

A column has finite support above (zero for k > s(t)) and an exact geometric
lower tail: below a computable threshold k_lo every step down halves the
value.  Columns are therefore stored as a finite window [k_lo, k_hi] of
integer mantissas over a shared power-of-two scale plus the tail head; the
recurrence maps such columns to such columns (threshold a_1 = 1, a_{2t} = a_t,
a_{2t+1} = min(a_t + 1, a_{t+1} - 1)).

The same digit walk with the point-mass start vector yields the finite-support
companion array ``phi`` and the partial sums p_t.

``scan_range`` verifies c_t > 1/2 >= c~_t over ranges of t, sharing prefix
work through a depth-first traversal of the binary prefix tree; the traversal
can be split over worker processes, and the report merge is associative and
commutative, so results are independent of scheduling.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from io import StringIO
from itertools import repeat as _repeat
from operator import add as _add, lshift as _lshift

from .guards import require_cost
from .numeric import DYADIC_ONE, DYADIC_ZERO, Dyadic

__all__ = [
    "DeltaColumn",
    "PhiColumn",
    "ScanReport",
    "delta_column",
    "delta",
    "c",
    "c_tilde",
    "phi_column",
    "p",
    "delta_from_phi",
    "phi_reduction_check",
    "brute_force_density",
    "brute_force_histogram",
    "scan_range",
    "p_scan",
    "interval_sums",
    "iter_interval_values",
]


# ---------------------------------------------------------------------------
# internal integer columns
# ---------------------------------------------------------------------------


class _Col:
    """Window [klo, khi] of integer mantissas over a shared scale.

    Entry k has the exact value vals[k - klo] / 2**scale; entries above khi
    are zero and entries below klo continue geometrically with ratio 2 going
    down from vals[0].
    """

    __slots__ = ("khi", "klo", "scale", "vals")

    def __init__(self, khi: int, klo: int, scale: int, vals: list[int]):
        self.khi = khi
        self.klo = klo
        self.scale = scale
        self.vals = vals

    def __reduce__(self):
        return (_Col, (self.khi, self.klo, self.scale, self.vals))


#: column of t = 1 (also of every power of two): value 2^(k-2) for k <= 1.
_COL1 = _Col(1, 1, 1, [1])


def _mix(a: _Col, b: _Col, klo_floor: int | None = None) -> _Col:
    """Column of 2u+1 from the columns of u and u+1.

    Entry k is (a(k-1) + b(k+1)) / 2.  The few entries near the new tail
    threshold may reach below a window (geometric lookups, handled entry by
    entry); the bulk of the window is two aligned slices combined at C speed.

    ``klo_floor`` truncates the result window from below; the caller must
    guarantee that entries under the floor are never read again (the floor
    must rise by at least two per generation), because the geometric-tail
    invariant no longer holds beneath it.
    """
    khi = a.khi + 1
    klo = min(a.klo + 1, b.klo - 1)
    if klo_floor is not None and klo < klo_floor:
        klo = klo_floor
    da = a.klo - klo + 1
    db = b.klo - klo - 1
    scale = 1 + max(a.scale + (da if da > 0 else 0), b.scale + (db if db > 0 else 0))
    sa = scale - 1 - a.scale
    sb = scale - 1 - b.scale
    a_vals = a.vals
    a_klo = a.klo
    a_khi = a.khi
    b_vals = b.vals
    b_klo = b.klo
    b_khi = b.khi
    vals = []
    k_reg = a_klo + 1 if a_klo + 1 >= b_klo - 1 else b_klo - 1
    if k_reg < klo:
        k_reg = klo
    for k in range(klo, k_reg):
        ka = k - 1
        if ka > a_khi:
            va = 0
        elif ka >= a_klo:
            va = a_vals[ka - a_klo] << sa
        else:
            va = a_vals[0] << (sa - a_klo + ka)
        kb = k + 1
        if kb > b_khi:
            vb = 0
        elif kb >= b_klo:
            vb = b_vals[kb - b_klo] << sb
        else:
            vb = b_vals[0] << (sb - b_klo + kb)
        vals.append(va + vb)
    # from k_reg on, a(k-1) is always in a's window and b(k+1) is in b's
    # window up to k = b_khi - 1, zero beyond
    top_b = khi if khi <= b_khi - 1 else b_khi - 1
    mid_len = top_b - k_reg + 1
    if mid_len > 0:
        asl = a_vals[k_reg - 1 - a_klo : k_reg - 1 - a_klo + mid_len]
        bsl = b_vals[k_reg + 1 - b_klo : k_reg + 1 - b_klo + mid_len]
        if sa:
            asl = map(_lshift, asl, _repeat(sa))
        if sb:
            bsl = map(_lshift, bsl, _repeat(sb))
        vals += map(_add, asl, bsl)
    start = k_reg if k_reg > top_b + 1 else top_b + 1
    if start <= khi:
        asl = a_vals[start - 1 - a_klo : khi - a_klo]
        vals += map(_lshift, asl, _repeat(sa)) if sa else asl
    return _Col(khi, klo, scale, vals)


@lru_cache(maxsize=4096)
def _col_for(t: int) -> _Col:
    """Integer column of t >= 1 (reduced to the odd part first)."""
    t >>= ((t & -t).bit_length() - 1)
    cu = _COL1
    cv = _COL1
    for ch in bin(t)[3:]:
        m = _mix(cu, cv)
        if ch == "0":
            cv = m
        else:
            cu = m
    return cu


def _c_ct_ints(col: _Col) -> tuple[int, int, int, int]:
    """(c_num, c_scale, ct_num, ct_scale) with c = sum_{k>=0} delta(k)."""
    klo = col.klo
    vals = col.vals
    if klo > 0:
        cs = col.scale + klo
        cn = (sum(vals) << klo) + vals[0] * ((1 << klo) - 1)
        return cn, cs, cn - vals[0], cs
    cn = sum(vals[-klo:])
    return cn, col.scale, cn - vals[-klo], col.scale


# ---------------------------------------------------------------------------
# public column types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DeltaColumn:
    """The t-th column of the density array as window plus geometric tail."""

    t: int
    k_hi: int
    k_lo: int
    window: dict[int, Dyadic]
    tail_head: Dyadic

    def delta(self, k: int) -> Dyadic:
        if k > self.k_hi:
            return DYADIC_ZERO
        if k >= self.k_lo:
            return self.window[k]
        return self.tail_head.shift(k - self.k_lo)

    def total(self) -> Dyadic:
        """Window sum plus the closed-form tail sum; equals one exactly."""
        s = DYADIC_ZERO
        for v in self.window.values():
            s = s + v
        return s + self.tail_head

    def c_value(self) -> Dyadic:
        s = DYADIC_ZERO
        for k, v in self.window.items():
            if k >= 0:
                s = s + v
        if self.k_lo > 0:
            s = s + (self.tail_head - self.tail_head.shift(-self.k_lo))
        return s

    def values_equal(self, other: "DeltaColumn") -> bool:
        lo = min(self.k_lo, other.k_lo) - 1
        hi = max(self.k_hi, other.k_hi)
        return all(self.delta(k) == other.delta(k) for k in range(lo, hi + 1))


@dataclass(frozen=True, eq=False)
class PhiColumn:
    """Finite-support column of the simplified array."""

    t: int
    support: dict[int, Dyadic]

    def phi(self, k: int) -> Dyadic:
        return self.support.get(k, DYADIC_ZERO)

    def total(self) -> Dyadic:
        s = DYADIC_ZERO
        for v in self.support.values():
            s = s + v
        return s

    def p_value(self) -> Dyadic:
        s = DYADIC_ZERO
        for k, v in self.support.items():
            if k >= 0:
                s = s + v
        return s

    def values_equal(self, other: "PhiColumn") -> bool:
        keys = set(self.support) | set(other.support)
        return all(self.phi(k) == other.phi(k) for k in keys)


def _col_to_delta_column(t: int, col: _Col) -> DeltaColumn:
    window = {
        k: Dyadic(col.vals[k - col.klo], col.scale) for k in range(col.klo, col.khi + 1)
    }
    return DeltaColumn(t, col.khi, col.klo, window, Dyadic(col.vals[0], col.scale))


def delta_column(t: int) -> DeltaColumn:
    """Exact column of densities for t >= 1 via the two-column digit walk."""
    if t < 1:
        raise ValueError("t must be positive (the t = 0 column is the point mass at 0)")
    return _col_to_delta_column(t, _col_for(t))


def delta(k: int, t: int) -> Dyadic:
    """delta(k, t): density of {n : s(n+t) - s(n) = k}."""
    if t < 1:
        if t == 0:
            return DYADIC_ONE if k == 0 else DYADIC_ZERO
        raise ValueError("t must be nonnegative")
    col = _col_for(t)
    if k > col.khi:
        return DYADIC_ZERO
    if k >= col.klo:
        return Dyadic(col.vals[k - col.klo], col.scale)
    return Dyadic(col.vals[0], col.scale + col.klo - k)


def c(t: int) -> Dyadic:
    """Density of {n : s(n+t) >= s(n)}; c(0) = 1 by convention."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return DYADIC_ONE
    cn, cs, _, _ = _c_ct_ints(_col_for(t))
    return Dyadic(cn, cs)


def c_tilde(t: int) -> Dyadic:
    """Density of {n : s(n+t) > s(n)}; c_tilde(0) = 0."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return DYADIC_ZERO
    _, _, tn, ts = _c_ct_ints(_col_for(t))
    return Dyadic(tn, ts)


def _oracle_period_exp(k: int, t: int) -> int:
    # {n : s(n+t) - s(n) = k} is a finite union of residue classes a + 2^r N.
    # Unfolding the two-term recurrence, each of the lam = floor(log2 t) digit
    # levels adds one to r and shifts the k-argument by at most one, and the
    # base column t = 1 has classes modulo 2^(2-k); hence r <= 2*lam + 2 - k
    # (and r <= 2*lam + 2 for k >= 0), so counting over one such period is
    # exact.  Note the period can exceed 2^(t+1) for negative k: the level
    # set for k = -3, t = 1 is 15 + 32N.
    lam = t.bit_length() - 1 if t else 0
    return 2 * lam + 2 + max(0, -k)


def brute_force_density(k: int, t: int, max_cost: int | None = None) -> Dyadic:
    """Independent oracle: count the n in one full period with s(n+t) - s(n) = k.

    Cost 2^(2 floor(log2 t) + 2 + max(0, -k)); guarded for t <= 20 at
    moderate |k|.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return DYADIC_ONE if k == 0 else DYADIC_ZERO
    e = _oracle_period_exp(k, t)
    require_cost("brute_force_density", 1 << e, 1 << 25, max_cost)
    count = 0
    for n in range(1 << e):
        if (n + t).bit_count() - n.bit_count() == k:
            count += 1
    return Dyadic(count, e)


def brute_force_histogram(t: int, max_cost: int | None = None) -> dict[int, Dyadic]:
    """Densities of all level sets with k >= -t-2 by one enumeration pass."""
    if t < 1:
        raise ValueError("t must be positive")
    e = _oracle_period_exp(-t - 2, t)
    require_cost("brute_force_histogram", 1 << e, 1 << 25, max_cost)
    counts: dict[int, int] = {}
    for n in range(1 << e):
        k = (n + t).bit_count() - n.bit_count()
        counts[k] = counts.get(k, 0) + 1
    return {k: Dyadic(v, e) for k, v in counts.items() if k >= -t - 2}


# ---------------------------------------------------------------------------
# phi: the finite-support companion array
# ---------------------------------------------------------------------------


class _PhiCol:
    """Finite support [lo, lo+len(vals)-1], integer mantissas over a shared scale."""

    __slots__ = ("lo", "scale", "vals")

    def __init__(self, lo: int, scale: int, vals: list[int]):
        self.lo = lo
        self.scale = scale
        self.vals = vals

    def __reduce__(self):
        return (_PhiCol, (self.lo, self.scale, self.vals))


_PHI1 = _PhiCol(0, 0, [1])


def _phi_mix(a: _PhiCol, b: _PhiCol) -> _PhiCol:
    a_hi = a.lo + len(a.vals) - 1
    b_hi = b.lo + len(b.vals) - 1
    lo = min(a.lo + 1, b.lo - 1)
    hi = max(a_hi + 1, b_hi - 1)
    scale = max(a.scale, b.scale) + 1
    sa = scale - 1 - a.scale
    sb = scale - 1 - b.scale
    a_vals = a.vals
    a_lo = a.lo
    b_vals = b.vals
    b_lo = b.lo
    vals = []
    append = vals.append
    for k in range(lo, hi + 1):
        ka = k - 1
        va = a_vals[ka - a_lo] << sa if a_lo <= ka <= a_hi else 0
        kb = k + 1
        vb = b_vals[kb - b_lo] << sb if b_lo <= kb <= b_hi else 0
        append(va + vb)
    while vals and vals[-1] == 0:
        vals.pop()
    strip = 0
    while strip < len(vals) and vals[strip] == 0:
        strip += 1
    if strip:
        vals = vals[strip:]
        lo += strip
    return _PhiCol(lo, scale, vals)


@lru_cache(maxsize=4096)
def _phi_for(t: int) -> _PhiCol:
    t >>= ((t & -t).bit_length() - 1)
    cu = _PHI1
    cv = _PHI1
    for ch in bin(t)[3:]:
        m = _phi_mix(cu, cv)
        if ch == "0":
            cv = m
        else:
            cu = m
    return cu


def _p_ints(col: _PhiCol) -> tuple[int, int]:
    start = max(0, -col.lo)
    return sum(col.vals[start:]), col.scale


def phi_column(t: int) -> PhiColumn:
    """Exact finite-support column of the simplified array for t >= 1."""
    if t < 1:
        raise ValueError("t must be positive")
    col = _phi_for(t)
    support = {
        col.lo + i: Dyadic(v, col.scale) for i, v in enumerate(col.vals) if v
    }
    return PhiColumn(t, support)


def p(t: int) -> Dyadic:
    """p_t: sum of the nonnegative-index entries of the phi column."""
    if t < 1:
        raise ValueError("t must be positive")
    num, scale = _p_ints(_phi_for(t))
    return Dyadic(num, scale)


def p_scan(t_hi: int, max_cost: int | None = None) -> tuple[list[int], tuple[int, Dyadic]]:
    """Verify p_t >= 1/2 for every t < t_hi.

    Only odd t are walked (p_{2t} = p_t, and the odd part of an even t < t_hi
    is itself below t_hi).  Returns the exact violations and the minimum with
    its smallest witness.
    """
    if t_hi < 2:
        raise ValueError("t_hi must be at least 2")
    require_cost("p_scan", t_hi, 1 << 22, max_cost)
    violations: list[int] = []
    best: tuple[int, int, int] | None = None
    stack = [(1, _PHI1, _PHI1)]
    while stack:
        u, a, b = stack.pop()
        if u & 1:
            num, sc = _p_ints(a)
            if (num << 1) < (1 << sc):
                violations.append(u)
            if best is None or _dy_less(num, sc, best[0], best[1]) or (
                not _dy_less(best[0], best[1], num, sc) and u < best[2]
            ):
                best = (num, sc, u)
        u2 = u << 1
        if u2 < t_hi:
            m = _phi_mix(a, b)
            if u2 + 1 < t_hi:
                stack.append((u2 + 1, m, b))
            stack.append((u2, a, m))
    assert best is not None
    return sorted(violations), (best[2], Dyadic(best[0], best[1]))


def delta_from_phi(t: int) -> DeltaColumn:
    """Recover the density column from the phi column:
    delta(k, t) = sum_{j>=0} 2^(-1-j) phi(k-1+j, t).  Cross-check pipeline."""
    if t < 1:
        raise ValueError("t must be positive")
    pc = _phi_for(t)
    hi = pc.lo + len(pc.vals) - 1
    k_hi = hi + 1
    k_lo = pc.lo + 1
    width = hi - pc.lo + 2
    scale = pc.scale + width
    window = {}
    for k in range(k_lo, k_hi + 1):
        num = 0
        for j in range(max(0, pc.lo - (k - 1)), hi - (k - 1) + 1):
            num += pc.vals[k - 1 + j - pc.lo] << (width - 1 - j)
        window[k] = Dyadic(num, scale)
    return DeltaColumn(t, k_hi, k_lo, window, window[k_lo])


def phi_reduction_check(t: int, k: int) -> bool:
    """Whether delta(k, t) equals phi(k, 2^(s(t)+1) t + 1) (k >= 0)."""
    if t < 1 or k < 0:
        raise ValueError("need t >= 1 and k >= 0")
    t1 = (t << (t.bit_count() + 1)) + 1
    return delta(k, t) == phi_column(t1).phi(k)


# ---------------------------------------------------------------------------
# range scans
# ---------------------------------------------------------------------------


@dataclass
class ScanReport:
    """Aggregate result of a range verification over t in [t_lo, t_hi)."""

    t_lo: int
    t_hi: int
    checked: int
    violations_c: list[int]
    violations_ctilde: list[int]
    min_c: tuple[int, Dyadic]
    max_ctilde: tuple[int, Dyadic]
    epsilon_counts: dict[Dyadic, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations_c and not self.violations_ctilde

    def to_json(self) -> str:
        def witness(pair):
            t, v = pair
            return {"t": t, "value": str(v), "decimal": v.to_decimal(12)}

        obj = {
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "checked": self.checked,
            "violations_c": self.violations_c,
            "violations_ctilde": self.violations_ctilde,
            "min_c": witness(self.min_c),
            "max_ctilde": witness(self.max_ctilde),
            "epsilon_counts": [
                {"epsilon": str(e), "count": n} for e, n in self.epsilon_counts.items()
            ],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ScanReport":
        obj = json.loads(text)

        def witness(d):
            return (d["t"], Dyadic.parse(d["value"]))

        return cls(
            t_lo=obj["t_lo"],
            t_hi=obj["t_hi"],
            checked=obj["checked"],
            violations_c=list(obj["violations_c"]),
            violations_ctilde=list(obj["violations_ctilde"]),
            min_c=witness(obj["min_c"]),
            max_ctilde=witness(obj["max_ctilde"]),
            epsilon_counts={
                Dyadic.parse(e["epsilon"]): e["count"] for e in obj["epsilon_counts"]
            },
        )

    def to_csv(self) -> str:
        out = StringIO()
        out.write("kind,t,value,decimal\n")
        t, v = self.min_c
        out.write(f"min_c,{t},{v},{v.to_decimal(12)}\n")
        t, v = self.max_ctilde
        out.write(f"max_ctilde,{t},{v},{v.to_decimal(12)}\n")
        for t in self.violations_c:
            v = c(t)
            out.write(f"violation_c,{t},{v},{v.to_decimal(12)}\n")
        for t in self.violations_ctilde:
            v = c_tilde(t)
            out.write(f"violation_ctilde,{t},{v},{v.to_decimal(12)}\n")
        return out.getvalue()


class _ScanAcc:
    """Mergeable accumulator over odd column values with even-multiple accounting."""

    __slots__ = ("lo", "hi", "eps", "checked", "viol_c", "viol_t", "best_c", "best_t", "eps_counts")

    def __init__(self, lo: int, hi: int, eps: list[tuple[int, int]]):
        self.lo = lo
        self.hi = hi
        self.eps = eps
        self.checked = 0
        self.viol_c: list[int] = []
        self.viol_t: list[int] = []
        self.best_c: tuple[int, int, int] | None = None  # (num, scale, t)
        self.best_t: tuple[int, int, int] | None = None
        self.eps_counts = [0] * len(eps)

    def account_zero(self) -> None:
        # t = 0: c = 1, c~ = 0.
        self._update(0, 1, 0, 1, 0, 0, 0)

    def account(self, m: int, col: _Col) -> None:
        lo = self.lo
        hi = self.hi
        e = 0
        v = m
        while v < lo:
            v <<= 1
            e += 1
        if v >= hi:
            return
        mult = 1
        w = v << 1
        while w < hi:
            mult += 1
            w <<= 1
        cn, cs, tn, ts = _c_ct_ints(col)
        self._update(m, mult, v, cn, cs, tn, ts)

    def _update(self, m, mult, t_first, cn, cs, tn, ts):
        self.checked += mult
        one_c = 1 << cs
        if (cn << 1) <= one_c:
            self.viol_c.extend(t_first << i for i in range(mult))
        one_t = 1 << ts
        if (tn << 1) > one_t:
            self.viol_t.extend(t_first << i for i in range(mult))
        best = self.best_c
        if best is None or _dy_less(cn, cs, best[0], best[1]) or (
            not _dy_less(best[0], best[1], cn, cs) and t_first < best[2]
        ):
            self.best_c = (cn, cs, t_first)
        best = self.best_t
        if best is None or _dy_less(best[0], best[1], tn, ts) or (
            not _dy_less(tn, ts, best[0], best[1]) and t_first < best[2]
        ):
            self.best_t = (tn, ts, t_first)
        if self.eps:
            excess = (cn << 1) - one_c  # 2c - 1 at scale cs
            if excess > 0:
                for i, (en, es) in enumerate(self.eps):
                    # c - 1/2 < eps  <=>  excess / 2^(cs+1) < en / 2^es
                    if excess << es < en << (cs + 1):
                        self.eps_counts[i] += mult

    def merge_partial(self, part: dict) -> None:
        self.checked += part["checked"]
        self.viol_c.extend(part["viol_c"])
        self.viol_t.extend(part["viol_t"])
        for best in (part["best_c"],):
            if best is not None:
                self._merge_best_c(tuple(best))
        for best in (part["best_t"],):
            if best is not None:
                self._merge_best_t(tuple(best))
        for i, n in enumerate(part["eps_counts"]):
            self.eps_counts[i] += n

    def _merge_best_c(self, cand):
        best = self.best_c
        if best is None or _dy_less(cand[0], cand[1], best[0], best[1]) or (
            not _dy_less(best[0], best[1], cand[0], cand[1]) and cand[2] < best[2]
        ):
            self.best_c = cand

    def _merge_best_t(self, cand):
        best = self.best_t
        if best is None or _dy_less(best[0], best[1], cand[0], cand[1]) or (
            not _dy_less(cand[0], cand[1], best[0], best[1]) and cand[2] < best[2]
        ):
            self.best_t = cand

    def as_partial(self) -> dict:
        return {
            "checked": self.checked,
            "viol_c": self.viol_c,
            "viol_t": self.viol_t,
            "best_c": self.best_c,
            "best_t": self.best_t,
            "eps_counts": self.eps_counts,
        }

    def finalize(self, eps_dyadics: list[Dyadic]) -> ScanReport:
        assert self.best_c is not None and self.best_t is not None
        return ScanReport(
            t_lo=self.lo,
            t_hi=self.hi,
            checked=self.checked,
            violations_c=sorted(self.viol_c),
            violations_ctilde=sorted(self.viol_t),
            min_c=(self.best_c[2], Dyadic(self.best_c[0], self.best_c[1])),
            max_ctilde=(self.best_t[2], Dyadic(self.best_t[0], self.best_t[1])),
            epsilon_counts=dict(zip(eps_dyadics, self.eps_counts)),
        )


def _dy_less(an: int, as_: int, bn: int, bs: int) -> bool:
    d = as_ - bs
    if d >= 0:
        return an < bn << d
    return an << -d < bn


def _scan_subtree(u: int, a: _Col, b: _Col, hi: int, acc: _ScanAcc) -> None:
    stack = [(u, a, b)]
    pop = stack.pop
    push = stack.append
    account = acc.account
    while stack:
        u, a, b = pop()
        if u & 1:
            account(u, a)
        u2 = u << 1
        if u2 < hi:
            m = _mix(a, b)
            if u2 + 1 < hi:
                push((u2 + 1, m, b))
            push((u2, a, m))


def _scan_task(args) -> dict:
    u, a, b, lo, hi, eps = args
    acc = _ScanAcc(lo, hi, eps)
    _scan_subtree(u, a, b, hi, acc)
    return acc.as_partial()


def _top_region(depth: int, hi: int, acc: _ScanAcc | None):
    """DFS over prefixes below ``depth``; returns subtree roots at that depth."""
    roots = []
    top = 1 << depth
    stack = [(1, _COL1, _COL1)]
    while stack:
        u, a, b = stack.pop()
        if u >= top:
            roots.append((u, a, b))
            continue
        if u & 1 and acc is not None:
            acc.account(u, a)
        u2 = u << 1
        if u2 < hi:
            m = _mix(a, b)
            if u2 + 1 < hi:
                stack.append((u2 + 1, m, b))
            stack.append((u2, a, m))
    roots.sort(key=lambda r: r[0])
    return roots


def _read_checkpoint(path: str) -> int | None:
    if not path or not os.path.exists(path):
        return None
    with open(path, "r", encoding="ascii") as fh:
        line = fh.readline().strip()
    if not line.startswith("last_completed_prefix="):
        raise ValueError(f"malformed checkpoint file {path!r}")
    return int(line.split("=", 1)[1], 2)


def _write_checkpoint(path: str, prefix: int) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(f"last_completed_prefix={bin(prefix)[2:]}\n")
    os.replace(tmp, path)


_SPLIT_DEPTH = 6


def scan_range(
    t_lo: int,
    t_hi: int,
    epsilons: list[Dyadic] | tuple[Dyadic, ...] = (),
    workers: int = 1,
    checkpoint: str | None = None,
) -> ScanReport:
    """Verify c_t > 1/2 and c~_t <= 1/2 for every t in [t_lo, t_hi).

    Even t are reduced to their odd part (c_{2t} = c_t); each odd column is
    computed once and accounted with the multiplicity of its in-range
    multiples.  Violations are reported as exact witnesses.  The result is
    deterministic and independent of the worker count.

    With ``checkpoint``, completed odd-prefix subtrees are recorded in a plain
    text file; a resumed scan skips them, and its report covers only the
    remaining work.
    """
    if t_lo < 0 or t_lo >= t_hi:
        raise ValueError("need 0 <= t_lo < t_hi")
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    eps_dyadics = list(epsilons)
    eps_pairs = [(e.mantissa, e.scale) for e in eps_dyadics]
    for en, es in eps_pairs:
        if en < 0:
            raise ValueError("epsilons must be nonnegative")
    acc = _ScanAcc(t_lo, t_hi, eps_pairs)

    split = (workers > 1 or checkpoint is not None) and t_hi > (1 << (_SPLIT_DEPTH + 1))
    if not split:
        if t_lo == 0:
            acc.account_zero()
        _scan_subtree(1, _COL1, _COL1, t_hi, acc)
        if checkpoint is not None:
            _write_checkpoint(checkpoint, 1)
        return acc.finalize(eps_dyadics)

    resume = _read_checkpoint(checkpoint) if checkpoint else None
    if resume is None:
        if t_lo == 0:
            acc.account_zero()
        roots = _top_region(_SPLIT_DEPTH, t_hi, acc)
        if checkpoint:
            _write_checkpoint(checkpoint, 1)
    else:
        roots = [(u, a, b) for (u, a, b) in _top_region(_SPLIT_DEPTH, t_hi, None) if u > resume]

    tasks = [(u, a, b, t_lo, t_hi, eps_pairs) for (u, a, b) in roots]
    if workers == 1:
        for task in tasks:
            acc.merge_partial(_scan_task(task))
            if checkpoint:
                _write_checkpoint(checkpoint, task[0])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for task, part in zip(tasks, pool.map(_scan_task, tasks)):
                acc.merge_partial(part)
                if checkpoint:
                    _write_checkpoint(checkpoint, task[0])
    if acc.best_c is None:
        raise ValueError("resumed scan has no remaining work (checkpoint is complete)")
    return acc.finalize(eps_dyadics)


# ---------------------------------------------------------------------------
# dyadic-interval aggregation (moment support)
# ---------------------------------------------------------------------------


def _acc_add(an: int, as_: int, bn: int, bs: int) -> tuple[int, int]:
    if as_ >= bs:
        return an + (bn << (as_ - bs)), as_
    return (an << (bs - as_)) + bn, bs


def _interval_task(args) -> tuple[int, int, int, int, int, int, int, int]:
    u, a, b, lam = args
    return _sum_leaves(u, a, b, lam)


def _sum_leaves(u: int, a: _Col, b: _Col, lam: int) -> tuple[int, ...]:
    """Exact (sum c, sum c^2, sum c~, sum c~^2) over leaves below (u, pair)."""
    target = 1 << lam
    s1n, s1s = 0, 0
    s2n, s2s = 0, 0
    t1n, t1s = 0, 0
    t2n, t2s = 0, 0
    stack = [(u, a, b)]
    while stack:
        u, a, b = stack.pop()
        if u >= target:
            cn, cs, tn, ts = _c_ct_ints(a)
            s1n, s1s = _acc_add(s1n, s1s, cn, cs)
            s2n, s2s = _acc_add(s2n, s2s, cn * cn, cs + cs)
            t1n, t1s = _acc_add(t1n, t1s, tn, ts)
            t2n, t2s = _acc_add(t2n, t2s, tn * tn, ts + ts)
            continue
        m = _mix(a, b)
        stack.append(((u << 1) + 1, m, b))
        stack.append((u << 1, a, m))
    return (s1n, s1s, s2n, s2s, t1n, t1s, t2n, t2s)


def interval_sums(lam: int, workers: int = 1, max_cost: int | None = None):
    """Exact sums of c_t, c_t^2, c~_t, c~_t^2 over t in [2^lam, 2^(lam+1)).

    Returns four Dyadic values.  Deterministic and independent of the worker
    count (the merge is exact integer addition).
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("interval_sums", 1 << lam, 1 << 22, max_cost)
    if workers <= 1 or lam <= _SPLIT_DEPTH + 1:
        parts = [_sum_leaves(1, _COL1, _COL1, lam)]
    else:
        roots = _top_region(_SPLIT_DEPTH, 1 << (lam + 1), None)
        tasks = [(u, a, b, lam) for (u, a, b) in roots if u < (1 << (lam + 1))]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_interval_task, tasks))
    sums = [(0, 0), (0, 0), (0, 0), (0, 0)]
    for part in parts:
        for i in range(4):
            sums[i] = _acc_add(sums[i][0], sums[i][1], part[2 * i], part[2 * i + 1])
    return tuple(Dyadic(n, s) for n, s in sums)


def iter_interval_values(lam: int, max_cost: int | None = None):
    """Yield (t, c_t, c~_t) as exact Dyadic values for t in [2^lam, 2^(lam+1))."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    require_cost("iter_interval_values", 1 << lam, 1 << 22, max_cost)
    target = 1 << lam
    stack = [(1, _COL1, _COL1)]
    while stack:
        u, a, b = stack.pop()
        if u >= target:
            cn, cs, tn, ts = _c_ct_ints(a)
            yield u, Dyadic(cn, cs), Dyadic(tn, ts)
            continue
        m = _mix(a, b)
        stack.append(((u << 1) + 1, m, b))
        stack.append((u << 1, a, m))
