"""Exact truncated power series and the package's generating functions.

The trivariate rational function A(x, y, z) encodes the products
delta(lam+1-k, t) delta(lam+1-l, t) summed over dyadic intervals; its
quotient F = A/((1-y)(1-z)) has diagonal coefficients that give the second
moments of c_t.  The bivariate function for the special sequence
t_j = (4^j - 1)/3 has main diagonal H(z) = sum c_{t_j} z^j, which is algebraic;
its minimal polynomial and closed square-root form are verified here
coefficient by coefficient.

Expansion works over exact rationals.  Internally, a rational function with
integer polynomial numerator and denominator is expanded through the scaled
linear recurrence S'[idx] = N[idx] d0^w - sum_d D[d] d0^(w(d)-1) S'[idx-d]
(w = total degree, d0 = constant denominator term), which stays in integer
arithmetic throughout; coefficients are reduced to Fractions at the end.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from io import StringIO

from .density import _c_ct_ints, _mix, _Col
from .guards import require_cost
from .numeric import Dyadic

__all__ = [
    "TruncSeries",
    "RationalFunctionSpec",
    "expand",
    "trivariate_A",
    "trivariate_F",
    "bivariate_A",
    "bivariate_A_tilde",
    "diagonal_F",
    "implicit_root_series",
    "log_root_series",
    "special_sequence_columns",
    "H_series",
    "minimal_polynomial_residual",
    "closed_form_H_check",
]


# ---------------------------------------------------------------------------
# dense truncated series
# ---------------------------------------------------------------------------


class TruncSeries:
    """Dense truncated power series in 1-3 variables over exact rationals.

    Coefficient access outside the stated bounds raises IndexError; truncated
    coefficients are unknown, not zero.
    """

    __slots__ = ("bounds", "_coeffs")

    def __init__(self, bounds: tuple[int, ...], coeffs: list[Fraction]):
        if not 1 <= len(bounds) <= 3:
            raise ValueError("1 to 3 variables supported")
        size = 1
        for b in bounds:
            if b < 0:
                raise ValueError("degree bounds must be nonnegative")
            size *= b + 1
        if len(coeffs) != size:
            raise ValueError("coefficient array does not match bounds")
        self.bounds = tuple(bounds)
        self._coeffs = coeffs

    @property
    def nvars(self) -> int:
        return len(self.bounds)

    def _flat(self, idx: tuple[int, ...]) -> int:
        if len(idx) != len(self.bounds):
            raise IndexError(f"expected {len(self.bounds)} indices, got {len(idx)}")
        flat = 0
        for i, b in zip(idx, self.bounds):
            if not 0 <= i <= b:
                raise IndexError(f"index {idx} outside bounds {self.bounds}")
            flat = flat * (b + 1) + i
        return flat

    def __getitem__(self, idx) -> Fraction:
        if isinstance(idx, int):
            idx = (idx,)
        return self._coeffs[self._flat(tuple(idx))]

    def items(self):
        ranges = [range(b + 1) for b in self.bounds]
        for pos, idx in enumerate(itertools.product(*ranges)):
            yield idx, self._coeffs[pos]

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.bounds == other.bounds and self._coeffs == other._coeffs

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._coeffs)

    def to_csv(self, decimals: int = 12) -> str:
        out = StringIO()
        out.write(",".join(f"e{i}" for i in range(self.nvars)) + ",value,decimal\n")
        for idx, v in self.items():
            dec = f"{float(v):.{decimals}g}"
            out.write(",".join(str(i) for i in idx) + f",{v},{dec}\n")
        return out.getvalue()


# ---------------------------------------------------------------------------
# polynomial dictionaries (exponent tuple -> coefficient)
# ---------------------------------------------------------------------------


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _pneg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}


@dataclass(frozen=True)
class RationalFunctionSpec:
    """numerator / denominator as exponent-dict polynomials; the denominator
    must be a unit at the origin so the quotient expands as a power series."""

    numerator: dict
    denominator: dict

    def __post_init__(self):
        keys = list(self.numerator) + list(self.denominator)
        if not keys:
            raise ValueError("empty rational function")
        nv = len(keys[0])
        if any(len(k) != nv for k in keys):
            raise ValueError("inconsistent number of variables")
        if not self.denominator.get((0,) * nv):
            raise ValueError("denominator must have a nonzero constant term")

    @property
    def nvars(self) -> int:
        return len(next(iter(self.denominator)))


def _cleared(spec: RationalFunctionSpec) -> tuple[dict, dict, int]:
    """Numerator and denominator with integer coefficients, plus d0."""
    lcm = 1
    for v in itertools.chain(spec.numerator.values(), spec.denominator.values()):
        d = v.denominator if isinstance(v, Fraction) else 1
        lcm = lcm * d // math.gcd(lcm, d)
    num = {k: int(v * lcm) for k, v in spec.numerator.items()}
    den = {k: int(v * lcm) for k, v in spec.denominator.items()}
    return num, den, den[(0,) * spec.nvars]


def expand(spec: RationalFunctionSpec, bounds: tuple[int, ...]) -> TruncSeries:
    """Exact coefficients of the quotient up to the given per-variable degrees."""
    if len(bounds) != spec.nvars:
        raise ValueError("bounds must match the number of variables")
    num, den, d0 = _cleared(spec)
    wmax = sum(bounds)
    powers = [1] * (wmax + 2)
    for i in range(1, wmax + 2):
        powers[i] = powers[i - 1] * d0
    origin = (0,) * spec.nvars
    terms = [
        (k, coef * powers[sum(k) - 1])
        for k, coef in den.items()
        if k != origin and all(ki <= bi for ki, bi in zip(k, bounds))
    ]
    dims = [b + 1 for b in bounds]
    coeffs: dict[tuple[int, ...], int] = {}
    for idx in itertools.product(*(range(d) for d in dims)):
        w = sum(idx)
        acc = num.get(idx, 0) * powers[w]
        for k, cmul in terms:
            nb = tuple(i - d for i, d in zip(idx, k))
            if min(nb) >= 0:
                acc -= cmul * coeffs[nb]
        coeffs[idx] = acc
    flat = [
        Fraction(coeffs[idx], powers[sum(idx) + 1])
        for idx in itertools.product(*(range(d) for d in dims))
    ]
    return TruncSeries(tuple(bounds), flat)


# ---------------------------------------------------------------------------
# the trivariate generating function and its diagonal
# ---------------------------------------------------------------------------

# building blocks in (x, y, z); all integer coefficients
_P = {(0, 0, 0): 1, (1, 0, 1): -2, (1, 1, 2): -2}  # 1 - 2xz(1+yz)
_Q = {(0, 0, 0): 1, (1, 1, 0): -2, (1, 2, 1): -2}  # 1 - 2xy(1+yz)
_PQ = _pmul(_P, _Q)
_ONE_MINUS_XW2 = {(0, 0, 0): 1, (1, 0, 0): -1, (1, 1, 1): -2, (1, 2, 2): -1}
_XYZ = {(1, 1, 1): 1}
_DEN_CORE = _padd(_pmul(_PQ, _ONE_MINUS_XW2), _pneg(_pmul(_XYZ, _padd(_P, _Q))))
_NUM_CORE = _padd(_PQ, _padd(_pmul({(1, 0, 2): 1}, _Q), _pmul({(1, 2, 0): 1}, _P)))
_TWO_MINUS_Y = {(0, 0, 0): 2, (0, 1, 0): -1}
_TWO_MINUS_Z = {(0, 0, 0): 2, (0, 0, 1): -1}
_A_DEN = _pmul(_DEN_CORE, _pmul(_TWO_MINUS_Y, _TWO_MINUS_Z))
_F_DEN = _pmul(_A_DEN, _pmul({(0, 0, 0): 1, (0, 1, 0): -1}, {(0, 0, 0): 1, (0, 0, 1): -1}))

assert _DEN_CORE[(0, 0, 0)] == 1
assert _A_DEN[(0, 0, 0)] == 4


def trivariate_A() -> RationalFunctionSpec:
    """The cross-correlation generating function with all fractions cleared."""
    return RationalFunctionSpec(dict(_NUM_CORE), dict(_A_DEN))


def trivariate_F() -> RationalFunctionSpec:
    """A(x, y, z) / ((1-y)(1-z)), the second-moment kernel."""
    return RationalFunctionSpec(dict(_NUM_CORE), dict(_F_DEN))


def _f_cube(n: int) -> list:
    """Integer cube holding F to bounds (n, n+1, n+1).

    cube[i][j][k] equals F[i][j][k] * 2^(j+k+2).  The core quotient by the
    unit-constant denominator is integral; the four outer factors are applied
    as single axis passes (divide by 2-y and 2-z, then cumulative sums for
    1/(1-y) and 1/(1-z)), each exact in scaled integers.
    """
    bx, by, bz = n, n + 1, n + 1
    dterms = [(k, c) for k, c in _DEN_CORE.items() if k != (0, 0, 0)]
    cube = [[[0] * (bz + 1) for _ in range(by + 1)] for _ in range(bx + 1)]
    for i in range(bx + 1):
        plane = cube[i]
        for j in range(by + 1):
            row = plane[j]
            for k in range(bz + 1):
                acc = _NUM_CORE.get((i, j, k), 0)
                for (di, dj, dk), c in dterms:
                    if di <= i and dj <= j and dk <= k:
                        acc -= c * cube[i - di][j - dj][k - dk]
                row[k] = acc
    pow2 = [1 << m for m in range(by + 2)]
    for i in range(bx + 1):
        plane = cube[i]
        # divide by (2 - y): u[j] = core[j]*2^j + u[j-1]
        for k in range(bz + 1):
            prev = 0
            for j in range(by + 1):
                prev = plane[j][k] * pow2[j] + prev
                plane[j][k] = prev
        # divide by (2 - z): same along z
        for j in range(by + 1):
            row = plane[j]
            prev = 0
            for k in range(bz + 1):
                prev = row[k] * pow2[k] + prev
                row[k] = prev
        # multiply by 1/(1 - y): G[j] = 2 G[j-1] + u[j]
        for k in range(bz + 1):
            prev = 0
            for j in range(by + 1):
                prev = (prev << 1) + plane[j][k]
                plane[j][k] = prev
        # multiply by 1/(1 - z)
        for j in range(by + 1):
            row = plane[j]
            prev = 0
            for k in range(bz + 1):
                prev = (prev << 1) + row[k]
                row[k] = prev
    return cube


_F_DIAG_CACHE: dict = {"bound": -1, "diag0": [], "diag1": []}


def _f_diagonals(n: int) -> tuple[list[Fraction], list[Fraction]]:
    if n > _F_DIAG_CACHE["bound"]:
        cube = _f_cube(n)
        diag0 = [Fraction(cube[m][m][m], 1 << (2 * m + 2)) for m in range(n + 1)]
        diag1 = [
            Fraction(cube[m][m + 1][m + 1], 1 << (2 * m + 4)) for m in range(n + 1)
        ]
        _F_DIAG_CACHE.update(bound=n, diag0=diag0, diag1=diag1)
    return _F_DIAG_CACHE["diag0"], _F_DIAG_CACHE["diag1"]


def diagonal_F(n: int, offset: int = 1, max_cost: int | None = None) -> Fraction:
    """[x^n y^(n+offset) z^(n+offset)] of F, offset in {0, 1}.

    Dense-cube memory grows like n^3; guarded at n <= 60.
    """
    if offset not in (0, 1):
        raise ValueError("offset must be 0 or 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_cost("diagonal_F", n, 60, max_cost)
    diag0, diag1 = _f_diagonals(n)
    return (diag1 if offset else diag0)[n]


# ---------------------------------------------------------------------------
# implicit root of the denominator near (1/8, 1, 1)
# ---------------------------------------------------------------------------


def _shifted_x_slices(poly: dict, dmax: int) -> list[dict]:
    """Substitute y = 1+u, z = 1+v; return bivariate dicts per x-degree."""
    from math import comb

    xmax = max(k[0] for k in poly)
    slices: list[dict] = [dict() for _ in range(xmax + 1)]
    for (i, j, k), coef in poly.items():
        target = slices[i]
        for a in range(min(j, dmax) + 1):
            ca = comb(j, a)
            for b in range(min(k, dmax) + 1):
                key = (a, b)
                s = target.get(key, 0) + coef * ca * comb(k, b)
                if s:
                    target[key] = s
                elif key in target:
                    del target[key]
    return slices


def _b2mul(f: dict, g: dict, dtot: int) -> dict:
    out: dict = {}
    for (a1, b1), v1 in f.items():
        for (a2, b2), v2 in g.items():
            if a1 + a2 + b1 + b2 > dtot:
                continue
            key = (a1 + a2, b1 + b2)
            s = out.get(key, 0) + v1 * v2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def _b2add(f: dict, g: dict) -> dict:
    out = dict(f)
    for k, v in g.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _b2trunc(f: dict, dtot: int) -> dict:
    return {k: v for k, v in f.items() if k[0] + k[1] <= dtot}


def _b2inv(f: dict, dtot: int) -> dict:
    c0 = f.get((0, 0))
    if not c0:
        raise ValueError("series is not invertible")
    inv0 = Fraction(1, 1) / c0
    out = {(0, 0): inv0}
    for total in range(1, dtot + 1):
        for a in range(total + 1):
            key = (a, total - a)
            acc = Fraction(0)
            for (da, db), v in f.items():
                if (da or db) and da <= a and db <= key[1]:
                    prev = out.get((a - da, key[1] - db))
                    if prev is not None:
                        acc += v * prev
            if acc:
                out[key] = -inv0 * acc
    return out


def _b2eval_poly(slices: list[dict], f: dict, dtot: int) -> dict:
    result: dict = {}
    for coefs in reversed(slices):
        result = _b2add(_b2mul(result, f, dtot), _b2trunc(coefs, dtot))
    return result


def implicit_root_series(max_degree: int = 4, max_cost: int | None = None) -> TruncSeries:
    """Taylor coefficients in (y-1, z-1) of the root x = f(y, z) of the
    trivariate denominator with f(1, 1) = 1/8, by Newton iteration.

    Each Newton step doubles the count of correct total-degree terms; the
    final residual is checked to vanish identically (a nonzero residual would
    indicate a transcription error in the denominator).
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    require_cost("implicit_root_series", max_degree, 6, max_cost)
    dtot = 2 * max_degree
    slices = _shifted_x_slices(_DEN_CORE, dtot)
    dslices = [
        {k: i * c for k, c in sl.items()} for i, sl in enumerate(slices) if i >= 1
    ]
    f = {(0, 0): Fraction(1, 8)}
    prec = 0
    while prec < dtot:
        prec = min(2 * prec + 1, dtot)
        h = _b2eval_poly(slices, f, prec)
        hx = _b2eval_poly(dslices, f, prec)
        f = _b2add(f, {k: -v for k, v in _b2mul(h, _b2inv(hx, prec), prec).items()})
        f = _b2trunc(f, dtot)
    residual = _b2eval_poly(slices, f, dtot)
    if residual:
        raise ArithmeticError("Newton iteration failed to annihilate the denominator")
    flat = [
        f.get((a, b), Fraction(0))
        for a in range(max_degree + 1)
        for b in range(max_degree + 1)
    ]
    return TruncSeries((max_degree, max_degree), flat)


def log_root_series(max_degree: int = 4, max_cost: int | None = None) -> TruncSeries:
    """Series of log(8 f(y, z)) in (y-1, z-1).

    The constant term of log f itself is -log 8, which is irrational; the
    returned series carries every other coefficient (constant term 0).
    """
    root = implicit_root_series(max_degree, max_cost=max_cost)
    dtot = 2 * max_degree
    w = {}
    for (a, b), v in root.items():
        v8 = 8 * v
        if (a, b) == (0, 0):
            v8 -= 1
        if v8:
            w[(a, b)] = v8
    assert w.get((0, 0), 0) == 0
    result: dict = {}
    power = {(0, 0): Fraction(1)}
    for m in range(1, dtot + 1):
        power = _b2mul(power, w, dtot)
        if not power:
            break
        sign = Fraction((-1) ** (m + 1), m)
        result = _b2add(result, {k: sign * v for k, v in power.items()})
    flat = [
        result.get((a, b), Fraction(0))
        for a in range(max_degree + 1)
        for b in range(max_degree + 1)
    ]
    return TruncSeries((max_degree, max_degree), flat)


# ---------------------------------------------------------------------------
# the special sequence t_j = (4^j - 1)/3 and its diagonal series H(z)
# ---------------------------------------------------------------------------

#: point-mass column for t = 0 (zero tail head below the window)
_COL_T0 = _Col(0, -1, 0, [0, 1])

try:  # exact big-integer mantissas; pure-Python ints are the fallback
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int


def _strip_common_power(col: _Col) -> _Col:
    """Divide out a power of two shared by every window entry (value-preserving)."""
    shift = None
    for v in col.vals:
        if v:
            tz = (v & -v).bit_length() - 1
            if shift is None or tz < shift:
                shift = tz
                if shift == 0:
                    return col
    if not shift:
        return col
    return _Col(col.khi, col.klo, col.scale - shift, [v >> shift for v in col.vals])


def special_sequence_columns(j_max: int, max_cost: int | None = None) -> list[tuple[int, Dyadic]]:
    """Exact values (t_j, c_{t_j}) for j = 0..j_max.

    The columns of t_j = (10...01)_2 and the auxiliary u_j = 2 t_j + 1 close
    under the two-column recurrence, so step j costs one pair of column mixes
    on windows of width O(j); total cost O(j_max^2) dyadic operations, guarded
    at j_max <= 10^5.

    Only the sums over k >= 0 are reported, so entries that can no longer
    influence any remaining step are cut off.  Tracing the two mixes of one
    step, an entry of the t-column can climb at most one index per step (the
    pure t-chain; the one-off +2 hop into the u-column never climbs again),
    so entries below -(remaining steps)minus a safety margin are dead weight.
    The cutoff also caps the shared-scale growth, since the deepest kept
    entry dictates the scale.
    """
    if j_max < 0:
        raise ValueError("j_max must be nonnegative")
    require_cost("special_sequence_columns", j_max, 10**5, max_cost)
    out = [(0, Dyadic(1))]
    col_t = _Col(0, -1, 0, [_mpz(0), _mpz(1)])
    col_u = _Col(1, 1, 1, [_mpz(1)])
    tj = 0
    for j in range(1, j_max + 1):
        # staggered floors keep the intra-step read (u-mix reads t at k-1)
        # inside the t-column's kept window
        floor_t = -(j_max - j) - 5
        col_t = _mix(col_t, col_u, floor_t)
        col_u = _mix(col_t, col_u, floor_t + 1)
        tj = 4 * tj + 1
        cn, cs, _, _ = _c_ct_ints(col_t)
        out.append((tj, Dyadic(int(cn), cs)))
        if j % 64 == 0:
            col_t = _strip_common_power(col_t)
            col_u = _strip_common_power(col_u)
    return out


# bivariate rational functions of the special sequence, in (x, y).
# The denominator is x^2 y^2 - 2x y^2 - xy - 2x + 4 (the -xy term is forced by
# re-deriving the linear system from the recurrence; expanding without it does
# not reproduce the column values).
_D2 = {(2, 2): 1, (1, 2): -2, (1, 1): -1, (1, 0): -2, (0, 0): 4}
_NUM2 = {(0, 0): 8, (0, 1): -4, (1, 2): -3, (1, 3): 2}


def bivariate_A() -> RationalFunctionSpec:
    """Generating function with [x^j y^k] = delta(j-k, t_j)."""
    return RationalFunctionSpec(dict(_NUM2), _pmul(_D2, {(0, 0): 2, (0, 1): -1}))


def bivariate_A_tilde() -> RationalFunctionSpec:
    """Partial-sum kernel whose main diagonal is H(z) = sum c_{t_j} z^j."""
    return RationalFunctionSpec(dict(_NUM2), _pmul(_D2, {(0, 0): 2, (0, 1): -3, (0, 2): 1}))


def _h_diagonal(n_max: int) -> list[Fraction]:
    """Main diagonal of the partial-sum kernel by rolling-row expansion."""
    num, den, d0 = _cleared(bivariate_A_tilde())
    powers = [1]
    for _ in range(2 * n_max + 2):
        powers.append(powers[-1] * d0)
    terms = [((di, dj), c * powers[di + dj - 1]) for (di, dj), c in den.items() if (di, dj) != (0, 0)]
    num_by_idx = num
    rows: list[list[int]] = []
    diag: list[Fraction] = []
    for i in range(n_max + 1):
        row = [0] * (n_max + 1)
        for j in range(n_max + 1):
            acc = num_by_idx.get((i, j), 0) * powers[i + j]
            for (di, dj), cmul in terms:
                if di <= i and dj <= j:
                    acc -= cmul * (row[j - dj] if di == 0 else rows[i - di][j - dj])
            row[j] = acc
        rows.append(row)
        if len(rows) > 3:
            rows[i - 3] = []  # release memory; x-degree of the denominator is 2
        diag.append(Fraction(row[i], powers[2 * i + 1]))
    return diag


def H_series(n_max: int, method: str = "recurrence", max_cost: int | None = None) -> TruncSeries:
    """Coefficients c_{t_0}, ..., c_{t_n} of H(z), by either pipeline.

    ``recurrence`` iterates the exact column pair; ``diagonal`` expands the
    bivariate rational function and reads the main diagonal.  Both agree.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if method == "recurrence":
        require_cost("H_series", n_max, 10**5, max_cost)
        coeffs = [v.as_fraction() for _, v in special_sequence_columns(n_max, max_cost=max_cost)]
    elif method == "diagonal":
        require_cost("H_series(diagonal)", n_max, 500, max_cost)
        coeffs = _h_diagonal(n_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return TruncSeries((n_max,), coeffs)


# ---------------------------------------------------------------------------
# univariate series helpers (Fraction lists, index = degree)
# ---------------------------------------------------------------------------


def _umul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a):
        if i > n or not ai:
            continue
        for j, bj in enumerate(b):
            if i + j > n:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _uinv(a: list[Fraction], n: int) -> list[Fraction]:
    """1/a modulo z^(n+1) by Newton doubling."""
    if not a or a[0] == 0:
        raise ValueError("series is not invertible")
    r = [Fraction(1, 1) / a[0]]
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        ar = _umul(a[:prec], r, prec - 1)
        corr = [Fraction(2) - ar[0]] + [-x for x in ar[1:]]
        r = _umul(r, corr, prec - 1)
    return r


def _usqrt(a: list[Fraction], n: int, root0: Fraction) -> list[Fraction]:
    """Square root of a modulo z^(n+1) with chosen branch g(0) = root0.

    Newton iteration g <- (g + a/g)/2 doubles the correct-degree count per
    step; the result is verified by squaring.
    """
    if root0 * root0 != a[0]:
        raise ValueError("root0 must square to the constant term")
    g = [Fraction(root0)]
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        ag = _umul(a[:prec], _uinv(g, prec - 1), prec - 1)
        g = g + [Fraction(0)] * (prec - len(g))
        g = [(x + y) / 2 for x, y in zip(g, ag)]
    check = _umul(g, g, n)
    expect = (a + [Fraction(0)] * (n + 1))[: n + 1]
    if check != expect:
        raise ArithmeticError("square-root iteration failed verification")
    return g


# minimal polynomial p0(z) + p1(z) Z + p2(z) Z^2 annihilating H
_MINPOLY_P0 = [0, 0, 0, -2]
_MINPOLY_P1 = [-16, 32, -7, -8, -3, 2]
_MINPOLY_P2 = [16, -44, 30, 5, -3, -5, 1]


def _minpoly_residual_of(h: list[Fraction], n_max: int) -> list[Fraction]:
    p0 = [Fraction(v) for v in _MINPOLY_P0]
    p1 = [Fraction(v) for v in _MINPOLY_P1]
    p2 = [Fraction(v) for v in _MINPOLY_P2]
    h2 = _umul(h, h, n_max)
    res = _umul(p1, h, n_max)
    for i, v in enumerate(_umul(p2, h2, n_max)):
        res[i] += v
    for i, v in enumerate(p0[: n_max + 1]):
        res[i] += v
    return res


def minimal_polynomial_residual(n_max: int = 100, max_cost: int | None = None) -> TruncSeries:
    """p0 + p1 H + p2 H^2 truncated at n_max; identically zero by contract."""
    require_cost("minimal_polynomial_residual", n_max, 500, max_cost)
    h = [v.as_fraction() for _, v in special_sequence_columns(n_max, max_cost=max_cost)]
    return TruncSeries((n_max,), _minpoly_residual_of(h, n_max))


# closed form: H = -1/(2(z-1)) - z/(2(z^2-6z+4)) + sqrt(R) * bracket with
# R = (z-1)(z-4)(z^2+3z+4) = z^4 - 2z^3 - 7z^2 - 8z + 16.
_R_POLY = [16, -8, -7, -2, 1]
_Q1 = [4, 3, 1]  # z^2 + 3z + 4
_Q2 = [4, -6, 1]  # z^2 - 6z + 4


def closed_form_H_check(n_max: int = 100, max_cost: int | None = None) -> bool:
    """Expand the explicit square-root closed form of H and compare it with
    the recurrence coefficients, term by term up to n_max."""
    require_cost("closed_form_H_check", n_max, 200, max_cost)
    n = n_max
    h = [v.as_fraction() for _, v in special_sequence_columns(n, max_cost=max_cost)]
    r = [Fraction(v) for v in _R_POLY]
    inv_q1 = _uinv([Fraction(v) for v in _Q1], n)
    inv_q2 = _uinv([Fraction(v) for v in _Q2], n)
    geom = [Fraction(1)] * (n + 1)  # 1/(1-z)
    bracket = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        if i >= 1:
            bracket[i] += inv_q1[i - 1] / 16  # z/(16(z^2+3z+4))
        bracket[i] += inv_q1[i] / 12
        bracket[i] += inv_q2[i] / 6
        bracket[i] += geom[i] / 16  # -1/(16(z-1))
    base = [g / 2 for g in geom]  # -1/(2(z-1))
    for i in range(1, n + 1):
        base[i] -= inv_q2[i - 1] / 2  # -z/(2(z^2-6z+4))
    for root0 in (Fraction(4), Fraction(-4)):
        g = _usqrt(r, n, root0)
        closed = [b + s for b, s in zip(base, _umul(g, bracket, n))]
        if closed[0] == h[0]:
            return closed == h
    raise ArithmeticError("neither square-root branch matches the constant term")
