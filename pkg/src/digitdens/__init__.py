"""Exact asymptotic densities of binary sum-of-digits differences.

For t >= 0 and the binary digit-sum s, the package computes the densities
delta(k, t) of {n : s(n+t) - s(n) = k}, the cumulative densities c_t and
c~_t, their moments over dyadic intervals, the associated generating
functions and diagonal asymptotics, and verifies the inequalities
c~_t <= 1/2 < c_t over large ranges of t -- all in exact arithmetic.
"""

from .numeric import Dyadic, Rational, binomial_exact
from .digits import (
    BitWord,
    block_count,
    nu2,
    nu2_binomial,
    nu2_pochhammer,
    reverse_binary,
    sum_of_digits,
)
from .density import (
    DeltaColumn,
    PhiColumn,
    ScanReport,
    brute_force_density,
    c,
    c_tilde,
    delta,
    delta_column,
    delta_from_phi,
    p,
    phi_column,
    phi_reduction_check,
    scan_range,
)
from .guards import CostGuardError

__version__ = "0.1.0"

__all__ = [
    "Dyadic",
    "Rational",
    "binomial_exact",
    "BitWord",
    "sum_of_digits",
    "nu2",
    "nu2_pochhammer",
    "nu2_binomial",
    "reverse_binary",
    "block_count",
    "DeltaColumn",
    "PhiColumn",
    "ScanReport",
    "delta",
    "delta_column",
    "delta_from_phi",
    "c",
    "c_tilde",
    "phi_column",
    "p",
    "phi_reduction_check",
    "brute_force_density",
    "scan_range",
    "CostGuardError",
    "__version__",
]
