import random
from fractions import Fraction

import pytest

from digitdens.acceptance import C_PREFIX, REFERENCE_DELTA, REFERENCE_PHI
from digitdens.density import (
    ScanReport,
    brute_force_density,
    brute_force_histogram,
    c,
    c_tilde,
    delta,
    delta_column,
    delta_from_phi,
    interval_sums,
    p,
    p_scan,
    phi_column,
    phi_reduction_check,
    scan_range,
)
from digitdens.digits import reverse_binary, sum_of_digits
from digitdens.guards import CostGuardError
from digitdens.numeric import DYADIC_HALF, DYADIC_ONE, Dyadic

rng = random.Random(1091)

EXTREMAL_T = int("111101111011110111101111011111", 2)


def test_printed_density_table():
    for t, column in REFERENCE_DELTA.items():
        col = delta_column(t)
        assert col.k_hi == sum_of_digits(t)
        for k in range(-3, 5):
            assert col.delta(k).as_fraction() == Fraction(column.get(k, "0")), (k, t)


def test_delta_lookups():
    assert delta(1, 1) == Dyadic(1, 1)
    assert delta(2, 1) == Dyadic(0)
    assert delta(-3, 9).as_fraction() == Fraction(7, 128)
    assert delta(0, 0) == DYADIC_ONE
    assert delta(3, 0) == Dyadic(0)
    with pytest.raises(ValueError):
        delta(0, -1)
    with pytest.raises(ValueError):
        delta_column(0)


def test_c_prefix_and_examples():
    assert [c(t).as_fraction() for t in range(14)] == [Fraction(x) for x in C_PREFIX]
    assert c(0) == DYADIC_ONE
    assert c_tilde(0) == Dyadic(0)
    assert c_tilde(3).as_fraction() == Fraction(3, 8)


def test_extremal_point():
    expect = Fraction(18169025645289, 1 << 45)
    assert c(EXTREMAL_T).as_fraction() == expect
    assert c(reverse_binary(EXTREMAL_T)).as_fraction() == expect


def test_brute_force_oracle():
    for t in range(1, 11):
        hist = brute_force_histogram(t)
        for k in range(-t - 2, t + 3):
            assert hist.get(k, Dyadic(0)) == delta(k, t), (k, t)
    assert brute_force_density(0, 1) == Dyadic(1, 2)
    assert brute_force_density(1, 2) == Dyadic(1, 1)
    assert brute_force_density(-3, 1) == delta(-3, 1)
    with pytest.raises(CostGuardError):
        brute_force_density(-30, 20)
    with pytest.raises(CostGuardError):
        brute_force_histogram(1 << 21)


def test_normalization_and_support():
    ts = list(range(1, 260)) + [rng.randrange(1, 1 << 16) for _ in range(60)]
    for t in ts:
        col = delta_column(t)
        assert col.total() == DYADIC_ONE, t
        assert col.delta(sum_of_digits(t) + 1) == Dyadic(0)
        assert phi_column(t).phi(sum_of_digits(t)) == Dyadic(0)
        assert phi_column(t).total() == DYADIC_ONE, t


def test_geometric_tail_against_brute_force():
    for t in range(1, 9):
        col = delta_column(t)
        for i in range(1, 4):
            assert col.delta(col.k_lo - i) == brute_force_density(col.k_lo - i, t), (t, i)


def test_reversal_symmetry():
    for t in range(1, 1 << 14, 2):
        assert delta_column(t).values_equal(delta_column(reverse_binary(t))), t


def test_parity_stability():
    # c(2t) = c(t) and c~(2t) = c~(t) exactly
    for t in range(1, 1 << 16, 997):
        assert c(2 * t) == c(t)
        assert c_tilde(2 * t) == c_tilde(t)
    for t in range(1, 1 << 10):
        assert c(2 * t) == c(t)


def test_phi_table_and_p():
    for t, column in REFERENCE_PHI.items():
        col = phi_column(t)
        for k in range(-3, 4):
            assert col.phi(k).as_fraction() == Fraction(column.get(k, "0")), (k, t)
    assert p(1) == DYADIC_ONE
    assert p(3) == DYADIC_HALF
    assert phi_column(5).phi(-2) == Dyadic(1, 2)


def test_phi_symmetry():
    # phi(k, t) = phi(-k, t') with t' = 3*2^lam - t for 2^lam <= t < 2^(lam+1)
    for t in range(1, 1 << 12):
        lam = t.bit_length() - 1
        tp = 3 * (1 << lam) - t
        col = phi_column(t)
        colp = phi_column(tp)
        keys = set(col.support) | {-k for k in colp.support}
        for k in keys:
            assert col.phi(k) == colp.phi(-k), (t, k)


def test_delta_from_phi():
    for t in [1, 5, (1 << 10) + 1] + [rng.randrange(1, 1 << 14) for _ in range(40)]:
        assert delta_from_phi(t).values_equal(delta_column(t)), t
    assert delta_from_phi(5).delta(0).as_fraction() == Fraction(1, 8)


def test_phi_reduction():
    assert phi_reduction_check(1, 0)
    assert phi_reduction_check(1, 1)
    assert phi_reduction_check(3, 2)
    # the printed variant with one extra doubling also holds
    assert delta(2, 3) == phi_column(49).phi(2)
    for t in range(1, 200):
        for k in range(0, sum_of_digits(t) + 2):
            assert phi_reduction_check(t, k), (t, k)


def test_p_scan():
    viols, (tmin, pmin) = p_scan(1 << 12)
    assert viols == []
    assert pmin == DYADIC_HALF and tmin == 3


def test_scan_reports():
    r = scan_range(1, 16)
    assert r.min_c == (11, Dyadic(19, 5))
    assert r.max_ctilde == (1, DYADIC_HALF)
    assert r.checked == 15 and r.ok
    r = scan_range(1, 2)
    assert r.min_c == (1, Dyadic(3, 2))
    r = scan_range(0, 4)
    assert r.checked == 4
    assert r.min_c == (3, Dyadic(11, 4))
    assert r.max_ctilde == (1, DYADIC_HALF)
    with pytest.raises(ValueError):
        scan_range(5, 5)


def test_scan_epsilon_counts_against_direct():
    eps = [Dyadic(1, 3), Dyadic(1, 1), Dyadic(0)]
    r = scan_range(1, 256, epsilons=eps)
    for e in eps:
        direct = sum(
            1 for t in range(1, 256) if DYADIC_HALF < c(t) < DYADIC_HALF + e
        )
        assert r.epsilon_counts[e] == direct, str(e)


def test_scan_matches_direct_extrema():
    lo, hi = 37, 613
    r = scan_range(lo, hi)
    values = [(c(t), t) for t in range(lo, hi)]
    vmin = min(values)
    assert r.min_c == (vmin[1], vmin[0])
    tvals = [(c_tilde(t), -t) for t in range(lo, hi)]
    vmax = max(tvals)
    assert r.max_ctilde == (-vmax[1], vmax[0])


def test_desk_scale_scan():
    r = scan_range(1, 1 << 14)
    assert r.ok and r.checked == (1 << 14) - 1


def test_scan_worker_determinism():
    eps = [Dyadic(1, 2)]
    a = scan_range(1, 1 << 12, epsilons=eps, workers=1)
    b = scan_range(1, 1 << 12, epsilons=eps, workers=2)
    assert a.to_json() == b.to_json()
    assert ScanReport.from_json(a.to_json()).to_json() == a.to_json()


def test_scan_json_and_csv():
    r = scan_range(1, 128, epsilons=[Dyadic(1, 4)])
    back = ScanReport.from_json(r.to_json())
    assert back.min_c == r.min_c
    assert back.epsilon_counts == r.epsilon_counts
    csv = r.to_csv()
    assert csv.splitlines()[0] == "kind,t,value,decimal"
    assert any(line.startswith("min_c,") for line in csv.splitlines())


def test_scan_checkpoint(tmp_path):
    cp = tmp_path / "scan.ck"
    full = scan_range(1, 1 << 10, checkpoint=str(cp))
    assert full.checked == (1 << 10) - 1
    text = cp.read_text()
    assert text.startswith("last_completed_prefix=")
    # a completed checkpoint leaves nothing to do
    with pytest.raises(ValueError):
        scan_range(1, 1 << 10, checkpoint=str(cp))
    # a top-region-only checkpoint resumes over the subtrees
    cp2 = tmp_path / "partial.ck"
    cp2.write_text("last_completed_prefix=1\n")
    rest = scan_range(1, 1 << 10, checkpoint=str(cp2))
    assert rest.ok
    assert rest.checked < (1 << 10) - 1
    assert cp2.read_text() != "last_completed_prefix=1\n"


def test_interval_sums_small():
    s1, s2, t1, t2 = interval_sums(1)
    assert s1.as_fraction() == Fraction(3, 4) + Fraction(11, 16)
    assert s2.as_fraction() == Fraction(9, 16) + Fraction(121, 256)
    assert t1.as_fraction() == Fraction(1, 2) + Fraction(3, 8)
    assert t2.as_fraction() == Fraction(1, 4) + Fraction(9, 64)
