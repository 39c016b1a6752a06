"""Command-line front end.

Every value is printed in its exact form first ("p/2^e", or "p/q" for the few
non-dyadic rationals) with decimals second, so logs are diffable; JSON output
round-trips exactly.  Exit status is nonzero whenever a verified inequality
fails, and the exact witness is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, density, equivalences, hyperbinary, moments, series
from .guards import CostGuardError
from .numeric import Dyadic

__all__ = ["main"]

DECIMALS = 12


def _dec(value) -> str:
    if isinstance(value, Dyadic):
        return value.to_decimal(DECIMALS)
    return f"{float(value):.{DECIMALS}g}"


def _emit(fmt: str, payload: dict, rows: list[tuple], header: tuple) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    elif fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
                  for i, h in enumerate(header)]
        print("  ".join(str(h).ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))


def _cmd_ct(args) -> int:
    cv = density.c(args.t)
    tv = density.c_tilde(args.t)
    if args.format == "table":
        print(f"c  = {cv} = {cv.as_fraction()} ({_dec(cv)})")
        print(f"c~ = {tv} = {tv.as_fraction()} ({_dec(tv)})")
        return 0
    payload = {"t": args.t, "c": str(cv), "c_decimal": _dec(cv),
               "ctilde": str(tv), "ctilde_decimal": _dec(tv)}
    _emit(args.format, payload,
          [("c", args.t, cv, _dec(cv)), ("ctilde", args.t, tv, _dec(tv))],
          ("kind", "t", "value", "decimal"))
    return 0


def _cmd_delta(args) -> int:
    col = density.delta_column(args.t)
    rows = [(k, str(col.window[k]), _dec(col.window[k]))
            for k in range(col.k_hi, col.k_lo - 1, -1)]
    payload = {
        "t": args.t,
        "k_hi": col.k_hi,
        "k_lo": col.k_lo,
        "window": {str(k): str(v) for k, v in col.window.items()},
        "tail_head": str(col.tail_head),
        "note": f"below k = {col.k_lo} each step down halves the value",
    }
    _emit(args.format, payload, rows, ("k", "value", "decimal"))
    if args.format == "table":
        print(f"(below k = {col.k_lo}: geometric, halving per step)")
    return 0


def _cmd_phi(args) -> int:
    col = density.phi_column(args.t)
    pv = density.p(args.t)
    rows = [(k, str(col.support[k]), _dec(col.support[k]))
            for k in sorted(col.support, reverse=True)]
    payload = {"t": args.t,
               "support": {str(k): str(v) for k, v in col.support.items()},
               "p": str(pv), "p_decimal": _dec(pv)}
    _emit(args.format, payload, rows, ("k", "value", "decimal"))
    if args.format == "table":
        print(f"p_t = {pv} ({_dec(pv)})")
    return 0


def _cmd_scan(args) -> int:
    eps = [Dyadic.parse(e) for e in args.epsilon or []]
    report = density.scan_range(args.lo, args.hi, epsilons=eps,
                                workers=args.workers or 1, checkpoint=args.checkpoint)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print(report.to_csv(), end="")
    else:
        print(f"checked {report.checked} values in [{report.t_lo}, {report.t_hi})")
        t, v = report.min_c
        print(f"min c at t = {t}: {v} ({_dec(v)})")
        t, v = report.max_ctilde
        print(f"max c~ at t = {t}: {v} ({_dec(v)})")
        for e, n in report.epsilon_counts.items():
            print(f"count of 1/2 < c < 1/2 + {e}: {n}")
        if report.ok:
            print("no violations")
    if not report.ok:
        for t in report.violations_c:
            v = density.c(t)
            print(f"VIOLATION: c({t}) = {v} = {v.as_fraction()} <= 1/2", file=sys.stderr)
        for t in report.violations_ctilde:
            v = density.c_tilde(t)
            print(f"VIOLATION: c~({t}) = {v} = {v.as_fraction()} > 1/2", file=sys.stderr)
        return 1
    return 0


def _cmd_oracle(args) -> int:
    t = args.t
    failures = []
    checks = []
    hist = density.brute_force_histogram(t, max_cost=args.max_cost)
    bad = [k for k in range(-t - 2, t + 3)
           if hist.get(k, Dyadic(0)) != density.delta(k, t)]
    checks.append(("delta vs brute force", not bad, f"k in [{-t-2}, {t+2}]"))
    if bad:
        failures.append(f"delta mismatch at k = {bad}")
    pv = equivalences.density_via_pochhammer(t, max_cost=args.max_cost)
    ok = pv == density.c(t)
    checks.append(("rising-factorial density vs c", ok, f"{pv}"))
    if not ok:
        failures.append(f"rising-factorial density {pv} != c = {density.c(t)}")
    ok = density.delta_from_phi(t).values_equal(density.delta_column(t))
    checks.append(("column from phi vs direct walk", ok, ""))
    if not ok:
        failures.append("phi reconstruction mismatch")
    ok = hyperbinary.phi_column_from_hyperbinary(t, max_cost=args.max_cost).values_equal(
        density.phi_column(t))
    checks.append(("phi from hyperbinary counts", ok, ""))
    if not ok:
        failures.append("hyperbinary reconstruction mismatch")
    rows = [(name, "pass" if ok else "FAIL", note) for name, ok, note in checks]
    payload = {"t": t, "checks": [{"name": n, "ok": o, "note": x} for n, o, x in checks]}
    _emit(args.format, payload, rows, ("check", "status", "note"))
    for f in failures:
        print(f"FAIL: {f}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_rows(args) -> int:
    t, alpha = args.t, args.alpha
    poly = equivalences.a_poly(alpha, t)
    direct = equivalences.row_count_direct(t, alpha, max_cost=args.max_cost)
    period = equivalences.zabek_period(t, alpha, max_cost=args.max_cost) if t >= 1 else None
    ok = poly == direct
    rows = [("row polynomial", str(poly), _dec(Fraction(poly))),
            ("direct count", str(direct), str(direct)),
            ("agreement", "pass" if ok else "FAIL", ""),
            ("shortest period", str(period), "")]
    payload = {"t": t, "alpha": alpha, "a_poly": str(poly), "row_count": direct,
               "agree": ok, "period": period}
    b_ok = None
    if t >= 1:
        bval = equivalences.b_poly(alpha, t)
        rows.append(("column density", str(bval), _dec(bval)))
        payload["b_poly"] = str(bval)
        if alpha == t.bit_count() + 1:
            b_ok = bval == density.c(t).as_fraction()
            rows.append(("column density vs c", "pass" if b_ok else "FAIL", str(density.c(t))))
            payload["b_equals_c"] = b_ok
    _emit(args.format, payload, rows, ("quantity", "value", "note"))
    if not ok:
        print(f"FAIL: a_poly({alpha},{t}) = {poly} != {direct}", file=sys.stderr)
        return 1
    if b_ok is False:
        print(f"FAIL: b_poly({alpha},{t}) != c({t}) = {density.c(t)}", file=sys.stderr)
        return 1
    return 0


def _cmd_hyper(args) -> int:
    t = args.t
    expansions = hyperbinary.enumerate_proper(t - 1, max_cost=args.max_cost)
    rows = [(str(e), e.twos, e.zeros, str(e.weight())) for e in expansions]
    counts = hyperbinary.h_counts(t, max_cost=args.max_cost)
    ok = hyperbinary.phi_column_from_hyperbinary(t, max_cost=args.max_cost).values_equal(
        density.phi_column(t))
    payload = {
        "t": t,
        "expansions_of": t - 1,
        "expansions": [{"digits": str(e), "twos": e.twos, "zeros": e.zeros,
                        "weight": str(e.weight())} for e in expansions],
        "counts": {f"{i},{j}": n for (i, j), n in sorted(counts.counts.items())},
        "phi_reconstruction_ok": ok,
    }
    _emit(args.format, payload, rows, ("digits", "twos", "zeros", "weight"))
    if args.format == "table":
        print(f"phi reconstruction: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def _cmd_moments(args) -> int:
    report = moments.empirical_moments(args.lam, workers=args.workers or 1,
                                       max_cost=args.max_cost)
    payload = report.to_json_obj()
    rows = [(k, v) for k, v in payload.items() if k != "asym_residuals"]
    rows += [(f"residual {k}", v) for k, v in payload["asym_residuals"].items()]
    _emit(args.format, payload, rows, ("quantity", "value"))
    return 0


def _cmd_diagonal(args) -> int:
    n = args.n
    rows = []
    payload = {"n": n}
    for offset, formula in ((1, "secmom_c"), (0, "secmom_ctilde")):
        exact = series.diagonal_F(n, offset, max_cost=args.max_cost)
        scaled = Fraction(exact, 8**n)
        approx = moments.asymptotic_comparators(n, formula) if n >= 1 else float("nan")
        rows.append((f"offset {offset}", str(exact), str(scaled), f"{float(scaled):.12g}",
                     f"{approx:.12g}"))
        payload[f"offset_{offset}"] = {"coefficient": str(exact), "scaled": str(scaled),
                                       "comparator": f"{approx:.12g}"}
    _emit(args.format, payload, rows,
          ("diagonal", "coefficient", "scaled (/8^n)", "decimal", "comparator"))
    return 0


def _cmd_special(args) -> int:
    cols = series.special_sequence_columns(args.jmax, max_cost=args.max_cost)
    rows = [(j, tj, str(v), _dec(v)) for j, (tj, v) in enumerate(cols)]
    payload = {"rows": [{"j": j, "t": str(tj), "c": str(v), "decimal": _dec(v)}
                        for j, (tj, v) in enumerate(cols)]}
    _emit(args.format, payload, rows, ("j", "t_j", "c", "decimal"))
    return 0


def _cmd_verify_paper(args) -> int:
    numbers = [int(x) for x in args.only.split(",")] if args.only else None
    results = acceptance.run_all(numbers=numbers, workers=args.workers or 4)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} [{r.seconds:7.2f}s] criterion {r.number:2d} ({r.name}): {r.detail}")
        if not r.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    # shared options accepted both before and after the subcommand; SUPPRESS
    # keeps the subparser pass from clobbering values the main pass already set
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("table", "json", "csv"))
    common.add_argument("--workers", type=int,
                        help="worker processes (default 1; verify-paper uses 4)")
    common.add_argument("--checkpoint", help="checkpoint file for scan")
    common.add_argument("--epsilon", action="append",
                        help="epsilon window for scan counts (dyadic, e.g. 1/2^3); repeatable")
    common.add_argument("--max-cost", type=int, dest="max_cost",
                        help="override cost guards with an explicit budget")
    parser = argparse.ArgumentParser(
        prog="digitdens",
        description="Exact densities of binary sum-of-digits differences.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ct", parents=[common], help="c_t and c~_t for one t")
    p.add_argument("t", type=int)
    p.set_defaults(fn=_cmd_ct)

    p = sub.add_parser("delta", parents=[common], help="exact density column of t")
    p.add_argument("t", type=int)
    p.set_defaults(fn=_cmd_delta)

    p = sub.add_parser("phi", parents=[common], help="companion-array column and p_t")
    p.add_argument("t", type=int)
    p.set_defaults(fn=_cmd_phi)

    p = sub.add_parser("scan", parents=[common], help="verify c > 1/2 >= c~ over [lo, hi)")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("oracle", parents=[common], help="brute-force cross-check bundle for one t")
    p.add_argument("t", type=int)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("rows", parents=[common], help="Pascal-row count formulas and shortest period")
    p.add_argument("t", type=int)
    p.add_argument("alpha", type=int)
    p.set_defaults(fn=_cmd_rows)

    p = sub.add_parser("hyper", parents=[common], help="proper hyperbinary expansions of t-1")
    p.add_argument("t", type=int)
    p.set_defaults(fn=_cmd_hyper)

    p = sub.add_parser("moments", parents=[common], help="exact interval moments for one lambda")
    p.add_argument("lam", type=int, metavar="lambda")
    p.set_defaults(fn=_cmd_moments)

    p = sub.add_parser("diagonal", parents=[common], help="diagonal coefficients of the second-moment kernel")
    p.add_argument("n", type=int)
    p.set_defaults(fn=_cmd_diagonal)

    p = sub.add_parser("special", parents=[common], help="the sequence t_j = (4^j-1)/3 and its c values")
    p.add_argument("jmax", type=int)
    p.set_defaults(fn=_cmd_special)

    p = sub.add_parser("verify-paper", parents=[common], help="run the full acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(fn=_cmd_verify_paper)

    return parser


_COMMON_DEFAULTS = {
    "format": "table",
    "workers": None,
    "checkpoint": None,
    "epsilon": None,
    "max_cost": None,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _COMMON_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.fn(args)
    except CostGuardError as exc:
        print(f"cost guard: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
