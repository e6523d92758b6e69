"""Command-line interface: solve, table, simulate, pmf, asymptotic.

JSON (default) carries full float precision with a stable key order; CSV is
RFC-4180-style with a header row and LF line endings.  The `table` subcommand
renders the summary table at fixed 6 decimals (round-half-even) so its output
is byte-stable; everything else serializes floats at full repr precision.

Exit codes: 0 success, 2 usage/domain error, 3 numeric failure.
"""

import argparse
import csv
import json
import sys

from . import asymptotic, simulate, solver

TABLE_NS = (10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 200, 500, 1000)


def _emit_json(record, out=None):
    json.dump(record, out or sys.stdout)
    (out or sys.stdout).write("\n")


def _csv_writer(out=None):
    return csv.writer(out or sys.stdout, lineterminator="\n")


def _cell(v):
    return repr(v) if isinstance(v, float) else v


def _emit_record(record, as_csv):
    if as_csv:
        w = _csv_writer()
        w.writerow(record.keys())
        w.writerow([_cell(v) for v in record.values()])
    else:
        _emit_json(record)


def cmd_solve(args):
    res = solver.solve(args.n)
    record = {
        "n": args.n,
        "k1": res.thresholds.k1,
        "k2": res.thresholds.k2,
        "value": res.value,
    }
    if args.table_out:
        with open(args.table_out, "w", newline="") as fh:
            w = _csv_writer(fh)
            w.writerow(["k", "phi1", "phi2", "continuation", "stop1", "stop2"])
            for k in range(1, args.n + 1):
                f1 = solver.payoff(k, 1, args.n)
                row = [k, repr(f1)]
                if k >= 2:
                    row.append(repr(solver.payoff(k, 2, args.n)))
                else:
                    row.append("")
                row.append(repr(float(res.continuation[k])))
                row.append(int(k > res.thresholds.k1))
                row.append(int(k > res.thresholds.k2) if k >= 2 else "")
                w.writerow(row)
    _emit_record(record, args.csv)
    return 0


def cmd_table(args):
    if args.ns:
        try:
            ns = [int(part) for part in args.ns.split(",") if part.strip()]
        except ValueError:
            raise ValueError(f"--ns must be a comma-separated integer list, got {args.ns!r}")
        if not ns:
            raise ValueError("--ns list is empty")
    else:
        ns = list(TABLE_NS)
    w = _csv_writer()
    w.writerow(["N", "k1", "k2", "v_N"])
    for n in ns:
        res = solver.solve(n)
        w.writerow([n, res.thresholds.k1, res.thresholds.k2, f"{res.value:.6f}"])
    sol = asymptotic.asymptotic_solution()
    w.writerow(["inf", f"{sol.a:.6f}", f"{sol.b:.6f}", f"{sol.value:.6f}"])
    return 0


def cmd_simulate(args):
    if args.k1 is None or args.k2 is None:
        thresholds = solver.solve(args.n).thresholds
        k1 = thresholds.k1 if args.k1 is None else args.k1
        k2 = thresholds.k2 if args.k2 is None else args.k2
    else:
        k1, k2 = args.k1, args.k2
    est = simulate.monte_carlo(args.n, (k1, k2), args.trials, args.seed)
    exact = solver.policy_value((k1, k2), args.n)
    z = (est.mean - exact) / est.std_error if est.std_error > 0 else None
    record = {
        "n": args.n,
        "k1": k1,
        "k2": k2,
        "trials": est.trials,
        "seed": est.seed,
        "mean": est.mean,
        "std_error": est.std_error,
        "exact": exact,
        "z_score": z,
    }
    _emit_record(record, args.csv)
    return 0


def cmd_pmf(args):
    pmf = solver.duration_pmf(args.i, args.rank, args.n)
    survive = pmf.pop(args.n + 1)
    if args.csv:
        w = _csv_writer()
        w.writerow(["k", "probability"])
        for k in sorted(pmf):
            w.writerow([k, repr(pmf[k])])
        w.writerow(["survive", repr(survive)])
    else:
        record = {
            "n": args.n,
            "i": args.i,
            "rank": args.rank,
            "pmf": {str(k): pmf[k] for k in sorted(pmf)},
            "survive": survive,
        }
        _emit_json(record)
    return 0


def cmd_asymptotic(args):
    sol = asymptotic.asymptotic_solution()
    record = {
        "a": sol.a,
        "b": sol.b,
        "value": sol.value,
        "residual_b": abs(
            asymptotic.mean_operator_limit(sol.b) - asymptotic.phi_limit(sol.b, 2)
        ),
        "residual_a": abs(
            asymptotic.limit_value_function(sol.a, sol.b)
            - asymptotic.phi_limit(sol.a, 1)
        ),
    }
    if args.fine_n:
        res = solver.solve(args.fine_n)
        record["k1_over_n"] = res.thresholds.k1 / args.fine_n
        record["k2_over_n"] = res.thresholds.k2 / args.fine_n
        record["v_n"] = res.value
    _emit_record(record, args.csv)
    return 0


def _add_format_flags(sub):
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--json", dest="csv", action="store_false",
                       help="JSON output (default)")
    group.add_argument("--csv", dest="csv", action="store_true", help="CSV output")
    sub.set_defaults(csv=False)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shelflife",
        description="Optimal stopping for the best-or-second-best duration problem",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="optimal thresholds and value for one horizon")
    p.add_argument("--n", type=int, required=True, help="horizon (>= 2)")
    p.add_argument("--table-out", metavar="PATH",
                   help="also write per-k CSV (k,phi1,phi2,continuation,stop1,stop2)")
    _add_format_flags(p)
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("table", help="threshold/value table plus the limit row (CSV)")
    p.add_argument("--ns", help="comma-separated horizons (default: the 13 standard rows)")
    p.set_defaults(func=cmd_table)

    p = subs.add_parser("simulate", help="Monte Carlo estimate of a threshold policy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=int, help="rank-1 threshold (default: optimal)")
    p.add_argument("--k2", type=int, help="rank-2 threshold (default: optimal)")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    _add_format_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("pmf", help="candidacy end-time distribution of a held item")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True, help="holding start time")
    p.add_argument("--rank", type=int, required=True, choices=(1, 2))
    _add_format_flags(p)
    p.set_defaults(func=cmd_pmf)

    p = subs.add_parser("asymptotic", help="limit constants a, b and the limit value")
    p.add_argument("--fine-n", type=int, metavar="N",
                   help="also report k1/N, k2/N, v_N at this horizon")
    _add_format_flags(p)
    p.set_defaults(func=cmd_asymptotic)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
