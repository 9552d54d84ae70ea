"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .duality import TABLE3_SOURCE, DualityError, verify_table3
from .fibrations import (CATALOG, FibrationError, build_fibration, einstein_scan,
                         enumerate_einstein_metrics, fibration_params, lambda_values, parse_space_tag, t_zero,
                         expected_count, variation)
from .einstein import einstein_residual
from .groups import GroupSpecError
from .reports import REPORT_DIR_ENV, _plain, approx, emit_report, report_dir, to_csv, to_json
from .transitivity import TABLE1, TABLE2, TransitivityError, negative_controls, check_transitive, \
    table_row, verify_instance

USAGE_ERRORS = (GroupSpecError, TransitivityError, FibrationError, DualityError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _params(args, keys: Sequence[str] = ("n", "r", "m", "s")) -> dict:
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _families(name: str) -> set[str]:
    return {re.split(r"[(]", part)[0] for part in name.split("+")}


# --- record builders -----------------------------------------------------

def action_record(table: int, row: int, params: dict) -> dict:
    return verify_instance(table_row(table, row, params)).to_json()


def dual_record(row: int, params: dict) -> dict:
    return verify_table3(row, params).to_json()


def fibration_record(id_: str, m: int, s: int, scan: bool, ts: Sequence[Fraction] = ()) -> dict:
    fib = build_fibration(id_, m, s)
    lam_base, lam_fibre = lambda_values(fib)
    t0 = t_zero(fib)
    rec: dict[str, Any] = {"fibration": id_, "params": fibration_params(id_, fib.m, fib.s), "group": fib.group,
                           "total": fib.total, "base": fib.base,
                           "dims": {"k": fib.dim_k, "fibre": fib.p, "horizontal": fib.q},
                           "lambda_base": lam_base, "lambda_fibre": lam_fibre, "t0": t0}
    checks = {}
    if scan:
        res = einstein_scan(fib)
        rec["scan"] = res.roots
        rec["residuals"] = {_plain(t): r for t, r in res.residuals.items()}
        expected = {Fraction(1)} | ({t0} if t0 is not None else set())
        checks["scan_matches_t0"] = set(res.roots) == expected
    if ts:
        rec["metrics"] = {_plain(t): einstein_residual(variation(fib, t)) for t in ts}
    rec["checks"] = checks
    rec["pass"] = all(checks.values())
    return rec


def _table_rows(table: int, family: str | None) -> list[tuple[int, int]]:
    catalog = {1: TABLE1, 2: TABLE2, 3: TABLE3_SOURCE}[table]
    rows = []
    for row in sorted(catalog):
        if family:
            t, r = (table, row) if table != 3 else TABLE3_SOURCE[row]
            if family not in _families(table_row(t, r).action.algebra.name):
                continue
        rows.append((table, row))
    return rows


def table_records(tables: Sequence[int], family: str | None = None) -> list[dict]:
    out = []
    for table in tables:
        for t, row in _table_rows(table, family):
            out.append(dual_record(row, {}) if t == 3 else action_record(t, row, {}))
    return out


def control_records() -> list[dict]:
    out = []
    for label, a in negative_controls():
        rep = check_transitive(a)
        out.append({"control": label, "dims": {"ambient": rep.ambient, "g": rep.g,
                                               "isotropy": rep.isotropy_ambient, "sum": rep.sum},
                    "transitive": rep.transitive, "pass": not rep.transitive})
    return out


def per_check(record: dict) -> list[dict]:
    base = {k: v for k, v in record.items() if k not in ("checks", "pass")}
    return [dict(base, check=name, **{"pass": ok}) for name, ok in record["checks"].items()]


# --- text output ---------------------------------------------------------

def _fmt(v: Any, show_approx: bool) -> str:
    p = _plain(v)
    if show_approx and isinstance(p, str) and re.fullmatch(r"-?\d+/\d+", p):
        return f"{p} (~{approx(p):.6g})"
    return str(p)


def _row_line(rec: dict) -> str:
    status = "PASS" if rec["pass"] else "FAIL"
    where = f"table {rec['table']} row {rec['row']}"
    params = ",".join(f"{k}={v}" for k, v in sorted(rec["params"].items()))
    dims = " ".join(f"{k}={v}" for k, v in sorted(rec["dims"].items()))
    failed = [k for k, v in rec["checks"].items() if not v]
    tail = f"  failed: {', '.join(failed)}" if failed else ""
    return f"{status}  {where}" + (f" ({params})" if params else "") + f"  {dims}{tail}"


def _print_records(records: list[dict], fmt: str, text_fn, out) -> None:
    if fmt == "json":
        out.write(to_json(records))
    elif fmt == "csv":
        out.write(to_csv(records))
    else:
        for rec in records:
            out.write(text_fn(rec) + "\n")


# --- subcommands -------------------------------------------------------------

def cmd_tables(args, out) -> int:
    tables = [1, 2, 3] if args.table == "all" else [int(args.table)]
    records = table_records(tables, args.family)
    _print_records(records, args.format, _row_line, out)
    return 0 if all(r["pass"] for r in records) else 1


def cmd_verify_action(args, out) -> int:
    rec = action_record(args.table, args.row, _params(args))
    if args.format == "text":
        out.write(_row_line(rec) + "\n")
    else:
        _print_records(per_check(rec), args.format, None, out)
    return 0 if rec["pass"] else 1


def cmd_dual(args, out) -> int:
    rec = dual_record(args.row, _params(args))
    if args.format == "text":
        out.write(_row_line(rec) + "\n")
        claimed = " ".join(f"{k}={v}" for k, v in sorted(rec["claimed"].items()))
        out.write(f"      claimed {claimed}\n")
    else:
        _print_records(per_check(rec), args.format, None, out)
    return 0 if rec["pass"] else 1


def cmd_einstein(args, out) -> int:
    rec = fibration_record(args.fibration, args.m, args.s, args.scan, args.t or ())
    if args.format != "text":
        _print_records([rec], args.format, None, out)
        return 0 if rec["pass"] else 1
    a = args.approx
    ps = ", ".join(f"{k}={v}" for k, v in sorted(rec["params"].items()))
    out.write(f"{rec['fibration']}" + (f" ({ps})" if ps else "") + ": "
              f"{rec['total']} -> {rec['base']}, group {rec['group']}\n")
    out.write(f"  fibre dim {rec['dims']['fibre']}, horizontal dim {rec['dims']['horizontal']}\n")
    out.write(f"  lambda' = {_fmt(rec['lambda_base'], a)}, lambda^ = {_fmt(rec['lambda_fibre'], a)}\n")
    out.write(f"  t0 = {_fmt(rec['t0'], a) if rec['t0'] is not None else 'none'}\n")
    if args.scan:
        ts = ", ".join(_fmt(t, a) for t in rec["scan"])
        out.write(f"  Einstein t: {{{ts}}}\n")
    for t, r in rec.get("metrics", {}).items():
        out.write(f"  t = {_fmt(Fraction(t), a)}: residual {_fmt(r, a)}\n")
    if args.scan:
        out.write(("PASS" if rec["pass"] else "FAIL") + "  scan matches {1} and t0\n")
    return 0 if rec["pass"] else 1


def cmd_enumerate(args, out) -> int:
    parse_space_tag(args.space)
    metrics = enumerate_einstein_metrics(args.space)
    expected = expected_count(args.space)
    ok = expected is None or expected == len(metrics)
    rec = {"space": args.space, "count": len(metrics), "expected": expected, "metrics": metrics, "pass": ok}
    if args.format != "text":
        _print_records([rec], args.format, None, out)
        return 0 if ok else 1
    out.write(f"{args.space}: {len(metrics)} homogeneous Einstein metric(s)\n")
    for d in metrics:
        if d["metric"] == "canonical":
            out.write("  canonical (t = 1)\n")
        else:
            ps = ",".join(f"{k}={v}" for k, v in sorted(d["params"].items()))
            out.write(f"  {d['fibration']}({ps}) on {d['group']}: t = {_fmt(d['t'], args.approx)}\n")
    if expected is None:
        out.write("  no stated count applies to this space\n")
    else:
        out.write(("PASS" if ok else "FAIL") + f"  expected {expected}\n")
    return 0 if ok else 1


def cmd_report(args, out) -> int:
    directory = report_dir() if args.out is None else Path(args.out)
    fibs = []
    for id_ in CATALOG:
        fibs.append(fibration_record(id_, 1, 0, True))
    groups = {
        "table1": table_records([1]),
        "table2": table_records([2]),
        "table3": table_records([3]),
        "controls": control_records(),
        "fibrations": fibs,
    }
    ok = True
    for name, records in groups.items():
        path = emit_report(records, name, args.format if args.format != "text" else "json", directory)
        passed = all(r["pass"] for r in records)
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'}  {name}: {len(records)} records -> {path}\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopf-einstein", description="Exact verification of transitive actions, "
                "duality tables and Einstein metrics on pseudo-hyperbolic spaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--json", dest="format", action="store_const", const="json")
        sp.add_argument("--approx", action="store_true", help="show float approximations next to rationals")

    def row_params(sp):
        for k in ("n", "r", "m", "s"):
            sp.add_argument(f"--{k}", type=int)

    t = sub.add_parser("tables", help="sweep tables 1-3 at minimal parameters")
    t.add_argument("--table", choices=("1", "2", "3", "all"), default="all")
    t.add_argument("--family", help="keep rows whose group contains this family, e.g. sp or spin")
    common(t)
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify-action", help="verify one row of table 1 or 2")
    v.add_argument("--table", type=int, choices=(1, 2), required=True)
    v.add_argument("--row", type=int, required=True)
    row_params(v)
    common(v)
    v.set_defaults(func=cmd_verify_action)

    d = sub.add_parser("dual", help="verify one row of table 3")
    d.add_argument("--row", type=int, required=True)
    row_params(d)
    common(d)
    d.set_defaults(func=cmd_dual)

    e = sub.add_parser("einstein", help="Einstein data of a Hopf fibration")
    e.add_argument("--fibration", choices=sorted(CATALOG), required=True)
    e.add_argument("--m", type=int, default=1)
    e.add_argument("--s", type=int, default=0)
    e.add_argument("--scan", action="store_true", help="find every t with g_t Einstein")
    e.add_argument("--t", type=_fraction, action="append", help="residual of g_t (repeatable)")
    common(e)
    e.set_defaults(func=cmd_einstein)

    n = sub.add_parser("enumerate", help="homogeneous Einstein metrics of a space tag")
    n.add_argument("--space", required=True, help="H:n:r, CH:m:s, HH:m:s, AP:m or BP:m")
    common(n)
    n.set_defaults(func=cmd_enumerate)

    r = sub.add_parser("report", help=f"write all sweeps as files (default directory ${REPORT_DIR_ENV})")
    r.add_argument("--out")
    common(r)
    r.set_defaults(func=cmd_report)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage() + "hopf-einstein: error: a subcommand is required")
        return args.func(args, out)
    except UsageError as exc:
        err.write(str(exc) + "\n")
        return 2
    except USAGE_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
