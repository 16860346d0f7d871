"""Command-line surface: verification suites, Euler/Betti tables, form
evaluation, and the numeric S-duality check.

Exit codes: 0 success / all checks pass, 1 a check failed or a request
was out of range, 2 usage errors (bad flags, unparsable tau).
All rational quantities are serialized as exact fraction strings; floats
appear only in the numeric evaluation output.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from .errors import InstantonZetaError
from .report import VerifyReport

SUITES = ("section1", "d8", "limit-lemmas", "smoothness", "wall-oracle",
          "theorem")

FORM_LEAVES = ("theta2", "theta3", "theta4", "BigTheta", "E2", "E2hat",
               "E4", "eta", "e1", "F", "P0", "Peven", "Podd")
FORM_LABELS = ("Z_SU2", "Z_SO3", "Z0", "Z_even", "Z_odd", "Zw0", "Zw1")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") \
            from exc


_TAU_FULL = re.compile(
    r"^(?P<re>[+-]?\d+(?:\.\d+)?)(?P<im>[+-]\d*(?:\.\d+)?)[ij]$")
_TAU_IMAG = re.compile(r"^(?P<im>[+-]?\d*(?:\.\d+)?)[ij]$")


def parse_tau(text):
    """Parse 'a+bi' (also 'i', '2j', '-0.2+0.9i'); upper half-plane only."""
    compact = text.replace(" ", "")
    m = _TAU_FULL.match(compact)
    if m:
        re_part = float(m.group("re"))
        im_raw = m.group("im")
    else:
        m = _TAU_IMAG.match(compact)
        if not m:
            raise ValueError(f"cannot parse tau from {text!r}")
        re_part = 0.0
        im_raw = m.group("im")
    if im_raw in ("", "+"):
        im_part = 1.0
    elif im_raw == "-":
        im_part = -1.0
    else:
        im_part = float(im_raw)
    if im_part <= 0:
        raise ValueError("tau must have positive imaginary part")
    return complex(re_part, im_part)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="instanton-zeta",
        description="Exact q-series pipeline for rank-2 sheaf counting on "
                    "a rational elliptic surface, with a numeric S-duality "
                    "check.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--order", type=_fraction, default=Fraction(20),
                       help="series truncation order (rational, default 20)")
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="text")

    p_verify = sub.add_parser("verify", help="run identity suites")
    common(p_verify)
    p_verify.add_argument("--suite", default="all",
                          choices=SUITES + ("all",))
    p_verify.add_argument("--oracle-order", type=_fraction,
                          default=Fraction(6),
                          help="order for the wall-sum oracle comparison")

    p_table = sub.add_parser("table", help="Euler characteristic table")
    common(p_table)
    p_table.add_argument("--class", dest="cls", required=True,
                         choices=("v0", "even", "odd", "lambda0",
                                  "lambdaEven", "lambdaOdd"))
    p_table.add_argument("--max-delta", type=_fraction, required=True)

    p_eval = sub.add_parser("eval", help="evaluate a named form")
    common(p_eval)
    p_eval.add_argument("--form", required=True,
                        help=f"one of {FORM_LEAVES + FORM_LABELS}")
    p_eval.add_argument("--scale", type=_fraction, default=Fraction(1),
                        help="argument scaling k for f(k tau)")
    p_eval.add_argument("--tau", help="evaluation point a+bi")
    p_eval.add_argument("--digits", type=int, default=40)
    p_eval.add_argument("--e2", choices=("anomaly", "E2"), default="anomaly",
                        help="resolution of the weight-2 slot")
    p_eval.add_argument("--series", action="store_true",
                        help="print the exact q-expansion to --order")

    p_sd = sub.add_parser("sduality", help="S-duality transformation check")
    p_sd.add_argument("--tau", required=True)
    p_sd.add_argument("--digits", type=int, default=40)
    p_sd.add_argument("--holomorphic", action="store_true",
                      help="diagnostic: resolve the weight-2 slot "
                           "holomorphically and report the residual")
    p_sd.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _validate(parser, args):
    if getattr(args, "order", None) is not None and args.order < 0:
        parser.error("--order must be nonnegative")
    if getattr(args, "oracle_order", None) is not None:
        if args.oracle_order < 0:
            parser.error("--oracle-order must be nonnegative")
        if args.oracle_order > args.order:
            parser.error("--oracle-order must not exceed --order")
    if getattr(args, "digits", None) is not None and args.digits < 10:
        parser.error("--digits must be at least 10")


# -- verify --------------------------------------------------------------------

def _run_suite(name, order, oracle_order):
    from . import assembly, forms, lattice, results
    if name == "section1":
        return [forms.verify_section1(order)]
    if name == "d8":
        return [lattice.verify_d8_decompositions(order)]
    if name == "limit-lemmas":
        return [assembly.check_asum_closed_forms(order),
                results.check_limit_lemmas(order)]
    if name == "smoothness":
        return [assembly.smoothness_report("vEven", order),
                assembly.smoothness_report("vOdd", order)]
    if name == "wall-oracle":
        return [assembly.verify_wall_oracle(oracle_order)]
    if name == "theorem":
        return [results.assemble_theorem(order)[0]]
    raise ValueError(name)


def cmd_verify(args):
    from .runtime import parallel_map
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for batch in parallel_map(
            lambda s: _run_suite(s, args.order, args.oracle_order), suites):
        reports.extend(batch)
    payload = [_report_dict(r) for r in reports]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        print(json.dumps({"ok": ok, "suites": payload}, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["suite", "identity", "max_exponent", "passed",
                         "first_difference", "seconds"])
        for r in reports:
            for item in r.results:
                writer.writerow([r.suite, item.name, str(item.max_exponent),
                                 item.passed,
                                 "" if item.first_difference is None
                                 else str(item.first_difference),
                                 f"{item.seconds:.3f}"])
    else:
        for r in reports:
            print(f"[{r.suite}]")
            for line in r.lines():
                print("  " + line)
        print("all passed" if ok else "FAILURES present")
    if not ok:
        bad = next(item for r in reports for item in r.results
                   if not item.passed)
        print(f"first failure: {bad.name}"
              + (f" at q^{bad.first_difference}"
                 if bad.first_difference is not None else ""),
              file=sys.stderr)
        return 1
    return 0


def _report_dict(report: VerifyReport):
    return {
        "suite": report.suite,
        "ok": report.ok,
        "results": [{
            "name": r.name,
            "max_exponent": str(r.max_exponent),
            "passed": r.passed,
            "first_difference": (None if r.first_difference is None
                                 else str(r.first_difference)),
            "seconds": round(r.seconds, 4),
            "note": r.note,
        } for r in report.results],
    }


# -- table ---------------------------------------------------------------------

def table_to_dict(table):
    return {
        "class": table.label,
        "rows": [{
            "delta": str(r.delta),
            "dim": r.dim,
            "euler": str(r.euler),
            "betti": r.betti,
            "singular": r.singular,
        } for r in table.rows],
    }


def table_from_dict(data):
    from .results import EulerTable, TableRow
    rows = [TableRow(delta=Fraction(r["delta"]), dim=int(r["dim"]),
                     euler=Fraction(r["euler"]),
                     betti=None if r["betti"] is None else list(r["betti"]),
                     singular=bool(r["singular"]))
            for r in data["rows"]]
    return EulerTable(label=data["class"], rows=rows)


def cmd_table(args):
    from .results import euler_table
    if args.max_delta > args.order:
        print(f"max-delta {args.max_delta} exceeds --order {args.order}",
              file=sys.stderr)
        return 1
    table = euler_table(args.cls, args.max_delta)
    if args.format == "json":
        print(json.dumps(table_to_dict(table), indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["delta", "dim", "euler", "betti", "singular"])
        for r in table.rows:
            writer.writerow([str(r.delta), r.dim, str(r.euler),
                             "" if r.betti is None
                             else ";".join(map(str, r.betti)), r.singular])
    else:
        print(f"class {table.label}")
        for r in table.rows:
            betti = "-" if r.betti is None else str(r.betti)
            flag = "  [singular: defined by the wall-crossing equation]" \
                if r.singular else ""
            print(f"  Delta={str(r.delta):>5}  dim={r.dim:>3}  "
                  f"chi={str(r.euler):>10}  betti={betti}{flag}")
    return 0


# -- eval ----------------------------------------------------------------------

def _form_expr(name, scale):
    from .formexpr import E2Slot, leaf
    from .results import gauge_partition_functions, mnvw_form_expr, zw_forms
    if name in FORM_LEAVES:
        if name == "E2hat":
            return E2Slot(Fraction(scale))
        return leaf(name, scale)
    if name in ("Z0", "Z_even", "Z_odd"):
        return mnvw_form_expr({"Z0": "0", "Z_even": "even",
                               "Z_odd": "odd"}[name])
    if name in ("Z_SU2", "Z_SO3"):
        su2, so3 = gauge_partition_functions()
        return su2.expr if name == "Z_SU2" else so3.expr
    if name in ("Zw0", "Zw1"):
        w0, w1 = zw_forms()
        return w0 if name == "Zw0" else w1
    raise InstantonZetaError(
        f"unknown form {name!r}; choose from {FORM_LEAVES + FORM_LABELS}")


def cmd_eval(args):
    from .formexpr import as_qseries
    expr = _form_expr(args.form, args.scale)
    out = {"form": args.form, "scale": str(args.scale)}
    if not args.tau and not args.series:
        print("nothing to do: pass --tau and/or --series", file=sys.stderr)
        return 2
    if args.series:
        series = as_qseries(expr, args.order, e2_mode="E2")
        out["series"] = [{"exponent": str(e), "coefficient": str(c)}
                         for e, c in series.pairs()]
        out["truncation"] = str(series.trunc)
        out["e2_slot"] = "holomorphic"
    if args.tau:
        from .numeric import eval_form
        tau = parse_tau(args.tau)
        val = eval_form(expr, tau, args.digits, e2_mode=args.e2)
        out["tau"] = str(tau)
        out["value"] = {"re": float(val.real), "im": float(val.imag)}
        out["value_str"] = str(val)
        out["e2_resolution"] = args.e2
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(f"form {args.form} (argument scaling {args.scale})")
        if "series" in out:
            terms = " + ".join(f"({t['coefficient']}) q^{t['exponent']}"
                               for t in out["series"][:12])
            print(f"  series to q^{out['truncation']}: {terms}"
                  + (" + ..." if len(out["series"]) > 12 else ""))
        if "value_str" in out:
            print(f"  value at tau = {out['tau']}: {out['value_str']}")
    return 0


# -- sduality ------------------------------------------------------------------

def cmd_sduality(args):
    from .numeric import sduality_check
    tau = parse_tau(args.tau)  # ValueError -> exit 2 in main()
    resolution = "E2" if args.holomorphic else "anomaly"
    report = sduality_check(tau, digits=args.digits, resolution=resolution)
    if args.format == "json":
        print(json.dumps({
            "tau": str(report.tau),
            "digits": report.digits,
            "resolution": report.resolution,
            "lhs": {"re": report.lhs.real, "im": report.lhs.imag},
            "rhs": {"re": report.rhs.real, "im": report.rhs.imag},
            "rel_error": report.rel_error,
            "threshold": report.threshold,
            "passed": report.passed,
            "seconds": round(report.seconds, 3),
        }, indent=2))
    else:
        for line in report.lines():
            print(line)
    if report.passed is False:
        return 1
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "table":
            return cmd_table(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "sduality":
            return cmd_sduality(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstantonZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error("no command")


if __name__ == "__main__":
    sys.exit(main())
