"""Command-line batch verification and enumeration front end.

Usage:
    endosign verify SUITE [flags]     run one verification sweep
    endosign enumerate KIND --n N     emit an enumeration report

Output is JSON by default (CSV with --format csv), written to stdout or to
--out FILE.  Exit codes: 0 all checks passed, 1 failures found, 2 usage
error, 3 a resource cap was hit (partial report flagged incomplete).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import suites
from .errors import ResourceLimitError
from .report import VerificationReport

VERIFY_SUITES = {
    "aux": (suites.verify_aux_identities, ("rmax",), {"rmax": 30}),
    "split": (suites.verify_split, ("rmax", "nmax"), {"rmax": 30, "nmax": 10}),
    "kappasum": (suites.verify_kappa_sums, ("max_rr",), {"max_rr": 6}),
    "counting": (suites.verify_counting, ("qs", "t2max"), {"qs": (5, 7, 13), "t2max": 2}),
    "constprod": (suites.verify_product_identity, ("qs", "rmax"),
                  {"qs": (5, 7, 13), "rmax": 6}),
    "signchain": (suites.verify_sign_chain, ("rmax",), {"rmax": 8}),
    "transfer": (suites.verify_transfer_factorization, ("qs", "rrmax"),
                 {"qs": (5, 7), "rrmax": 4}),
    "weyl": (suites.verify_weyl_classes, ("nmax",), {"nmax": 4}),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endosign",
        description="Exact verification of endoscopic-transfer sign and "
                    "constant identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run a verification sweep")
    ver.add_argument("suite", choices=sorted(VERIFY_SUITES) + ["all"])
    ver.add_argument("--rmax", type=int, default=None)
    ver.add_argument("--nmax", type=int, default=None)
    ver.add_argument("--max-rr", dest="max_rr", type=int, default=None)
    ver.add_argument("--rrmax", type=int, default=None)
    ver.add_argument("--t2max", type=int, default=None)
    ver.add_argument("--q", dest="qs", type=_parse_q_list, default=None,
                     help="comma-separated residue cardinalities, e.g. 5,7,13")
    _output_flags(ver)

    enum = sub.add_parser("enumerate", help="emit an enumeration report")
    enum.add_argument("kind", choices=["params", "descent"])
    enum.add_argument("--n", type=int, required=True)
    _output_flags(enum)
    return parser


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def _parse_q_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q list {text!r}") from None


def _run_suite(name: str, args) -> VerificationReport:
    func, wanted, defaults = VERIFY_SUITES[name]
    kwargs = {}
    for key in wanted:
        flag = getattr(args, key if key != "qs" else "qs", None)
        kwargs[key] = flag if flag is not None else defaults[key]
    return func(**kwargs)


def _emit(payload, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        rows = payload if isinstance(payload, list) else [payload]
        keys = sorted({k for row in rows for k in row})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_csv_cell(row.get(k)) for k in keys])
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        names = sorted(VERIFY_SUITES) if args.suite == "all" else [args.suite]
        reports = []
        exit_code = 0
        for name in names:
            try:
                report = _run_suite(name, args)
            except ResourceLimitError as exc:
                report = VerificationReport(name, {"error": str(exc)}, incomplete=True)
                exit_code = 3
            reports.append(report.to_json_dict())
            if report.failures and exit_code == 0:
                exit_code = 1
        payload = reports if args.suite == "all" else reports[0]
        _emit(payload, args.format, args.out)
        return exit_code

    # enumerate
    builder = (suites.enumerate_params_report if args.kind == "params"
               else suites.enumerate_descent_report)
    try:
        payload = builder(args.n)
    except ResourceLimitError as exc:
        _emit({"kind": args.kind, "n": args.n, "error": str(exc),
               "incomplete": True}, args.format, args.out)
        return 3
    _emit(payload, args.format, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
