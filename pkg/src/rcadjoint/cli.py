"""Command-line front end.

Subcommands: expand, bracket, adjoint, verify (ratio | lambda |
rewritten).  Data goes to stdout or --output; diagnostics (hypothesis
warnings, tail-bound notes) go to stderr.  Exit codes: 0 success/pass,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import List, Optional

from .adjoint import (
    AdjointCase,
    CaseId,
    HypothesisWarning,
    adjoint_coefficients,
    case_params,
    rows_to_csv,
    rows_to_json,
    validate_hypotheses,
)
from .bracket import BracketParams, TwiceWeight, rc_bracket
from .forms import catalog_get, catalog_names
from .qseries import QSeries, series_mul
from .verify import lambda_from_first_coefficient, ratio_test, rewritten_sum_report


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _resolve_form(source: str, precision: int) -> QSeries:
    """A catalog name, or a path to a series JSON file."""
    if source in catalog_names():
        return catalog_get(source, precision)
    if os.path.exists(source):
        with open(source) as fh:
            series = QSeries.from_json_dict(json.load(fh))
        if series.precision < precision:
            raise UsageError(
                f"series file {source} has precision {series.precision}; "
                f"this run needs at least {precision}"
            )
        return series.truncate(precision)
    raise UsageError(f"unknown form {source!r} (not a catalog name or file)")


def _resolve_f(args, precision: int) -> QSeries:
    if getattr(args, "f_product", None):
        left = _resolve_form(args.f_product[0], precision)
        right = _resolve_form(args.f_product[1], precision)
        return series_mul(left, right)
    if args.f is None:
        raise UsageError("provide --f or --f-product")
    return _resolve_form(args.f, precision)


def _build_case(args, f: QSeries, g: QSeries) -> AdjointCase:
    if f.meta is None or g.meta is None:
        raise UsageError("adjoint needs weight metadata on both forms")
    k2 = f.meta.twice_weight - g.meta.twice_weight - 4 * args.nu
    if k2 < 1:
        raise UsageError("inconsistent weights: target weight would be < 1/2")
    try:
        return AdjointCase(
            CaseId(args.case),
            TwiceWeight(k2),
            TwiceWeight(g.meta.twice_weight),
            args.nu,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_warnings(caught):
    for w in caught:
        if issubclass(w.category, HypothesisWarning):
            print(f"warning: {w.message}", file=sys.stderr)


def _cmd_expand(args) -> int:
    series = _resolve_form(args.form, args.precision)
    _emit(json.dumps(series.to_json_dict(), indent=2) + "\n", args.output)
    return 0


def _cmd_bracket(args) -> int:
    f = _resolve_form(args.f, args.precision)
    g = _resolve_form(args.g, args.precision)
    if f.meta is None or g.meta is None:
        raise UsageError("bracket needs weight metadata on both forms")
    p = BracketParams(
        TwiceWeight(f.meta.twice_weight), TwiceWeight(g.meta.twice_weight), args.nu
    )
    result = rc_bracket(f, g, p)
    _emit(json.dumps(result.to_json_dict(), indent=2) + "\n", args.output)
    return 0


def _adjoint_rows(args):
    precision = args.n_max + args.terms + 1
    f = _resolve_f(args, precision)
    g = _resolve_form(args.g, args.terms + 1)
    case = _build_case(args, f, g)
    report = validate_hypotheses(case, g.coeff(0) == 0)
    if not report.ok:
        print(f"warning: {report.message}", file=sys.stderr)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HypothesisWarning)
        rows = adjoint_coefficients(
            f, g, case, args.n_max, args.terms, epsilon=args.epsilon
        )
    _print_warnings(
        [w for w in caught if "tail exponent" in str(w.message)]
    )
    return rows, case


def _cmd_adjoint(args) -> int:
    rows, case = _adjoint_rows(args)
    if args.format == "csv":
        _emit(rows_to_csv(rows), args.output)
    else:
        payload = rows_to_json(rows, args.terms, case_params(case).gamma_s)
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _verdict(args, config: str, extra: dict, passed: bool) -> int:
    payload = {"config": config, **extra, "pass": passed}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0 if passed else 1


def _cmd_verify_ratio(args) -> int:
    rows, case = _adjoint_rows(args)
    basis_name = args.basis
    if basis_name is None:
        if getattr(args, "f_product", None):
            basis_name = args.f_product[1]
        else:
            raise UsageError("verify ratio needs --basis (or --f-product)")
    basis = _resolve_form(basis_name, args.n_max + 1)
    report = ratio_test(rows, basis, args.tolerance)
    config = f"case {args.case}, nu={args.nu}, basis {basis_name}"
    return _verdict(
        args,
        config,
        {
            "lambda": report.lam,
            "spread": report.spread,
            "error_budget": report.error_budget,
            "M": args.terms,
            "tolerance": args.tolerance,
        },
        report.passed,
    )


def _cmd_verify_lambda(args) -> int:
    precision = args.n_max + args.terms + 1
    if args.basis is None:
        raise UsageError("verify lambda needs --basis")
    f = _resolve_form(args.basis, precision)
    g = _resolve_form(args.g, precision)
    if f.meta is None or g.meta is None:
        raise UsageError("verify lambda needs weight metadata on both forms")
    try:
        case = AdjointCase(
            CaseId(args.case),
            TwiceWeight(f.meta.twice_weight),
            TwiceWeight(g.meta.twice_weight),
            args.nu,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = validate_hypotheses(case, g.coeff(0) == 0)
    if not report.ok:
        print(f"warning: {report.message}", file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        lam = lambda_from_first_coefficient(
            case, f, g, M=args.terms, epsilon=args.epsilon
        )
    config = f"case {args.case}, nu={args.nu}, f={args.basis}, g={args.g}"
    return _verdict(args, config, {"lambda": lam, "M": args.terms}, True)


def _cmd_verify_rewritten(args) -> int:
    faithful, rewritten = rewritten_sum_report(args.terms)
    return _verdict(
        args,
        "theta against the weight-6 level-4 newform",
        {
            "faithful_sum": faithful,
            "squares_indexed_sum": rewritten,
            "M": args.terms,
        },
        faithful > 0,
    )


def _add_adjoint_flags(p, with_f=True):
    if with_f:
        p.add_argument("--f", help="cusp form: catalog name or series file")
        p.add_argument(
            "--f-product",
            nargs=2,
            metavar=("A", "B"),
            help="build f as the product A*B",
        )
    p.add_argument("--g", required=True, help="fixed form g")
    p.add_argument("--case", required=True, choices=["integral", "1", "2", "3"])
    p.add_argument("--nu", type=_nonneg_int, default=0)
    p.add_argument("--n-max", type=_positive_int, default=10)
    p.add_argument("--terms", type=_positive_int, default=20000)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcadjoint",
        description="Rankin-Cohen brackets and adjoint-map special values "
        "on truncated q-expansions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="q-expansion of a catalog form")
    p.add_argument("--form", required=True)
    p.add_argument("--precision", type=_positive_int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("bracket", help="Rankin-Cohen bracket of two forms")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--nu", type=_nonneg_int, required=True)
    p.add_argument("--precision", type=_positive_int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("adjoint", help="coefficients of the adjoint image")
    _add_adjoint_flags(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_adjoint)

    pv = sub.add_parser("verify", help="reproduce the checkable consequences")
    vsub = pv.add_subparsers(dest="verify_command", required=True)

    p = vsub.add_parser("ratio", help="proportionality on a 1-dim space")
    _add_adjoint_flags(p)
    p.add_argument("--basis", help="basis form of the 1-dim target space")
    p.add_argument("--tolerance", type=float, default=1e-3)
    p.set_defaults(func=_cmd_verify_ratio)

    p = vsub.add_parser("lambda", help="eigenvalue from the first coefficient")
    _add_adjoint_flags(p, with_f=False)
    p.add_argument("--basis", help="generator f of the 1-dim space")
    p.set_defaults(func=_cmd_verify_lambda)

    p = vsub.add_parser("rewritten", help="the two positivity partial sums")
    p.add_argument("--terms", type=_nonneg_int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_verify_rewritten)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
