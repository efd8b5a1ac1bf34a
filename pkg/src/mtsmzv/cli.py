"""Command-line front end.

Exit codes: 0 success, 1 failed check, 2 parse error, 3 domain error
(divergent or inadmissible index), 4 evaluation at a pole.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import DivergentSeriesError, InvalidIndexError, PoleError
from .indices import format_index, parse_index
from .multitangent import bouillot_reduce, eval_monotangent_combination, eval_multitangent_direct
from .numerics import PrecisionConfig, eval_mzv, eval_mzv_split
from .symmetric import main_theorem_rhs
from .verify import (
    CheckReport,
    Z_SAMPLES,
    check_kawashima,
    check_main_theorem,
    reports_to_csv,
    reports_to_jsonl,
    run_suite,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_PARSE, EXIT_DOMAIN, EXIT_POLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _index_arg(text: str):
    try:
        return parse_index(text)
    except InvalidIndexError as exc:
        raise UsageError(str(exc)) from None


def _z_arg(text: str) -> complex:
    parts = text.strip().split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse z {text!r}; expected 're' or 're,im'")


def complex_json(z: complex) -> dict[str, str]:
    return {"re": repr(z.real), "im": repr(z.imag)}


def _cfg(args) -> PrecisionConfig:
    try:
        return PrecisionConfig(args.prec, args.cutoff, args.oracle_cutoff)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=float, default=1e-10, help="target absolute error (default 1e-10)")
    common.add_argument("--cutoff", type=int, default=2000, help="max terms of fast series (default 2000)")
    common.add_argument("--oracle-cutoff", type=int, default=100_000,
                        help="truncation N of direct-series oracles (default 100000)")
    common.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")

    parser = argparse.ArgumentParser(prog="mtsmzv", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    mzv = top.add_parser("mzv", help="multiple zeta values").add_subparsers(dest="cmd", required=True)
    p = mzv.add_parser("eval", parents=[common], help="evaluate zeta(k), 0<m_1<...<m_r")
    p.add_argument("index")

    mtgf = top.add_parser("mtgf", help="multitangent functions").add_subparsers(dest="cmd", required=True)
    p = mtgf.add_parser("reduce", parents=[common], help="reduce Psi_k to monotangents")
    p.add_argument("index")
    p.add_argument("--via", choices=("bouillot", "main"), default="bouillot",
                   help="explicit reduction, or the symmetric-MZV formula")
    p = mtgf.add_parser("eval", parents=[common], help="evaluate Psi_k(z)")
    p.add_argument("index")
    p.add_argument("--z", required=True, help="'re' or 're,im' (use --z=-0.7,1.1 for negatives)")
    p.add_argument("--oracle", action="store_true", help="also sum the bilateral series directly")

    check = top.add_parser("check", help="identity checks").add_subparsers(dest="cmd", required=True)
    p = check.add_parser("main", parents=[common], help="multitangent = rho(symmetric MZV polynomial)")
    p.add_argument("--k", required=True)
    p = check.add_parser("kawashima", parents=[common], help="Kawashima-type relation for zeta^RS")
    p.add_argument("--k", required=True)
    p.add_argument("--l", required=True)
    p = check.add_parser("suite", parents=[common], help="every check up to a weight cap")
    p.add_argument("--weight-cap", type=int, default=5)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _emit_reports(reports: list[CheckReport], fmt: str, out) -> int:
    if fmt == "json":
        out.write(reports_to_jsonl(reports))
    elif fmt == "csv":
        out.write(reports_to_csv(reports))
    else:
        for r in reports:
            out.write(r.line() + "\n")
        failed = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - failed}/{len(reports)} checks passed\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def _mzv_eval(args, out) -> int:
    k = _index_arg(args.index)
    cfg = _cfg(args)
    value = eval_mzv(k, cfg)
    # two split points of the same convolution disagree only by truncation/rounding
    estimate = max(abs(value - eval_mzv_split(k, 1 / 3, cfg)), 4e-16 * max(abs(value), 1.0))
    if args.format == "json":
        out.write(json.dumps({"index": format_index(k), "value": repr(value),
                              "error_estimate": repr(estimate)}) + "\n")
    elif args.format == "csv":
        out.write(f"index,value,error_estimate\n\"{format_index(k)}\",{value!r},{estimate!r}\n")
    else:
        out.write(f"ζ({format_index(k)}) = {value!r}  (error estimate {estimate:.1e})\n")
    return EXIT_OK


def _mtgf_reduce(args, out) -> int:
    k = _index_arg(args.index)
    cfg = _cfg(args)
    comb = bouillot_reduce(k) if args.via == "bouillot" else main_theorem_rhs(k)
    flat = comb.flatten(cfg)
    if args.format == "json":
        out.write(json.dumps({"index": format_index(k), "via": args.via,
                              "combination": json.loads(comb.to_json()),
                              "flattened": [{"s": s, "value": repr(v)} for s, v in flat.items()]}) + "\n")
    elif args.format == "csv":
        out.write("s,coefficient,value\n")
        for s, c in comb.items():
            out.write(f"{s},\"{c.format()}\",{flat[s]!r}\n")
    else:
        out.write(comb.format() + "\n")
        out.write("≈ " + " + ".join(f"{v!r}·Ψ_{s}" for s, v in flat.items()) + "\n")
    return EXIT_OK


def _mtgf_eval(args, out) -> int:
    k = _index_arg(args.index)
    z = _z_arg(args.z)
    cfg = _cfg(args)
    value = eval_monotangent_combination(bouillot_reduce(k), z, cfg)
    oracle = eval_multitangent_direct(k, z, cfg) if args.oracle else None
    if args.format == "json":
        data = {"index": format_index(k), "z": complex_json(z), "value": complex_json(value)}
        if oracle is not None:
            data["oracle"] = {"value": complex_json(oracle.value), "bound": repr(oracle.bound),
                              "cutoff": oracle.cutoff}
        out.write(json.dumps(data) + "\n")
    elif args.format == "csv":
        out.write("route,re,im,bound\n")
        out.write(f"reduction,{value.real!r},{value.imag!r},\n")
        if oracle is not None:
            out.write(f"direct,{oracle.value.real!r},{oracle.value.imag!r},{oracle.bound!r}\n")
    else:
        out.write(f"Ψ_{{{format_index(k)}}}({_fmt_complex(z)}) = {_fmt_complex(value)}\n")
        if oracle is not None:
            out.write(f"direct series (N={oracle.cutoff}) = {_fmt_complex(oracle.value)}"
                      f"  bound {oracle.bound:.1e}  difference {abs(oracle.value - value):.1e}\n")
    return EXIT_OK


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r} {'+' if z.imag >= 0 else '-'} {abs(z.imag)!r}i"


def _check(args, out) -> int:
    cfg = _cfg(args)
    if args.cmd == "main":
        reports = [check_main_theorem(_index_arg(args.k), Z_SAMPLES, cfg)]
    elif args.cmd == "kawashima":
        reports = [check_kawashima(_index_arg(args.k), _index_arg(args.l), cfg)]
    else:
        if args.weight_cap < 2:
            raise UsageError("--weight-cap must be at least 2")
        reports = run_suite(args.weight_cap, cfg, workers=args.workers)
    return _emit_reports(reports, args.format, out)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    handlers = {("mzv", "eval"): _mzv_eval, ("mtgf", "reduce"): _mtgf_reduce,
                ("mtgf", "eval"): _mtgf_eval}
    handler = handlers.get((args.group, args.cmd), _check)
    try:
        return handler(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (InvalidIndexError, DivergentSeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
