"""Command-line front end.

Subcommands cover the whole library surface: depth with certificates,
transform tables, closed-form predictions with an engine cross-check, the
piecewise upper bound, realizations, partition validation, the exhaustive
partition-depth search and grid sweeps to CSV.

Exit codes: 0 success, 2 malformed input, 3 domain error, 1 internal
failure.  Errors go to stderr as one JSON line with a "code" field.
JSON output is deterministic: keys sorted, big integers as decimal
strings.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import closed_forms, engine, posets
from .errors import DomainError, SchemaError
from .sequences import Sequence, beta_table, sequence_from_json_dict


def load_json_arg(raw: str, what: str):
    """Interpret an argument as inline JSON, '-' for stdin, or a file path."""
    if raw == "-":
        text = sys.stdin.read()
    elif raw.lstrip().startswith(("{", "[")):
        text = raw
    else:
        try:
            with open(raw, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise SchemaError(f"{what}: cannot read {raw!r}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{what}: invalid JSON: {e}") from None


def _load_sequence(args) -> Sequence:
    h = sequence_from_json_dict(load_json_arg(args.seq, "sequence"))
    shift = getattr(args, "shift", 0) or 0
    return h.shifted(shift) if shift else h


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    out.write("\n")


def _emit(obj, args, out, table_lines) -> None:
    if args.format == "json":
        _emit_json(obj, out)
    else:
        for line in table_lines:
            out.write(line + "\n")


def cmd_qdepth(args, out) -> None:
    result = engine.qdepth(_load_sequence(args))
    lines = [
        f"qdepth      {result.qdepth}",
        f"upper bound {result.upper_bound_used}",
    ]
    for k in sorted(result.accepted_table.entries):
        lines.append(f"  beta[{k}] = {result.accepted_table.entries[k]}")
    for r in result.rejections:
        lines.append(f"rejected d={r.d}: beta[{r.k}] = {r.beta}")
    _emit(result.to_json_dict(), args, out, lines)


def cmd_beta_table(args, out) -> None:
    table = beta_table(_load_sequence(args), args.d)
    lines = [f"d = {table.d}"]
    for k in sorted(table.entries):
        mark = "   <- first negative" if k == table.first_negative else ""
        lines.append(f"  beta[{k}] = {table.entries[k]}{mark}")
    _emit(table.to_json_dict(), args, out, lines)


_FAMILY_PREDICTORS = {
    "geometric": lambda a, b: closed_forms.PiecewisePrediction(
        closed_forms.geometric_qdepth(a, b), "ratio", True
    ),
    "arithmetic": closed_forms.arithmetic_qdepth,
    "quadratic": closed_forms.quadratic_qdepth,
}


def _family_sequence(family: str, a: int, b: int) -> Sequence:
    from .sequences import GeometricSequence

    if family == "geometric":
        return GeometricSequence(a, b)
    degree = 1 if family == "arithmetic" else 2
    return closed_forms.monomial_plus_constant(a, b, degree)


def cmd_closed_form(args, out) -> None:
    prediction = _FAMILY_PREDICTORS[args.family](args.a, args.b)
    computed = engine.qdepth_value(_family_sequence(args.family, args.a, args.b))
    obj = {
        "family": args.family,
        "a": args.a,
        "b": args.b,
        "predicted": prediction.value,
        "computed": computed,
        "agree": prediction.value == computed,
        "branch": prediction.branch,
        "exact": prediction.is_exact,
    }
    lines = [
        f"family    {args.family} (a={args.a}, b={args.b})",
        f"predicted {prediction.value}  [{prediction.branch}]",
        f"computed  {computed}",
        f"agree     {prediction.value == computed}",
    ]
    _emit(obj, args, out, lines)


def cmd_eq_bound(args, out) -> None:
    try:
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"alpha: not a rational: {args.alpha!r}") from None
    prediction = closed_forms.eq_bound(args.n, alpha)
    lines = [
        f"bound  {prediction.value}  [{prediction.branch}]",
        f"exact  {prediction.is_exact}",
    ]
    _emit(prediction.to_json_dict(), args, out, lines)


def cmd_realize(args, out) -> None:
    result = posets.realize(_load_sequence(args), layout=args.layout)
    obj = result.to_json_dict()
    if args.poset_out:
        with open(args.poset_out, "w", encoding="utf-8") as fh:
            json.dump(result.poset.to_json_dict(), fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
    if args.partition_out:
        with open(args.partition_out, "w", encoding="utf-8") as fh:
            json.dump(result.partition.to_json_dict(), fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
    lines = [
        f"m       {result.m}",
        f"d       {result.depth}",
        f"N       {result.ground_size}",
        f"b       {list(result.b)}",
        f"sets    {len(result.poset)}",
        f"sdepth  {result.partition.sdepth}",
        f"valid   {result.validation.ok}",
    ]
    _emit(obj, args, out, lines)


def cmd_verify_partition(args, out) -> None:
    poset = posets.poset_from_json_dict(load_json_arg(args.poset, "poset"))
    partition = posets.partition_from_json_dict(
        load_json_arg(args.partition, "partition"), poset
    )
    report = posets.validate_partition(partition)
    lines = [f"valid   {report.ok}"]
    if report.ok:
        lines.append(f"sdepth  {report.sdepth}")
    else:
        lines.append(f"reason  {report.reason}")
    _emit(report.to_json_dict(), args, out, lines)


def _bruteforce_cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("QDEPTH_BRUTEFORCE_CAP")
    if env is not None:
        try:
            return int(env, 10)
        except ValueError:
            raise SchemaError(f"QDEPTH_BRUTEFORCE_CAP: not an integer: {env!r}") from None
    return posets.DEFAULT_BRUTEFORCE_CAP


def cmd_sdepth(args, out) -> None:
    poset = posets.poset_from_json_dict(load_json_arg(args.poset, "poset"))
    result = posets.sdepth_bruteforce(poset, cap=_bruteforce_cap(args))
    obj = {"sdepth": result.sdepth, "partition": result.partition.to_json_dict()}
    lines = [f"sdepth  {result.sdepth}"]
    for c, d in result.partition.intervals:
        lines.append(
            f"  [{list(posets.elements_from_mask(c))}, {list(posets.elements_from_mask(d))}]"
        )
    _emit(obj, args, out, lines)


def _parse_range(raw: str, what: str) -> range:
    parts = raw.split(":")
    if len(parts) != 2:
        raise SchemaError(f"{what}: expected LO:HI, got {raw!r}")
    try:
        lo, hi = int(parts[0], 10), int(parts[1], 10)
    except ValueError:
        raise SchemaError(f"{what}: expected integers in LO:HI, got {raw!r}") from None
    if lo > hi:
        raise SchemaError(f"{what}: empty range {raw!r}")
    return range(lo, hi + 1)


def cmd_sweep(args, out) -> None:
    a_range = _parse_range(args.a_range, "a-range")
    b_range = _parse_range(args.b_range, "b-range")
    predictor = _FAMILY_PREDICTORS[args.family]
    rows = []
    for a in a_range:
        for b in b_range:
            prediction = predictor(a, b)
            computed = engine.qdepth_value(_family_sequence(args.family, a, b))
            alpha = b if args.family == "geometric" else Fraction(a, b)
            rows.append(
                [a, b, str(alpha), prediction.value, computed, prediction.value == computed]
            )
    sink = open(args.out, "w", encoding="utf-8", newline="") if args.out else out
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["a", "b", "alpha", "predicted", "computed", "agree"])
        writer.writerows(rows)
    finally:
        if args.out:
            sink.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdepth",
        description="Exact depth invariant of non-negative integer sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["json", "table"], default="json")

    def add_seq(p):
        p.add_argument("--seq", required=True, help="sequence JSON, a file path, or - for stdin")
        p.add_argument("--shift", type=int, default=0, help="apply an m-shift before computing")

    p = sub.add_parser("qdepth", help="depth with acceptance and rejection certificates")
    add_seq(p)
    add_format(p)
    p.set_defaults(handler=cmd_qdepth)

    p = sub.add_parser("beta-table", help="full transform table at one d")
    add_seq(p)
    p.add_argument("--d", type=int, required=True)
    add_format(p)
    p.set_defaults(handler=cmd_beta_table)

    p = sub.add_parser("closed-form", help="closed-form prediction against the engine")
    p.add_argument("--family", choices=sorted(_FAMILY_PREDICTORS), required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True, help="second parameter (the ratio for geometric)")
    add_format(p)
    p.set_defaults(handler=cmd_closed_form)

    p = sub.add_parser("eq-bound", help="piecewise depth bound for a*j^n + b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True, help="rational, like 15 or 22/3")
    add_format(p)
    p.set_defaults(handler=cmd_eq_bound)

    p = sub.add_parser("realize", help="realize a sequence as family level counts")
    add_seq(p)
    p.add_argument("--layout", choices=["blocks", "overlapping"], default="blocks")
    p.add_argument("--poset-out", help="also write the family JSON to this path")
    p.add_argument("--partition-out", help="also write the partition JSON to this path")
    add_format(p)
    p.set_defaults(handler=cmd_realize)

    p = sub.add_parser("verify-partition", help="validate an interval partition")
    p.add_argument("--poset", required=True, help="poset JSON, a file path, or - for stdin")
    p.add_argument("--partition", required=True, help="partition JSON, a file path, or - for stdin")
    add_format(p)
    p.set_defaults(handler=cmd_verify_partition)

    p = sub.add_parser("sdepth", help="exhaustive best-partition depth on a small family")
    p.add_argument("--poset", required=True, help="poset JSON, a file path, or - for stdin")
    p.add_argument("--cap", type=int, default=None, help="family size cap (default 24, or QDEPTH_BRUTEFORCE_CAP)")
    add_format(p)
    p.set_defaults(handler=cmd_sdepth)

    p = sub.add_parser("sweep", help="grid sweep of a closed form against the engine, as CSV")
    p.add_argument("--family", choices=sorted(_FAMILY_PREDICTORS), required=True)
    p.add_argument("--a-range", required=True, help="LO:HI inclusive")
    p.add_argument("--b-range", required=True, help="LO:HI inclusive")
    p.add_argument("--out", help="CSV path (stdout when omitted)")
    p.set_defaults(handler=cmd_sweep)

    return parser


def _error(code: str, exc: BaseException) -> None:
    sys.stderr.write(
        json.dumps({"code": code, "message": str(exc)}, sort_keys=True, separators=(",", ":"))
    )
    sys.stderr.write("\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.handler(args, sys.stdout)
    except SchemaError as e:
        _error("schema", e)
        return 2
    except DomainError as e:
        _error("domain", e)
        return 3
    except Exception as e:
        _error("internal", e)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
