"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 deviation found under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import oracle, paircorr, patterncount
from ._intmath import format_fraction, parse_fraction
from .champernowne import digits
from .shifts import KINDS, default_width, reference_sequence

GUARD_BITS = 8
THEOREM1_MAX_E = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc


def _sample_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=KINDS, default="champernowne")
    p.add_argument("--N", type=int, required=True, help="number of points")
    p.add_argument("--w", type=int, default=None, help="bit width (default: log2 N + 24, at least 32)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--parameter", default=None, help="Kronecker numerator or 'golden'")
    p.add_argument("--skip-squares", action="store_true", help="sqrt_n over non-square n only")


def _output_args(p: argparse.ArgumentParser, default="csv") -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default)
    p.add_argument("--output", default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="champpc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("digits", help="slice of the digit stream")
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--len", type=int, required=True, dest="length")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--output", default=None)

    p = sub.add_parser("shifts", help="dump a sequence sample")
    _sample_args(p)
    _output_args(p)

    p = sub.add_parser("ppc", help="pair-correlation statistic at one s")
    _sample_args(p)
    p.add_argument("--s", type=_fraction, default=Fraction(1))
    _output_args(p)

    p = sub.add_parser("weak-ppc", help="weak pair-correlation statistic")
    _sample_args(p)
    p.add_argument("--s", type=_fraction, default=Fraction(1))
    p.add_argument("--beta", type=_fraction, default=Fraction(1, 2))
    _output_args(p)

    p = sub.add_parser("curve", help="statistic over an ascending s grid")
    _sample_args(p)
    p.add_argument("--s-grid", required=True, help="comma-separated rationals, e.g. 1/2,1,2")
    _output_args(p)

    p = sub.add_parser("formulas", help="counting formulas over a (d, e) grid")
    p.add_argument("--d", type=_int_list, required=True, help="comma-separated word lengths")
    p.add_argument("--e", type=_int_list, required=True, help="comma-separated overlaps")
    _output_args(p, default="json")

    p = sub.add_parser("verify", help="formulas against brute-force block scans")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--scope", choices=oracle.SCOPES, default="with_context")
    p.add_argument("--strict", action="store_true", help="exit 2 on any logged deviation")
    p.add_argument("--bits-out", default=None, help="also write the raw block bits here")
    _output_args(p, default="json")

    p = sub.add_parser("theorem1", help="preset d = 2^e, N = 2^(d+e), s = 1")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--w", type=int, default=None)
    _output_args(p, default="json")
    return parser


def _width(args) -> int:
    w = args.w if args.w is not None else default_width(args.N)
    need = (args.N - 1).bit_length() + GUARD_BITS
    if w < need:
        raise UsageError(f"width {w} too small for N={args.N}; need w >= {need}")
    return w


def _sample(args):
    if args.N < 1:
        raise UsageError("N must be >= 1")
    parameter = args.parameter
    if parameter is not None and parameter != "golden":
        parameter = int(parameter)
    return reference_sequence(
        args.kind,
        args.N,
        _width(args),
        seed=args.seed,
        parameter=parameter,
        skip_squares=args.skip_squares,
    )


def _rows_csv(rows: list[dict]) -> str:
    header = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_digits(args) -> tuple[str, int]:
    if args.start < 1 or args.length < 0:
        raise UsageError("need --start >= 1 and --len >= 0")
    ds = digits(args.start, args.length, args.base)
    sep = "" if args.base <= 10 else ","
    return sep.join(map(str, ds)) + "\n", 0


def _sample_header(sample) -> dict:
    return {
        "kind": sample.kind,
        "N": sample.N,
        "w": sample.width,
        "seed": sample.seed,
        "parameter": None if sample.parameter is None else str(sample.parameter),
        "variant": sample.variant,
    }


def _cmd_shifts(args) -> tuple[str, int]:
    sample = _sample(args)
    head = _sample_header(sample)
    if args.format == "json":
        return _json({**head, "values": [str(v) for v in sample.values]}), 0
    meta = " ".join(f"{k}={'' if v is None else v}" for k, v in head.items())
    lines = [f"# {meta}", "n,numerator"]
    lines += [f"{n},{v}" for n, v in enumerate(sample.values, start=1)]
    return "\n".join(lines) + "\n", 0


def _emit_results(args, sample, results) -> str:
    rows = [r.as_row() for r in results]
    if args.format == "json":
        return _json({"sample": _sample_header(sample), "rows": rows})
    return _rows_csv(rows)


def _cmd_ppc(args):
    sample = _sample(args)
    return _emit_results(args, sample, [paircorr.ppc_statistic(sample, args.s)]), 0


def _cmd_weak_ppc(args):
    sample = _sample(args)
    return _emit_results(args, sample, [paircorr.weak_ppc_statistic(sample, args.s, args.beta)]), 0


def _cmd_curve(args):
    grid = [_fraction(x) for x in args.s_grid.split(",") if x.strip()]
    sample = _sample(args)
    return _emit_results(args, sample, paircorr.ppc_curve(sample, grid)), 0


def _cmd_formulas(args):
    rows = []
    for d in args.d:
        for e in args.e:
            try:
                params = patterncount.BlockParams(d, e)
            except ValueError:
                continue
            rows += [fv.as_dict() for fv in patterncount.formula_table(params)]
    if not rows:
        raise UsageError("no valid (d, e) pair in the grid (need e >= 1, d >= e + 2)")
    if args.format == "json":
        return _json({"rows": rows}), 0
    for row in rows:
        row.setdefault("j", "")
        row["flags"] = ";".join(row.get("flags", []))
    header = ["name", "d", "e", "j", "form", "value", "flags"]
    return _rows_csv([{h: row.get(h, "") for h in header} for row in rows]), 0


def _cmd_verify(args):
    report = oracle.verify(args.d, args.e, args.scope)
    if args.bits_out:
        with open(args.bits_out, "wb") as fh:
            fh.write(oracle.build_block_bits(args.d).tobytes())
    status = 2 if args.strict and report.deviations else 0
    if args.format == "json":
        return _json(report.as_dict()), status
    return _rows_csv(report.rows), status


def theorem1_report(e: int, w: int | None = None) -> dict:
    """Fixed experiment: ``d = 2**e``, ``N = 2**(d+e)``, ``s = 1``."""
    if not 2 <= e <= THEOREM1_MAX_E:
        raise UsageError(f"theorem1 supports 2 <= e <= {THEOREM1_MAX_E} (N = 2^37 at e = 5)")
    d = 1 << e
    N = 1 << (d + e)
    w = w if w is not None else default_width(N)
    if w < d + e + GUARD_BITS:
        raise UsageError(f"width {w} too small; need w >= {d + e + GUARD_BITS}")
    sample = reference_sequence("champernowne", N, w)
    res = paircorr.ppc_statistic(sample, 1)
    main = patterncount.main_pair_count((d, e)).value
    return {
        "e": e,
        "d": d,
        "N": N,
        "w": w,
        "s": "1",
        "count_lower": res.count_lower,
        "count_upper": res.count_upper,
        "F_lower": format_fraction(res.normalized_lower),
        "F_upper": format_fraction(res.normalized_upper),
        "main_pair_count": str(main),
        "main_pair_count_over_N": format_fraction(Fraction(main, N)),
    }


def _cmd_theorem1(args):
    row = theorem1_report(args.e, args.w)
    if args.format == "json":
        return _json(row), 0
    return _rows_csv([row]), 0


COMMANDS = {
    "digits": _cmd_digits,
    "shifts": _cmd_shifts,
    "ppc": _cmd_ppc,
    "weak-ppc": _cmd_weak_ppc,
    "curve": _cmd_curve,
    "formulas": _cmd_formulas,
    "verify": _cmd_verify,
    "theorem1": _cmd_theorem1,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, status = COMMANDS[args.command](args)
    except (UsageError, ValueError, argparse.ArgumentTypeError) as exc:
        sys.stderr.write(f"champpc {args.command}: error: {exc}\n")
        return 1
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
