"""Command-line front end.

    rademacher coeff --h 0 --k 1 --l 1 --n 3 --exact
    rademacher limits --h 1 --k 2 --l 1
    rademacher encounters --l 1..4 --nmax 300 --format csv
    rademacher plot --h 0 --k 1 --l 1 --range 1..100 --out fig1.svg

Exit status: 0 on success, 1 for a usage or parameter error, 2 when a
computation or validation fails.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional

import gmpy2

from . import reports
from .analysis import (
    close_encounter,
    congruence_scan,
    extrema_ratios,
    find_extrema,
    fit_topdown,
    table_24l,
)
from .cache import ENV_VAR, default_cache_dir
from .engine import EXACT, FLOAT, ParameterError, coeff, coeff_sequence, validate_float_backend
from .limits import DEFAULT_PRECISION, rademacher_limit
from .oracle import OracleError, oracle_equivalence, reconstruct_check
from .svg import EmptyChartError, line_chart

FORMATS = ("text", "csv", "jsonl", "svg")


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """A validation subcommand ran to completion and found a failure."""

    def __init__(self, output: str):
        super().__init__("validation failed")
        self.output = output


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_span(text: str) -> tuple[int, int]:
    """'7' -> (7, 7); 'a..b' -> (a, b)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None


def _span_values(span: tuple[int, int], what: str) -> range:
    a, b = span
    if b < a:
        raise UsageError(f"empty {what} range {a}..{b}")
    return range(a, b + 1)


# -- output -------------------------------------------------------------------


def _emit(args, payload: str) -> None:
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(payload)


def _render(args, records: list[dict], text: Callable[[], str], svg: Optional[Callable[[], str]] = None) -> str:
    if args.format == "jsonl":
        return reports.to_jsonl(records)
    if args.format == "csv":
        return reports.to_csv(records)
    if args.format == "svg":
        if svg is None:
            raise UsageError(f"--format svg is not available for '{args.command}'")
        return svg()
    return text()


def _mode(args) -> Optional[str]:
    return EXACT if args.exact else args.mode


def _cache(args):
    if args.no_cache:
        return None
    return Path(args.cache_dir) if args.cache_dir else default_cache_dir()


def _value_text(v) -> str:
    if v.exact is not None:
        return reports.exact_text(v.exact)
    re = reports.format_sig(v.numeric.real, v.digits)
    if v.k <= 2:
        return re
    im = v.numeric.imag
    return f"{re} {'-' if im < 0 else '+'} {reports.format_sig(abs(im), v.digits)}i"


# -- subcommands --------------------------------------------------------------


def cmd_coeff(args) -> str:
    if args.n is None or args.l is None:
        raise UsageError("coeff needs --l and --n")
    ls = _span_values(args.l, "l")
    vals = [coeff(args.h, args.k, l, args.n, _mode(args), args.prec, cache_dir=_cache(args)) for l in ls]
    return _render(args, [reports.coeff_record(v) for v in vals],
                   lambda: "".join(_value_text(v) + "\n" for v in vals))


def _scan_span(args) -> tuple[int, int]:
    if args.range is not None:
        return args.range
    if args.nmax is not None:
        return 1, args.nmax
    raise UsageError(f"{args.command} needs --range a..b or --nmax")


def _sequence(args):
    if args.l is None or args.l[0] != args.l[1]:
        raise UsageError(f"{args.command} needs a single --l")
    a, b = _scan_span(args)
    return coeff_sequence(args.h, args.k, args.l[0], a, b, _mode(args), args.prec, cache_dir=_cache(args))


def _chart(args, seq) -> str:
    h, k, l = args.h, args.k, seq[0].l
    R = rademacher_limit(h, k, l, 128).value.real
    pts = [(v.N, float(v.numeric.real)) for v in seq]
    split = args.split if args.split is not None else k == 2
    if split and k == 2:
        series = [("N even", [p for p in pts if p[0] % 2 == 0]), ("N odd", [p for p in pts if p[0] % 2 == 1])]
    else:
        series = [("", pts)]
    return line_chart(
        series,
        reference=float(R),
        reference_label=f"Re R = {reports.format_sig(R, 12)}",
        title=f"C_{{{h},{k},{l}}}(N), N = {seq[0].N}..{seq[-1].N}",
        x_label="N",
        y_label=f"C_{{{h},{k},{l}}}(N)",
    )


def cmd_scan(args) -> str:
    seq = _sequence(args)
    return _render(args, [reports.coeff_record(v) for v in seq],
                   lambda: "".join(f"{v.N} {_value_text(v)}\n" for v in seq),
                   lambda: _chart(args, seq))


def cmd_plot(args) -> str:
    args.format = "svg"
    return _chart(args, _sequence(args))


def cmd_limits(args) -> str:
    if args.l is None:
        raise UsageError("limits needs --l")
    bits = args.prec or DEFAULT_PRECISION
    vals = [rademacher_limit(args.h, args.k, l, bits) for l in _span_values(args.l, "l")]

    def text():
        out = []
        for lv in vals:
            re = reports.format_sig(lv.value.real, lv.digits)
            if args.k > 2:
                im = lv.value.imag
                re += f" {'-' if im < 0 else '+'} {reports.format_sig(abs(im), lv.digits)}i"
            out.append(re if len(vals) == 1 else f"{lv.l} {re}")
        return "\n".join(out) + "\n"

    return _render(args, [reports.limit_record(lv) for lv in vals], text)


def cmd_encounters(args) -> str:
    if args.l is None:
        raise UsageError("encounters needs --l")
    n_max = args.nmax or 1000
    bits = args.prec or DEFAULT_PRECISION
    rows = [close_encounter(args.h, args.k, l, n_max, bits, _mode(args), cache_dir=_cache(args))
            for l in _span_values(args.l, "l")]

    def text():
        lines = [f"{'l':>3} {'B':>5} {'|C-R|':>14} {'|C/R|':>14}"]
        for r in rows:
            lines.append(f"{r.l:>3} {r.B:>5} {reports.format_sig(r.distance, 7):>14} "
                         f"{reports.format_sig(r.ratio, 9):>14}")
        return "\n".join(lines) + "\n"

    return _render(args, [reports.encounter_record(r) for r in rows], text)


def cmd_table24l(args) -> str:
    a, b = args.l if args.l is not None else (1, 12)
    if a < 1 or b < a:
        raise UsageError(f"invalid l range {a}..{b}")
    bits = args.prec or DEFAULT_PRECISION
    rows = [r for r in table_24l(b, bits, cache_dir=_cache(args)) if r.l >= a]

    def text():
        lines = [f"{'l':>3} {'N':>5} {'|C-R|':>16} {'|C/R|':>16}"]
        for r in rows:
            lines.append(f"{r.l:>3} {r.N:>5} {reports.format_sig(r.distance, 10):>16} "
                         f"{reports.format_sig(r.ratio, 11):>16}")
        return "\n".join(lines) + "\n"

    return _render(args, [reports.table24_record(r) for r in rows], text)


def cmd_extrema(args) -> str:
    if args.l is None or args.l[0] != args.l[1]:
        raise UsageError("extrema needs a single --l")
    if args.nmax is None:
        raise UsageError("extrema needs --nmax")
    report = find_extrema(args.h, args.k, args.l[0], args.nmax, args.stride, _mode(args), args.prec,
                          cache_dir=_cache(args))
    ratios = extrema_ratios(report)
    residues = []
    if args.modulus:
        windows = args.window or [report.n_range]
        residues = congruence_scan(report, args.modulus, windows)
    rec = reports.extrema_record(report, ratios, residues)

    def text():
        lines = [
            f"maxima: {' '.join(map(str, report.max_positions))}",
            f"minima: {' '.join(map(str, report.min_positions))}",
            "ratios: " + " ".join("undefined" if q is None else q["value"] for q in rec["ratios"]),
        ]
        for w in residues:
            lines.append(f"window {w.window[0]}..{w.window[1]} mod {w.modulus}: "
                         f"maxima {list(w.max_residues)} minima {list(w.min_residues)}")
        return "\n".join(lines) + "\n"

    if args.format == "csv":
        return reports.extrema_csv(rec)
    return _render(args, [rec], text)


def cmd_topdown(args) -> str:
    if args.r is None:
        raise UsageError("topdown needs --r")
    fits = [fit_topdown(args.h, args.k, r, args.residue) for r in _span_values(args.r, "r")]

    def text():
        return "".join(f"r={f.r} residue={f.residue}: {'verified' if f.ok else 'FAILED'}: {f.expression()}\n"
                       for f in fits)

    payload = _render(args, [reports.topdown_record(f) for f in fits], text)
    if not all(f.ok for f in fits):
        raise CheckFailed(payload)
    return payload


def cmd_reconstruct(args) -> str:
    if args.n is None:
        raise UsageError("reconstruct needs --n")
    bits = args.prec or 256
    m = args.m if args.m is not None else 30
    err = reconstruct_check(args.n, m, bits)
    tol = gmpy2.mpfr(2) ** (-(bits // 2))
    payload = _render(args, [reports.reconstruct_record(args.n, m, bits, err)],
                      lambda: f"max |sum - p_N(n)| over n <= {m}: {reports.format_sig(err, 6)}\n")
    if err > tol:
        raise CheckFailed(payload)
    return payload


def cmd_validate(args) -> str:
    if args.nmax is None:
        raise UsageError("validate needs --nmax")
    bad = oracle_equivalence(args.h, args.k, args.nmax)
    audit = None
    if args.mode == FLOAT or args.prec is not None:
        audit = validate_float_backend(args.h, args.k, args.nmax, args.prec)
    rec = reports.validate_record(args.h, args.k, args.nmax, not bad, bad, audit)

    def text():
        lines = [f"oracle equivalence: {rec['oracle_equivalence']}"]
        if bad:
            lines.append(f"first mismatch at (N, r) = {bad[0]}")
        if audit is not None:
            lines.append(f"float audit ({audit.precision_bits} bits): {'PASS' if audit.ok else 'FAIL'}, "
                         f"{rec['float_audit']['digits_agreement']} digits agreement")
        return "\n".join(lines) + "\n"

    payload = _render(args, [rec], text)
    if bad or (audit is not None and not audit.ok):
        raise CheckFailed(payload)
    return payload


COMMANDS = {
    "coeff": (cmd_coeff, "one coefficient C_{h,k,l}(N) (a range of l allowed)"),
    "scan": (cmd_scan, "C_{h,k,l}(N) over a range of N"),
    "limits": (cmd_limits, "the conjectured limits R_{h,k,l}"),
    "encounters": (cmd_encounters, "close encounters B_{h,k,l} with the limit"),
    "table24l": (cmd_table24l, "C_{0,1,l}(24 l) against R_{0,1,l}"),
    "extrema": (cmd_extrema, "local extrema, their ratios and residues"),
    "topdown": (cmd_topdown, "closed forms for C_{h,k,floor(N/k)-r}(N)"),
    "reconstruct": (cmd_reconstruct, "check the decomposition against partition counts"),
    "validate": (cmd_validate, "engine against the Taylor oracle (and float audit)"),
    "plot": (cmd_plot, "SVG chart of C_{h,k,l}(N) with the line y = Re R"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--h", type=int, default=0)
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--l", type=parse_span, help="integer or range a..b")
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int, help="number of series coefficients (reconstruct)")
    common.add_argument("--nmax", type=int)
    common.add_argument("--range", type=parse_span, help="N range a..b")
    common.add_argument("--r", type=parse_span, help="depth or range of depths (topdown)")
    common.add_argument("--residue", type=int)
    common.add_argument("--stride", type=int, default=1)
    common.add_argument("--modulus", type=int)
    common.add_argument("--window", type=parse_span, action="append", help="inclusive N window (repeatable)")
    common.add_argument("--mode", choices=(EXACT, FLOAT))
    common.add_argument("--exact", action="store_true", help="same as --mode exact")
    common.add_argument("--prec", type=int, help="precision in bits")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--cache-dir", help=f"triangle cache (default ${ENV_VAR} or ./.rademacher-cache)")
    common.add_argument("--no-cache", action="store_true")
    split = common.add_mutually_exclusive_group()
    split.add_argument("--split", dest="split", action="store_true", default=None,
                       help="plot even and odd N separately (default for k = 2)")
    split.add_argument("--no-split", dest="split", action="store_false")

    parser = _Parser(prog="rademacher", description="Rademacher coefficients of the partition generating function.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.exact and args.mode == FLOAT:
        print("rademacher: error: --exact conflicts with --mode float", file=sys.stderr)
        return 1
    func = COMMANDS[args.command][0]
    try:
        payload = func(args)
    except CheckFailed as exc:
        _emit(args, exc.output)
        return 2
    except (UsageError, ParameterError, EmptyChartError, ValueError) as exc:
        print(f"rademacher {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (OracleError, ArithmeticError) as exc:
        print(f"rademacher {args.command}: computation failed: {exc}", file=sys.stderr)
        return 2
    _emit(args, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
