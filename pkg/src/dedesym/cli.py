"""Command-line interface: exact values in text or JSON, plus the check suite.

Exit codes: 0 success, 1 check/threshold failure, 2 usage or syntax error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, classical, equidist, hecke
from .classical import IntegerMatrix
from .cocycle import GroupElement, omega
from .field import FieldElement, embed_float, parse_element
from .hecke import Word, make_group


def _fraction_json(value: Fraction, q: int, **extra):
    payload = {"exact": str(value), "float": float(value), "q": q}
    payload.update(extra)
    return payload


def _field_json(value: FieldElement, **extra):
    payload = {
        "exact": str(value),
        "float": embed_float(value),
        "q": value.q,
    }
    payload.update(extra)
    return payload


def _emit(args, text_value, payload):
    if getattr(args, "json", False):
        print(json.dumps(payload))
    else:
        print(text_value)


def _parse_matrix(q: int, text: str) -> GroupElement:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"matrix needs 4 comma-separated entries, got {len(parts)}")
    entries = [parse_element(q, p) for p in parts]
    return GroupElement(*entries)


def _parse_row(q: int, text: str):
    parts = text.split(";")
    if len(parts) != 2:
        raise ValueError("row syntax is '<c>;<d>'")
    return parse_element(q, parts[0]), parse_element(q, parts[1])


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------

def cmd_sum(args) -> int:
    algo = "naive" if args.naive else "fast"
    fn = classical.dedekind_sum_naive if args.naive else classical.dedekind_sum_fast
    value = fn(args.a, args.c)
    _emit(args, str(value), _fraction_json(value, 3, algorithm=algo))
    return 0


def cmd_phi(args) -> int:
    m = IntegerMatrix(args.a, args.b, args.c, args.d)
    value = classical.rademacher_phi(m)
    _emit(args, str(value), _fraction_json(value, 3, algorithm="table"))
    return 0


def cmd_omega(args) -> int:
    g = _parse_matrix(args.q, args.g)
    h = _parse_matrix(args.q, args.h)
    value = omega(g, h)
    _emit(args, str(value), _fraction_json(value, args.q))
    return 0


def cmd_symbol(args) -> int:
    group = make_group(args.q)
    if (args.word is None) == (args.row is None):
        raise ValueError("give exactly one of --word or --row")
    values = {}
    if args.word is not None:
        word = Word.parse(args.word)
        if args.algorithm in ("a", "both"):
            values["a"] = hecke.symbol_from_word(word, group)
        if args.algorithm in ("b", "both"):
            m = hecke.word_to_matrix(word, group)
            values["b"] = hecke.symbol_descent(m.row(), group)
    else:
        row = _parse_row(args.q, args.row)
        if args.algorithm == "a":
            raise ValueError("algorithm a needs --word; rows reduce via algorithm b")
        values["b"] = hecke.symbol_descent(row, group)
    agree = len(set(map(str, values.values()))) == 1
    if not agree:
        print("algorithms_agree: false", file=sys.stderr)
        return 1
    value = next(iter(values.values()))
    coords = [str(c) for c in value.coords]
    extra = {"coords": coords, "algorithm": args.algorithm}
    if args.algorithm == "both":
        extra["algorithms_agree"] = True
    if args.json:
        print(json.dumps(_field_json(value, **extra)))
    else:
        print(str(value))
        if args.algorithm == "both":
            print("algorithms_agree: true")
    return 0


def cmd_member(args) -> int:
    group = make_group(args.q)
    m = _parse_matrix(args.q, args.matrix)
    word = hecke.membership(m, group, max_steps=args.max_steps)
    if args.json:
        print(json.dumps({"q": args.q, "member": word is not None,
                          "word": None if word is None else str(word)}))
    else:
        print("not-member" if word is None else str(word))
    return 0


def cmd_reduce(args) -> int:
    group = make_group(args.q)
    row = _parse_row(args.q, args.row)
    trace = hecke.rosen_reduce(row, group, max_steps=args.max_steps)
    steps = [
        {
            "translate": s.translate,
            "row": [str(s.row_after_translation[0]), str(s.row_after_translation[1])],
            "swap": s.swapped,
        }
        for s in trace.steps
    ]
    if args.json:
        print(json.dumps({
            "q": args.q,
            "start": [str(trace.start[0]), str(trace.start[1])],
            "steps": steps,
            "terminal": [str(trace.terminal[0]), str(trace.terminal[1])],
        }))
    else:
        print(f"start: ({trace.start[0]}; {trace.start[1]})")
        for s in steps:
            move = f"translate n={s['translate']} -> ({s['row'][0]}; {s['row'][1]})"
            if s["swap"]:
                move += " then swap"
            print(move)
        print(f"terminal: ({trace.terminal[0]}; {trace.terminal[1]})")
    return 0


def cmd_equidist(args) -> int:
    freqs = [int(t) for t in args.n.split(",")] if args.n else [1, 2, 3]
    checkpoints = (
        [float(t) for t in args.checkpoints.split(",")]
        if args.checkpoints
        else [x for x in (200, 400, 800, 1500) if x <= args.xmax] or [args.xmax]
    )
    group = None if args.q == 3 else make_group(args.q)
    table = equidist.enumerate_cosets(args.q, args.xmax, group=group,
                                      max_depth=args.max_depth, jobs=args.jobs)
    print(f"q={args.q} X={args.xmax}: {len(table)} double cosets")
    for x in checkpoints:
        print(f"  D*(X<={x:g}) = {equidist.discrepancy(table, x):.5f}"
              f"   |D_X| = {int(weylcount(table, x))}")
    series_list = []
    fit_xs = fit_points(checkpoints, args.xmax)
    for n in freqs:
        if n == 0:
            continue
        series = equidist.weyl_series(table, n, fit_xs)
        series_list.append(series)
        print(f"  |W_{n}(X)| ~ {series.constant:.3f} * X^{series.exponent:.3f}")
    counts = equidist.count_series(table, fit_xs)
    print(f"  |D_X| ~ {counts.constant:.4f} * X^{counts.exponent:.3f}"
          f"  (V/4pi = {float(Fraction(args.q - 2, 4 * args.q)):.4f})")
    if args.csv:
        equidist.export_table_csv(table, args.csv)
        print(f"  wrote table to {args.csv}")
    if args.series_csv:
        equidist.export_series_csv(series_list + [counts], args.series_csv)
        print(f"  wrote series to {args.series_csv}")
    if args.strict:
        results = acceptance.equidist_thresholds(table, checkpoints, fit_xs, freqs)
        bad = [detail for ok, detail in results if not ok]
        for ok, detail in results:
            print(f"  [{'ok' if ok else 'VIOLATION'}] {detail}")
        if bad:
            return 1
    return 0


def weylcount(table, x) -> int:
    return int(equidist.weyl_sum(table, 0, x).real)


def fit_points(checkpoints, xmax):
    pts = sorted(set(list(checkpoints) + [xmax]))
    if len(pts) >= 5:
        return pts
    lo = min(pts[0], xmax / 8)
    return sorted(set(pts + [lo + k * (xmax - lo) / 5 for k in range(6)]))


def cmd_check(args) -> int:
    ok = acceptance.run_suite(args.suite, quick=args.quick)
    return 0 if ok else 1


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dedesym",
        description="Exact Dedekind sums, the SL2 branch cocycle, and Hecke "
                    "triangle group Dedekind symbols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="classical Dedekind sum s(a, c)")
    p.add_argument("a", type=int)
    p.add_argument("c", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--naive", action="store_true", help="direct-sum evaluation")
    mode.add_argument("--fast", action="store_true", help="descent evaluation (default)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_sum)

    p = sub.add_parser("phi", help="Rademacher phi of an integer matrix")
    for name in "abcd":
        p.add_argument(name, type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_phi)

    p = sub.add_parser("omega", help="the quarter-integer 2-cocycle omega(g, h)")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--g", required=True, help="matrix 'a,b,c,d' in field literals")
    p.add_argument("--h", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_omega)

    p = sub.add_parser("symbol", help="Dedekind symbol of a word or row")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--word", help="generator word, e.g. 'i,t^2,i,t^-1'")
    p.add_argument("--row", help="bottom row '<c>;<d>' in normalized coordinates")
    p.add_argument("--algorithm", choices=("a", "b", "both"), default="both")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_symbol)

    p = sub.add_parser("member", help="decompose a raw matrix into generators")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--matrix", required=True, help="matrix 'a,b,c,d'")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("reduce", help="Rosen reduction trace of a row")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--row", required=True)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("equidist", help="equidistribution statistics mod 1")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--n", help="comma-separated frequencies, default 1,2,3")
    p.add_argument("--checkpoints", help="comma-separated X cutoffs")
    p.add_argument("--csv", help="write the coset table to this path")
    p.add_argument("--series-csv", help="write the Weyl series to this path")
    p.add_argument("--strict", action="store_true",
                   help="nonzero exit if a threshold is violated")
    p.add_argument("--max-depth", type=int, default=256)
    p.add_argument("--jobs", type=int, default=1,
                   help="partition the q=3 sieve across worker processes")
    p.set_defaults(fn=cmd_equidist)

    p = sub.add_parser("check", help="run the acceptance criteria")
    p.add_argument("--suite", choices=sorted(acceptance.SUITES), default="all")
    p.add_argument("--quick", action="store_true", help="reduced smoke sizes")
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, hecke.TrivialCosetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except hecke.ReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
