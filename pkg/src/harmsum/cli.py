"""Command-line interface: ``harmsum {basis,reduce,verify,relations,count,eval}``.

Exit status: 0 on success, 1 when a verification fails, 2 on usage, parse
or table errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import tablefile
from .alphabet import AlphabetSpec
from .basis import (
    MissingLowerTable,
    WeightExceeded,
    basis_counts,
    build_relations,
    build_table,
    reduce,
    rref,
)
from .sequences import pole_bound, tau, verify_telescoping, verify_zero
from .syntax import ParseError, format_expr, format_word, parse_expr
from .words import SumExpr, WordOrder, enumerate_words, paper_fixture_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _spec(args) -> AlphabetSpec:
    if args.alphabet == "cyclotomic":
        if not args.moduli:
            raise ValueError("cyclotomic alphabet needs --moduli")
        return AlphabetSpec.cyclotomic(*(int(m) for m in args.moduli.split(",")))
    return AlphabetSpec.parse(args.alphabet)


def _order(name: str) -> WordOrder:
    if name == "default":
        return WordOrder()
    if name == "paper-fixture":
        return paper_fixture_order()
    # a file of lines "d: S[..], S[..], ..."
    lists = {}
    for line in Path(name).read_text().splitlines():
        if line.strip():
            head, rest = line.split(":", 1)
            lists[int(head)] = tuple(tablefile._words(rest))
    return WordOrder.from_lists(lists)


def _expr_arg(args) -> SumExpr:
    text = args.expr if args.expr is not None else Path(args.file).read_text()
    return parse_expr(text)


def cmd_basis(args, out) -> int:
    spec = _spec(args)
    table = build_table(spec, args.weight, _order(args.order))
    if args.out:
        tablefile.save(table, args.out)
    for line in table.report.lines():
        print(line, file=out)
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    table = tablefile.load(args.table)
    print(format_expr(reduce(_expr_arg(args), table)), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    table = tablefile.load(args.table)
    ok = True
    for d in range(1, table.max_weight + 1):
        for w in enumerate_words(table.spec, d, table.order):
            if w not in table.rules:
                continue
            good = verify_zero(SumExpr.word(w) - table.rules[w], 0, args.n_max + 1)
            ok &= good
            print(f"{'PASS' if good else 'FAIL'} rule {format_word(w)}", file=out)
        for w in table.basis.get(d, []):
            good = verify_telescoping(w, 0, args.n_max + 1)
            ok &= good
            print(f"{'PASS' if good else 'FAIL'} telescoping {format_word(w)}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_relations(args, out) -> int:
    spec = _spec(args)
    order = _order(args.order)
    lower = build_table(spec, args.weight - 1, order)
    red = rref(build_relations(spec, args.weight, lower, order))
    for i in range(len(red.rows)):
        print(f"{format_expr(red.relation(i))} = 0", file=out)
    return EXIT_OK


def cmd_count(args, out) -> int:
    for line in basis_counts(_spec(args), args.weight).lines():
        print(line, file=out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    e = _expr_arg(args)
    start = args.n_from
    if start < pole_bound(e):
        print(f"warning: window starts below the pole bound {pole_bound(e)}", file=sys.stderr)
    out.write(tau(e, start, args.n_to - start + 1).to_csv())
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="harmsum", description="basis sums of (cyclotomic) harmonic sums",
        epilog="HARMSUM_THREADS sets the number of threads used to build relation rows.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def alphabet(sp):
        sp.add_argument("--alphabet", required=True, choices=["harmonic", "alternating", "cyclotomic"])
        sp.add_argument("--moduli", help="comma-separated moduli for the cyclotomic alphabet")

    def expr(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--expr", help="expression text")
        g.add_argument("--file", help="file holding the expression")

    sp = sub.add_parser("basis", help="build a substitution table")
    alphabet(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--order", default="default", help="default, paper-fixture, or an order file")
    sp.add_argument("--out", help="write the table here")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("reduce", help="rewrite an expression over basis sums")
    sp.add_argument("--table", required=True)
    expr(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("verify", help="numerically check every rule and basis word of a table")
    sp.add_argument("--table", required=True)
    sp.add_argument("--n-max", type=int, default=100)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("relations", help="print the reduced relations of one weight")
    alphabet(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--order", default="default")
    sp.set_defaults(func=cmd_relations)

    sp = sub.add_parser("count", help="per-weight word, rank and basis counts")
    alphabet(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("eval", help="print an evaluation window as CSV")
    expr(sp)
    sp.add_argument("--from", dest="n_from", type=int, default=0)
    sp.add_argument("--to", dest="n_to", type=int, default=10)
    sp.set_defaults(func=cmd_eval)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if getattr(args, "weight", 1) < 1:
        print("error: --weight must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (ParseError, MissingLowerTable, WeightExceeded, tablefile.TableFormatError,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
