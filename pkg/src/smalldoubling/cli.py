"""Command-line entry point.

Subcommands: construct, square, classify, verify, order, axioms.
Exit codes: 0 success/pass, 1 counterexample or failed property, 2 usage or
input error, 3 vacuous sweep.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .axioms import PROPERTIES, run_axioms
from .group import element_to_json, format_element, parse_element
from .order import Order, compare, standard_key
from .progressions import (
    ConstructionError,
    construct_general,
    construct_two_progressions,
    recognize_progression_plus_point,
    recognize_structure,
)
from .search import THEOREM_IDS, BoxSpec, BudgetExceeded, run_verification
from .subsetfile import SubsetFileError, emit_subset, parse_subset
from .sumset import doubling_report, product_set

EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _element(text: str):
    try:
        return parse_element(text)
    except (ValueError, OverflowError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = _Parser(prog="smalldoubling", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("construct", parents=[common], help="build a two-progression set")
    p.add_argument("--a", type=_element, required=True)
    p.add_argument("--b", type=_element, required=True)
    p.add_argument("--c", type=_element, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--general", action="store_true", help="allow [b,a] = c^±v with v <= i+j")
    p.add_argument("--out", help="write the subset file here instead of stdout")

    p = sub.add_parser("square", parents=[common], help="|S|, |S^2| and flags of a subset file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--dump", action="store_true", help="list every element of S^2")

    p = sub.add_parser("classify", parents=[common], help="recognize an extremal structure")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("verify", parents=[common], help="sweep a statement over a box")
    p.add_argument("--theorem", choices=THEOREM_IDS, required=True)
    p.add_argument("--gen-bound", type=int, required=True)
    p.add_argument("--comm-bound", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=2, help="number of generators (default 2)")
    p.add_argument("--budget", type=int, default=None,
                   help="max subsets (default 10^6 exhaustive, 10^5 sampled)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--sampled", action="store_true")
    mode.add_argument("--constructed", action="store_true",
                      help="constructed and perturbed extremal-shaped instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reversed-order", action="store_true",
                   help="use only the reversed order (default: both for L2_1, T2_5)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("order", parents=[common], help="order queries")
    order_sub = p.add_subparsers(dest="order_command", parser_class=_Parser)
    order_sub.required = True
    q = order_sub.add_parser("compare", parents=[common])
    q.add_argument("g", type=_element)
    q.add_argument("h", type=_element)
    q.add_argument("--reversed", action="store_true")

    p = sub.add_parser("axioms", parents=[common], help="randomized group/order property suites")
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--only", choices=tuple(PROPERTIES), action="append")
    return parser


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _cmd_construct(args) -> int:
    if args.general:
        built = construct_general(args.a, args.b, args.c, args.i, args.j)
        S, predicted, v = built.subset, built.predicted_square, built.v
    else:
        S = construct_two_progressions(args.a, args.b, args.c, args.i, args.j)
        predicted, v = 3 * len(S) - 2, 1
    actual = len(product_set(S))
    if args.json:
        _print_json({
            "subset": [element_to_json(g) for g in S],
            "k": len(S),
            "v": v,
            "predicted_square": predicted,
            "actual_square": actual,
        })
    else:
        text = emit_subset(S, [f"k={len(S)} v={v}", f"predicted_square={predicted}", f"actual_square={actual}"])
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            print(f"wrote {args.out}: k={len(S)} predicted_square={predicted} actual_square={actual}")
        else:
            sys.stdout.write(text)
    return 0 if predicted == actual else 1


def _cmd_square(args) -> int:
    S = parse_subset(args.infile)
    report = doubling_report(S)
    listing = sorted(product_set(S), key=standard_key) if args.dump else None
    if args.json:
        out = report.to_dict()
        if listing is not None:
            out["square"] = [format_element(g) for g in listing]
        _print_json(out)
        return 0
    print(f"k={report.k}")
    print(f"square={report.square_size}")
    print(f"abelian={str(report.is_generated_abelian).lower()}")
    print(f"cna={str(report.is_cna).lower()}")
    marks = " ".join(f"{name}:{'<=>'[sign + 1]}" for name, sign in report.alpha_beta_class.items())
    print(f"landmarks {marks}")
    for g in listing or ():
        print(format_element(g))
    return 0


def _cmd_classify(args) -> int:
    S = parse_subset(args.infile)
    d = None
    if len(S) >= 3:
        d = recognize_structure(S)
    if d is None and len(S) >= 4:
        d = recognize_progression_plus_point(S)
    if d is None:
        print(json.dumps(None) if args.json else "none")
    else:
        _print_json(d.to_dict())
    return 0


def _cmd_verify(args) -> int:
    if args.sampled:
        mode = "sampled"
    elif args.constructed:
        mode = "constructed"
    else:
        mode = "exhaustive"
    budget = args.budget or (10**6 if mode == "exhaustive" else 10**5)
    box = BoxSpec(args.gen_bound, args.comm_bound, args.k, budget, args.seed, args.n)
    orders = (Order.REVERSED,) if args.reversed_order else None
    report = run_verification(args.theorem, box, mode, orders, max(1, args.jobs))
    print(report.to_json())
    if not args.json:
        print(report.csv_row())
    return report.exit_code


def _cmd_order(args) -> int:
    result = compare(args.g, args.h, Order.REVERSED if args.reversed else Order.STANDARD)
    print(json.dumps(result.name) if args.json else result.name)
    return 0


def _cmd_axioms(args) -> int:
    results = run_axioms(args.samples, args.seed, args.n, args.only)
    if args.json:
        _print_json([
            {"name": r.name, "checks": r.checks, "failures": len(r.failures), "passed": r.passed}
            for r in results
        ])
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} checks={r.checks} failures={len(r.failures)}")
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "construct": _cmd_construct,
    "square": _cmd_square,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "order": _cmd_order,
    "axioms": _cmd_axioms,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    try:
        return COMMANDS[args.command](args)
    except (SubsetFileError, ConstructionError, BudgetExceeded, ValueError, OverflowError) as exc:
        print(f"smalldoubling {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
