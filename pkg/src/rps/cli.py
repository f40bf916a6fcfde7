"""Command-line interface: solve, solve-multi, webbook, oeis, pairs."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cache import PropositionCache, atomic_write_text, solve_cached
from .errors import UsageError
from .oeis import oeis_lookup
from .pipeline import SolveOptions, generate_webbook, render_proposition, render_webbook, sequence_lines, summary_rows
from .words import SYMMETRIES, InstanceSpec, canonical_pairs, oracle_terms, total_pairs



def _add_solve_options(p):
    p.add_argument("--terms", type=int, default=50, help="number of terms a(0..N-1) (default 50)")
    p.add_argument("--guard", type=int, default=10, help="spare equations required when guessing (default 10)")
    p.add_argument("--asymptotic-terms", type=int, default=2000)
    p.add_argument("--no-cache", action="store_true", help="do not read or write the proposition cache")


def _options(args) -> SolveOptions:
    return SolveOptions(terms=args.terms, guard=args.guard, asymptotic_terms=args.asymptotic_terms)


def _emit(text, out):
    if out:
        atomic_write_text(Path(out), text)
    else:
        sys.stdout.write(text)


def _solve_and_report(spec, args):
    cache = None if args.no_cache else PropositionCache()
    prop = solve_cached(spec, _options(args), cache)
    if args.format == "json":
        text = json.dumps(prop.to_dict(), indent=2, sort_keys=True) + "\n"
    else:
        text = render_proposition(prop) + "\n"
    _emit(text, args.out)
    if args.sequence_out:
        atomic_write_text(Path(args.sequence_out), sequence_lines(prop.terms))
    if args.figures:
        from .plotting import plot_proposition

        Path(args.figures).mkdir(parents=True, exist_ok=True)
        plot_proposition(prop, Path(args.figures) / "proposition.png")
    return 0 if prop.ok else 2


def cmd_solve(args):
    spec = InstanceSpec.pair(args.m, args.w1, args.w2, args.a1, args.a2, args.r)
    return _solve_and_report(spec, args)


def cmd_solve_multi(args):
    words, weights = [], []
    for item in args.pattern:
        word, sep, weight = item.partition(":")
        if not sep:
            raise UsageError(f"expected WORD:WEIGHT, got {item!r}")
        words.append(word)
        weights.append(int(weight))
    spec = InstanceSpec.from_words(args.m, words, weights, args.r)
    return _solve_and_report(spec, args)


def cmd_webbook(args):
    book = generate_webbook(args.m, args.k, _options(args), symmetry=args.symmetry, workers=args.workers)
    text = render_webbook(book)
    if not args.out:
        sys.stdout.write(text)
        return 0 if all(p.ok for p in book.propositions) else 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out / "webbook.txt", text)
    atomic_write_text(out / "webbook.json", json.dumps(book.to_dict(), indent=2, sort_keys=True) + "\n")
    atomic_write_text(out / "summary.tsv", "".join("\t".join(row) + "\n" for row in summary_rows(book)))
    for i, p in enumerate(book.propositions, 1):
        tag = f"{i:03d}_" + "_".join(p.spec.words_text())
        atomic_write_text(out / "sequences" / f"{tag}.txt", sequence_lines(p.terms))
    if not args.no_figures:
        from .plotting import plot_proposition, plot_webbook

        figs = out / "figures"
        figs.mkdir(exist_ok=True)
        plot_webbook(book, figs / "summary.png")
        for i, p in enumerate(book.propositions, 1):
            plot_proposition(p, figs / (f"{i:03d}_" + "_".join(p.spec.words_text()) + ".png"))
    print(f"wrote {len(book.propositions)} propositions to {out}")
    return 0 if all(p.ok for p in book.propositions) else 2


def cmd_oeis(args):
    if args.terms:
        terms = [int(x) for x in args.terms.replace(" ", "").split(",") if x]
    elif args.m and args.w1 and args.w2:
        terms = oracle_terms(InstanceSpec.pair(args.m, args.w1, args.w2), args.n - 1)
    else:
        raise UsageError("give --terms or --m/--w1/--w2")
    res = oeis_lookup(terms, offline=args.offline)
    print(json.dumps(res.to_dict(), indent=2))
    return 0 if res.available else 3


def cmd_pairs(args):
    classes = canonical_pairs(args.m, args.k, args.symmetry)
    letters = "HT" if args.m == 2 else "abcdefghijklmnopqrstuvwxyz"[: args.m]
    for c in classes:
        w1, w2 = ("".join(letters[x] for x in w) for w in c.representative)
        print(f"{w1}\t{w2}\t{len(c.orbit_members)}")
    print(f"# {len(classes)} classes covering {total_pairs(args.m, args.k)} pairs")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="rps", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a1*#w1 - a2*#w2 = r")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--a1", type=int, default=1)
    p.add_argument("--a2", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--sequence-out", help="write 'n a(n)' lines here")
    p.add_argument("--figures", help="directory for PNG figures")
    _add_solve_options(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-multi", help="several distinguished words: sum c_i * #w_i = r")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--pattern", action="append", required=True, metavar="WORD:WEIGHT")
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--sequence-out")
    p.add_argument("--figures")
    _add_solve_options(p)
    p.set_defaults(func=cmd_solve_multi)

    p = sub.add_parser("webbook", help="one proposition per canonical pair of length-k words")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="output directory (text, JSON, TSV summary, sequences, figures)")
    p.add_argument("--symmetry", choices=SYMMETRIES, default="perms+rev")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-figures", action="store_true")
    _add_solve_options(p)
    p.set_defaults(func=cmd_webbook)

    p = sub.add_parser("oeis", help="look a sequence up in the OEIS")
    p.add_argument("--terms")
    p.add_argument("--m", type=int)
    p.add_argument("--w1")
    p.add_argument("--w2")
    p.add_argument("--n", type=int, default=20, help="terms to send when solving from words")
    p.add_argument("--offline", action="store_true")
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("pairs", help="list canonical pairs")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--symmetry", choices=SYMMETRIES, default="perms+rev")
    p.set_defaults(func=cmd_pairs)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rps: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
