"""Command-line interface: ``critideal <subcommand> ...``.

Graphs are given as graph6 strings or as ``@path`` (first non-comment line
of the file).  Exit status is 0 on success, 1 on invalid input and 2 when
the Gröbner budget runs out.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .critical import (GammaBudgetExhausted, blowup, blowup_divisor, blowup_ideal_trivial,
                       gamma, strong_basis_of_ideal)
from .families import F1, F2, f3_free, family_member
from .graphs import (CapacityError, Graph, Graph6Error, ENUM_MAX, enumerate_connected,
                     enumerate_connected_upto, parse_graph6, write_graph6)
from .groebner import Budget, BudgetExhausted, DEFAULT_MAX_PAIRS
from .search import (SearchError, find_minimal_forbidden, graphs_from_file,
                     verify_gamma_equals_f3_free, verify_omega_classification)
from .zlinalg import critical_group, smith_normal_form, laplacian

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class InputError(ValueError):
    pass


def read_graph(arg: str) -> Graph:
    text = arg
    if arg.startswith("@"):
        try:
            with open(arg[1:]) as fh:
                lines = [s.strip() for s in fh if s.strip() and not s.startswith("#")]
        except OSError as exc:
            raise InputError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
        if not lines:
            raise InputError(f"{arg[1:]} contains no graph")
        text = lines[0]
    return parse_graph6(text)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected integers, got {text!r}") from exc


def _budget(args) -> Budget:
    return Budget(max_pairs=args.budget)


def cmd_gamma(args) -> int:
    g = read_graph(args.graph)
    rep = gamma(g, exhaustive=args.exhaustive, budget=_budget(args))
    print(f"gamma = {rep.gamma}")
    for line in rep.lines():
        print(line)
    if not rep.connected:
        print("note: graph is disconnected", file=sys.stderr)
    return EXIT_OK


def cmd_ideal(args) -> int:
    g = read_graph(args.graph)
    if not 1 <= args.index <= g.n:
        raise InputError(f"index {args.index} out of range 1..{g.n}")
    for p in strong_basis_of_ideal(g, args.index, budget=_budget(args)).basis:
        print(p)
    return EXIT_OK


def _parse_matrix(text: str) -> list[list[int]]:
    rows = [r for r in text.split(";") if r.strip()]
    m = [_ints(r) for r in rows]
    if not m or any(len(r) != len(m[0]) for r in m):
        raise InputError("matrix rows must be nonempty and of equal length")
    return m


def cmd_snf(args) -> int:
    if args.matrix is not None:
        m = _parse_matrix(args.matrix)
    elif args.graph is not None:
        m = laplacian(read_graph(args.graph))
    else:
        raise InputError("give a graph or --matrix")
    res = smith_normal_form(m)
    print(f"rank = {res.rank}")
    print("factors = " + ",".join(str(d) for d in res.factors))
    return EXIT_OK


def cmd_critical_group(args) -> int:
    g = read_graph(args.graph)
    if g.n == 0:
        raise InputError("the empty graph has no critical group")
    try:
        grp = critical_group(g)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(grp)
    print("factors = " + ",".join(str(d) for d in grp.factors))
    print(f"f1 = {grp.f1}")
    return EXIT_OK


def cmd_blowup(args) -> int:
    g = read_graph(args.graph)
    d = _ints(args.weights)
    h = blowup(g, d)
    print(write_graph6(h))
    if args.ideal is not None:
        ok = blowup_ideal_trivial(g, d, args.ideal, budget=_budget(args))
        line = f"I_{args.ideal}: {'trivial' if ok else 'nontrivial'}"
        if all(abs(x) >= 2 for x in d):
            line += f" (divisor at phi(d) = {blowup_divisor(g, d, args.ideal)})"
        print(line)
    return EXIT_OK


def cmd_family_check(args) -> int:
    g = read_graph(args.graph)
    w = f3_free(g)
    if w is None:
        print("F3-free: yes")
    else:
        print(f"F3-free: no (contains {w[0]} at {','.join(map(str, w[1]))})")
    for label, fam in (("F1", F1), ("F2", F2)):
        m = family_member(g, fam)
        if m is None:
            print(f"{label}: no")
        else:
            print(f"{label}: yes ({m[0].name} at {','.join(map(str, m[1]))})")
    return EXIT_OK


def _stream(args):
    if args.input:
        return graphs_from_file(args.input)
    if args.max_n is None:
        raise InputError("give --input or --max-n")
    if args.max_n > ENUM_MAX:
        raise InputError(f"--max-n is limited to {ENUM_MAX}")
    return enumerate_connected_upto(args.max_n)


def cmd_forb_search(args) -> int:
    rep = find_minimal_forbidden(_stream(args), args.k, prune=not args.no_prune,
                                 jobs=args.jobs, checkpoint=args.checkpoint,
                                 budget=_budget(args))
    sys.stdout.write(rep.tsv())
    print(f"processed {rep.processed}, hits {len(rep.hits)}, pruned {rep.skipped}",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n > 7:
        raise InputError("--max-n is limited to 7")
    if args.omega is not None:
        rep = verify_omega_classification(args.max_n, args.omega, jobs=args.jobs)
        what = f"omega={args.omega} classification"
    else:
        rep = verify_gamma_equals_f3_free(args.max_n, jobs=args.jobs)
        what = "gamma<=3 iff F3-free"
    print(f"{what}: checked {rep.checked}, counterexamples {len(rep.counterexamples)}")
    for s in rep.counterexamples:
        print(s)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if not 1 <= args.n <= ENUM_MAX:
        raise InputError(f"n must be in 1..{ENUM_MAX}")
    for g in enumerate_connected(args.n):
        print(write_graph6(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="critideal", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_PAIRS,
                   help="maximum Gröbner pair reductions (default %(default)s)")
    p.add_argument("-v", "--verbose", action="store_true")
    # the same flag after the subcommand overrides the global one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="maximum Gröbner pair reductions")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("gamma", help="algebraic co-rank with per-index decision paths")
    s.add_argument("graph")
    s.add_argument("--exhaustive", action="store_true", help="decide every index 1..n")
    s.set_defaults(fn=cmd_gamma)

    s = add("ideal", help="reduced strong Gröbner basis of I_i, one generator per line")
    s.add_argument("graph")
    s.add_argument("index", type=int)
    s.set_defaults(fn=cmd_ideal)

    s = add("snf", help="Smith normal form of the Laplacian or of --matrix")
    s.add_argument("graph", nargs="?")
    s.add_argument("--matrix", help='rows separated by ";", entries by spaces or commas')
    s.set_defaults(fn=cmd_snf)

    s = add("critical-group", help="invariant factors of the critical group")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_critical_group)

    s = add("blowup", help="graph6 of the blow-up G^d",
                       description="Negative weights must follow '--', with options "
                                   "first, e.g. 'critideal blowup --ideal 2 A_ -- -2,1'.")
    s.add_argument("graph")
    s.add_argument("weights", help="nonzero integers, comma separated")
    s.add_argument("--ideal", type=int, metavar="J",
                   help="also decide triviality of I_J of the blow-up through phi(d)")
    s.set_defaults(fn=cmd_blowup)

    s = add("family-check", help="F3-freeness and F1/F2 membership")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_family_check)

    s = add("forb-search", help="minimal forbidden graphs for gamma <= k (TSV output)",
                       description="Output columns: graph6, gamma, 'critical'.")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--input", help="graph6 file, one graph per line")
    s.add_argument("--max-n", type=int, help="use all connected graphs up to this order")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--checkpoint", help="append-only file of processed canonical forms")
    s.add_argument("--no-prune", action="store_true")
    s.set_defaults(fn=cmd_forb_search)

    s = add("verify", help="check the classification statements up to --max-n")
    s.add_argument("--omega", type=int, choices=(2, 3))
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_verify)

    s = add("enumerate", help="connected graphs on n vertices, one graph6 per line")
    s.add_argument("n", type=int)
    s.set_defaults(fn=cmd_enumerate)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget < 1:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except (BudgetExhausted, GammaBudgetExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SearchError as exc:
        if isinstance(exc.__cause__, (BudgetExhausted, GammaBudgetExhausted)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (Graph6Error, CapacityError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
