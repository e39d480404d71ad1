"""Command-line front end: ``axiograph <verb> ...``.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 infeasible
(enumeration cap), 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, counterexamples
from .axioms import AXIOMS, FALSIFIED, check_axiom, verify_witness
from .exceptions import (
    InfeasibleError,
    InputError,
    InvariantError,
    ParseError,
    UnsupportedError,
)
from .io import format_number, read_clustering, read_graph, serialize_clustering
from .optimize import DEFAULT_ENUMERATION_CAP, optimize_exact, optimize_greedy
from .quality import evaluate, evaluate_with_info, parse_spec

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_INVARIANT = 0, 1, 2, 3, 4
DIGITS = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _spec_arg(text):
    try:
        return parse_spec(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")
    return value


def _nonneg_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {value}")
    return value


def _grid_arg(text):
    """``a,b,c`` or ``log:LO:HI:N`` (log-spaced, inclusive)."""
    try:
        if text.startswith("log:"):
            lo, hi, num = text[4:].split(":")
            lo, hi, num = float(lo), float(hi), int(num)
            if lo <= 0 or hi <= 0 or num < 1:
                raise ValueError
            return analysis.default_wb_grid(lo, hi, num)
        values = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return values


def _qgrid_arg(text):
    try:
        M, g = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M,GAMMA, got {text!r}") from None
    return M, g


def build_parser():
    p = _Parser(prog="axiograph", description="Axiom checks and optimization for "
                "graph clustering quality functions.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    q_help = ("quality spec: modularity | fixed:M | adaptive:M,GAMMA | cpm:GAMMA | "
              "rb:GAMMA | ncut | withinsum | coco")

    s = sub.add_parser("quality", help="evaluate a clustering")
    s.add_argument("graph")
    s.add_argument("clustering")
    s.add_argument("--q", type=_spec_arg, required=True, help=q_help)

    s = sub.add_parser("optimize", help="find a best clustering")
    s.add_argument("graph")
    s.add_argument("--q", type=_spec_arg, required=True, help=q_help)
    s.add_argument("--method", choices=("exact", "greedy"), default="exact")
    s.add_argument("--seed", type=_nonneg_int, default=0)
    s.add_argument("--max-exact-n", type=_nonneg_int, default=DEFAULT_ENUMERATION_CAP,
                   help="enumeration cap for exact search (default %(default)s)")

    s = sub.add_parser("axioms", help="check axioms for a quality spec")
    s.add_argument("--q", type=_spec_arg, required=True, help=q_help)
    s.add_argument("--axiom", choices=AXIOMS + ("all",), default="all")
    s.add_argument("--trials", type=_positive_int, default=200)
    s.add_argument("--seed", type=_nonneg_int, default=0)
    s.add_argument("--max-nodes", type=_positive_int, default=6)
    s.add_argument("--json", action="store_true", help="print a JSON dump instead of lines")

    sub.add_parser("counterexamples", help="check the modularity counterexample registry")

    s = sub.add_parser("sweep", help="two-clique outcome sweep as CSV")
    s.add_argument("--q-grid", type=_qgrid_arg, nargs="+", metavar="M,GAMMA",
                   default=list(analysis.DEFAULT_QGRID))
    s.add_argument("--w-grid", type=_grid_arg, default=analysis.default_wb_grid(),
                   help="comma list or log:LO:HI:N")
    s.add_argument("--b-grid", type=_grid_arg, default=analysis.default_wb_grid(),
                   help="comma list or log:LO:HI:N")
    s.add_argument("-o", "--output", default="-", help="CSV path, '-' for stdout")

    s = sub.add_parser("ring", help="resolution demo on a ring of cliques")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--q", type=_spec_arg, required=True, help=q_help)
    return p


def _num(x):
    return format_number(x, DIGITS)


def _cmd_quality(args, out):
    g = read_graph(args.graph)
    c = read_clustering(args.clustering, g)
    info = evaluate_with_info(args.q, g, c)
    if info.degenerate:
        print("warning: zero total volume, quality defined as 0", file=sys.stderr)
    out.write(_num(info.value) + "\n")
    return EXIT_OK


def _cmd_optimize(args, out):
    g = read_graph(args.graph)
    if args.method == "exact":
        res = optimize_exact(args.q, g, cap=args.max_exact_n)
        best, value = res.best, res.best_quality
        header = [f"# optima {len(res.optima)}", f"# partitions {res.partitions_examined}"]
    else:
        best = optimize_greedy(args.q, g, seed=args.seed)
        value = evaluate(args.q, g, best)
        header = [f"# seed {args.seed}"]
    out.write(f"# quality {_num(value)}\n")
    out.write(f"# clustering {best.format(g)}\n")
    for line in header:
        out.write(line + "\n")
    out.write(serialize_clustering(best, g))
    return EXIT_OK


def _cmd_axioms(args, out):
    axioms = AXIOMS if args.axiom == "all" else (args.axiom,)
    reports = [check_axiom(ax, args.q, trials=args.trials, seed=args.seed,
                           max_nodes=args.max_nodes) for ax in axioms]
    for r in reports:
        if r.verdict == FALSIFIED and not verify_witness(r):
            raise InvariantError(f"witness for {r.axiom} does not re-verify")
    if args.json:
        json.dump([r.to_dict() for r in reports], out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        for r in reports:
            out.write(r.format_line() + "\n")
            if r.witness is not None:
                for key, val in r.witness.values.items():
                    out.write(f"    {key} = {_num(val)}\n")
    return EXIT_OK


def _cmd_counterexamples(args, out):
    rows = counterexamples.check_suite()
    out.write("scenario graph clustering computed expected status note\n")
    for name, graph, clustering, got, expected, ok, note in rows:
        status = "ok" if ok else "MISMATCH"
        line = f"{name} {graph} {clustering} {_num(got)} {expected} {status}"
        out.write(line + (f" # {note}" if note else "") + "\n")
    bad = sum(not r[5] for r in rows)
    out.write(f"# {len(rows) - bad}/{len(rows)} values match\n")
    return EXIT_OK if bad == 0 else EXIT_INVARIANT


def _cmd_sweep(args, out):
    cells = analysis.sweep(args.q_grid, args.w_grid, args.b_grid)
    if args.output == "-":
        analysis.write_sweep_csv(cells, out)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            analysis.write_sweep_csv(cells, fh)
    return EXIT_OK


def _cmd_ring(args, out):
    demo = analysis.ring_resolution_demo(args.q, args.n, args.s)
    out.write(f"spec {args.q}\n")
    out.write(f"cliques {demo.n}\n")
    out.write(f"clique_size {demo.s}\n")
    out.write(f"arcs {' '.join(map(str, demo.arcs))}\n")
    out.write(f"cliques_per_cluster {demo.cliques_per_cluster}\n")
    out.write(f"quality {_num(demo.quality)}\n")
    return EXIT_OK


_COMMANDS = {
    "quality": _cmd_quality,
    "optimize": _cmd_optimize,
    "axioms": _cmd_axioms,
    "counterexamples": _cmd_counterexamples,
    "sweep": _cmd_sweep,
    "ring": _cmd_ring,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.verb](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
