"""``distlap`` command line.

Exit codes: 0 success, 1 usage or input error, 2 a verification found a
counterexample (a swept inequality failed, or an extremal winner lies
outside the double broom family).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import graph6
from .eigen import rho_L, rho_Q
from .enumeration import (
    GRAPH_CAP,
    GRAPH_HARD_CAP,
    GraphClassQuery,
    TreeClassQuery,
    connected_graphs,
    connected_graphs_with_k_pendants,
    free_trees,
    nonisomorphic_connected_graphs,
    trees_with_k_leaves,
)
from .errors import DistlapError
from .families import (
    End,
    TripleStarPathParams,
    parse_family,
    recognize_double_broom,
    relocate_star,
    triple_star_path,
)
from .graph import Graph, degrees_and_pendants, distance_data, format_edge_list, parse_edge_list
from .transforms import (
    BranchDecomposition,
    Variant,
    add_edge,
    graft_condition,
    move_branch,
    shift_pendant_path,
)
from .verify import (
    ALIASES,
    CSV_HEADER,
    LEMMAS,
    ClassQuery,
    Objective,
    extremal_search,
    report_broom_profile,
    sweep_lemma,
)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def num(x: float) -> str:
    """Nine significant digits, trailing zeros kept so columns stay aligned."""
    return f"{x:#.9g}"


def _read(source: str) -> str:
    # latin-1 maps every byte to one character, so graph6 errors report raw bytes
    if source == "-":
        return sys.stdin.buffer.read().decode("latin-1")
    with open(source, encoding="latin-1") as fh:
        return fh.read()


def load_graph(source: str, fmt: str) -> Graph:
    text = _read(source)
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise UsageError(f"expected exactly one graph6 line, found {len(lines)}")
        return graph6.decode(lines[0])
    return parse_edge_list(text)


def _input_graph(args) -> Graph:
    if args.family:
        return parse_family(args.family, loader=lambda path: load_graph(path, args.format))
    return load_graph(args.input, args.format)


def _emit(g: Graph, fmt: str, out) -> None:
    out.write(graph6.encode(g) + "\n" if fmt == "graph6" else format_edge_list(g))


def _int_list(text: Optional[str]) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("-")
    try:
        if not sep:
            return [int(lo)]
        return list(range(int(lo), int(hi) + 1))
    except ValueError:
        raise UsageError(f"expected N or LO-HI, got {text!r}") from None


def _dump(text: str, target: str, out) -> None:
    if target == "-":
        out.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectrum(args, out) -> int:
    g = _input_graph(args)
    sl, sq = rho_L(g), rho_Q(g)
    dd = distance_data(g)
    if args.json:
        doc = {
            "n": g.n, "m": g.edge_count, "graph6": graph6.encode(g),
            "rho_L": float(num(sl.rho)), "rho_Q": float(num(sq.rho)),
            "tr_max": dd.tr_max, "wiener_index": dd.wiener_index,
            "residual_L": sl.residual, "residual_Q": sq.residual,
            "method_L": sl.method.value, "method_Q": sq.method.value,
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"n {g.n}\nm {g.edge_count}\n")
    out.write(f"rho_L {num(sl.rho)}\nrho_Q {num(sq.rho)}\n")
    out.write(f"tr_max {dd.tr_max}\nwiener_index {dd.wiener_index}\n")
    out.write(f"residual_L {sl.residual:.2e}\nresidual_Q {sq.residual:.2e}\n")
    out.write(f"method_L {sl.method.value}\nmethod_Q {sq.method.value}\n")
    return EXIT_OK


def cmd_family(args, out) -> int:
    g = parse_family(args.spec, loader=lambda path: load_graph(path, "edgelist"))
    _emit(g, args.format, out)
    if args.describe:
        degrees, pendants = degrees_and_pendants(g)
        broom = recognize_double_broom(g)
        sys.stderr.write(f"pendants {len(pendants)}\n")
        sys.stderr.write(f"degrees {' '.join(map(str, degrees))}\n")
        sys.stderr.write("double_broom " + (
            "no" if broom is None else f"T({broom.n},{broom.k};{broom.t1},{broom.t2})") + "\n")
    return EXIT_OK


def _graft_result(args, g: Graph) -> tuple[Graph, Optional[str]]:
    if args.op == "move":
        g1, g2, g3 = _int_list(args.g1), _int_list(args.g2), _int_list(args.g3)
        if args.v0 is None or args.u is None or not (g1 and g2 and g3):
            raise UsageError("move needs --v0, --u, --g1, --g2 and --g3")
        d = BranchDecomposition.of(args.v0, g1, g2, g3, args.u)
        variant = Variant.LAPLACIAN_MINUS if args.objective == "rhoL" else Variant.SIGNLESS_PLUS
        x = (rho_L(g) if variant is Variant.LAPLACIAN_MINUS else rho_Q(g)).vector
        rep = graft_condition(g, d, x, variant)
        note = (f"condition lhs {num(rep.lhs)} rhs {num(rep.rhs)} "
                f"holds {str(rep.holds).lower()} strict {str(rep.strict).lower()}")
        return move_branch(g, d), note
    if args.op == "shift":
        if args.u is None:
            raise UsageError("shift needs --u, --p-path and --q-path")
        return shift_pendant_path(g, args.u, _int_list(args.p_path), _int_list(args.q_path)), None
    if args.op == "add-edge":
        ends = _int_list(args.edge)
        if len(ends) != 2:
            raise UsageError("add-edge needs --edge U,V")
        return add_edge(g, *ends), None
    raise AssertionError(args.op)


def cmd_graft(args, out) -> int:
    if args.op == "relocate":
        if args.input or args.family:
            raise UsageError("relocate builds its own graph from --params")
        vals = _int_list(args.params)
        if len(vals) != 5:
            raise UsageError("relocate needs --params ell,i,s1,si,sl")
        p = TripleStarPathParams(*vals)
        g = triple_star_path(p)
        new = relocate_star(p, End(args.end))
        note = None
    else:
        if not (args.input or args.family):
            raise UsageError(f"{args.op} needs --input or --family")
        g = _input_graph(args)
        new, note = _graft_result(args, g)
    solve = rho_L if args.objective == "rhoL" else rho_Q
    before, after = solve(g).rho, solve(new).rho
    _emit(new, args.format, out)
    if note:
        sys.stderr.write(note + "\n")
    sys.stderr.write(f"{args.objective} before {num(before)} after {num(after)}\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if args.cls == "tree":
        if args.k is None:
            stream = free_trees(args.n)
        else:
            stream = trees_with_k_leaves(TreeClassQuery(args.n, args.k))
    elif args.cls == "graph":
        cap = GRAPH_HARD_CAP if args.allow_order_8 else GRAPH_CAP
        if args.k is None:
            stream = connected_graphs(args.n, cap=cap)
        else:
            stream = connected_graphs_with_k_pendants(GraphClassQuery(args.n, args.k, cap))
    else:
        if args.k is not None:
            raise UsageError("--k is not supported with --class graph-iso")
        stream = nonisomorphic_connected_graphs(args.n)
    count = 0
    for g in stream:
        out.write(graph6.encode(g) + "\n")
        count += 1
    if args.count:
        sys.stderr.write(f"count {count}\n")
    return EXIT_OK


def _objectives(name: str) -> list[Objective]:
    return list(Objective) if name == "both" else [Objective(name)]


def cmd_extremal(args, out) -> int:
    cap = GRAPH_HARD_CAP if args.allow_order_8 else GRAPH_CAP
    queries = []
    for n in _int_range(args.n):
        ks = _int_range(args.k) if args.k else list(range(2, n - 1))
        for k in ks:
            queries.append(ClassQuery(args.cls, n, k, cap))
    if not queries:
        raise UsageError("no (n, k) pairs selected")
    certs = [extremal_search(q, o, threads=args.threads)
             for q in queries for o in _objectives(args.objective)]
    # machine output on stdout pushes the human summary to stderr
    log = sys.stderr if "-" in (args.json, args.csv) else out
    for c in certs:
        p = c.winner_params
        fam = "-" if p is None else f"T({p.n},{p.k};{p.t1},{p.t2})"
        log.write(f"{c.description} {c.objective.value} winner {c.winner} rho {num(c.winner_rho)} "
                  f"broom {fam} verdict {c.verdict} ties {len(c.ties)} scanned {c.scanned}\n")
    if args.json:
        docs = [c.to_dict(include_timing=args.timing) for c in certs]
        payload = docs[0] if len(docs) == 1 else docs
        _dump(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.json, out)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(c.csv_row() for c in certs)
        _dump(buf.getvalue(), args.csv, out)
    return EXIT_OK if all(c.in_family for c in certs) else EXIT_VIOLATION


def cmd_sweep(args, out) -> int:
    rep = sweep_lemma(args.lemma, max_n=args.max_n, threads=args.threads,
                      corpus=args.corpus, max_pq=args.max_pq)
    log = sys.stderr if args.json == "-" else out
    log.write(f"lemma {rep.lemma}\ncorpus {rep.corpus}\ninstances {rep.instances}\n"
              f"confirmed {rep.confirmed}\nties {rep.ties}\nviolations {len(rep.violations)}\n"
              f"max_violation_gap {num(rep.max_violation_gap)}\n")
    for note in rep.notes:
        log.write(f"note {note}\n")
    for v in rep.violations[:10]:
        log.write("violation " + json.dumps(v, sort_keys=True) + "\n")
    if args.json:
        _dump(rep.to_json(), args.json, out)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_profile(args, out) -> int:
    for objective in _objectives(args.objective):
        prof = report_broom_profile(args.n, args.k, objective)
        for t1, t2, rho in prof.rows:
            out.write(f"T({args.n},{args.k};{t1},{t2}) {objective.value} {num(rho)}\n")
        order = " > ".join(f"({a},{b})" for a, b in prof.ordering())
        out.write(f"ordering {objective.value} {order}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", "-i", metavar="FILE", help="graph file, '-' for stdin")
    src.add_argument("--family", metavar="SPEC",
                     help="path:n | star:n | spider:a,b,... | broom:n,k,t1,t2 | "
                          "triplestar:ell,i,s1,si,sl | attach:FILE,u,p,q")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="distlap", description="Distance Laplacian spectral radii, graft "
                     "transformations and exhaustive extremal checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="rho_L, rho_Q and transmissions of one graph")
    _graph_source(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("family", help="build a named graph")
    p.add_argument("spec")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--describe", action="store_true", help="degree summary on stderr")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("graft", help="apply one graft transformation")
    p.add_argument("--op", required=True, choices=("move", "shift", "add-edge", "relocate"))
    _graph_source(p)
    p.add_argument("--objective", choices=("rhoL", "rhoQ"), default="rhoL")
    p.add_argument("--v0", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--g1", help="comma list, v0 implied")
    p.add_argument("--g2")
    p.add_argument("--g3")
    p.add_argument("--p-path", help="comma list outward from u")
    p.add_argument("--q-path")
    p.add_argument("--edge", help="U,V")
    p.add_argument("--params", help="ell,i,s1,si,sl for relocate")
    p.add_argument("--end", choices=[e.value for e in End], default=End.LAST.value)
    p.set_defaults(func=cmd_graft)

    p = sub.add_parser("enumerate", help="stream a class as graph6 lines")
    p.add_argument("--class", dest="cls", choices=("tree", "graph", "graph-iso"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--allow-order-8", action="store_true")
    p.add_argument("--count", action="store_true", help="print the count on stderr")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("extremal", help="certify the maximizer of a class")
    p.add_argument("--class", dest="cls", choices=("tree", "graph"), required=True)
    p.add_argument("--n", required=True, help="N or LO-HI")
    p.add_argument("--k", help="K or LO-HI (default 2..n-2)")
    p.add_argument("--objective", choices=("rhoL", "rhoQ", "both"), default="both")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", metavar="FILE", help="certificate(s) as JSON, '-' for stdout")
    p.add_argument("--csv", metavar="FILE", help="one summary row per (n, k, objective)")
    p.add_argument("--timing", action="store_true", help="include runtime_ms in JSON")
    p.add_argument("--allow-order-8", action="store_true")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("sweep", help="check an inequality on a finite corpus")
    p.add_argument("--lemma", required=True, choices=list(LEMMAS) + list(ALIASES),
                   metavar="NAME", help=", ".join(LEMMAS))
    p.add_argument("--max-n", type=int)
    p.add_argument("--corpus", choices=("tree", "graph"))
    p.add_argument("--max-pq", type=int, default=6)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("profile", help="rho of every double broom split")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--objective", choices=("rhoL", "rhoQ", "both"), default="both")
    p.set_defaults(func=cmd_profile)
    return parser


def _check_conflicts(parser, args) -> None:
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    if args.command == "spectrum" and not (args.input or args.family):
        parser.error("spectrum needs --input or --family")
    if args.command == "extremal" and args.csv == "-" and args.json == "-":
        parser.error("--json - and --csv - cannot share stdout")
    if args.command == "sweep" and ALIASES.get(args.lemma, args.lemma) == "star-relocation" \
            and args.corpus:
        parser.error("star relocation runs on three-star paths; --corpus does not apply")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_conflicts(parser, args)
    try:
        return args.func(args, out)
    except (DistlapError, UsageError, OSError) as exc:
        sys.stderr.write(f"distlap: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
