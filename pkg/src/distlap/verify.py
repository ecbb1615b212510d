"""Exhaustive extremal searches and inequality sweeps over finite graph corpora.

Searches and sweeps split their corpus into fixed-size index blocks. Every
block is solved independently (optionally in worker processes) and the
block results are merged in block order, so the output does not depend on
the worker count.
"""

from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from . import graph6
from .eigen import Ordering, batch_rho, compare_rho, eps_cmp, rho_L, rho_Q, rho_many
from .enumeration import (
    GraphClassQuery,
    TreeClassQuery,
    connected_masks,
    free_trees,
    graph_from_mask,
    nonisomorphic_connected_graphs,
    pair_order,
    trees_with_k_leaves,
)
from .errors import BadParams, EmptyClass, UnknownLemma
from .families import (
    DoubleBroomParams,
    End,
    TripleStarPathParams,
    attach_pendant_paths,
    double_broom,
    recognize_double_broom,
    relocate_star,
    triple_star_path,
)
from .graph import Graph, distance_data, distance_stack, laplacian_stacks, tree_canonical_form
from .transforms import Variant, add_edge, decompositions, graft_condition, move_branch

__all__ = [
    "SCHEMA_VERSION",
    "Objective",
    "ClassQuery",
    "ExtremalCertificate",
    "SweepReport",
    "BroomProfile",
    "extremal_search",
    "sweep_lemma",
    "report_broom_profile",
    "LEMMAS",
    "CERTIFICATE_SCHEMA",
    "SWEEP_SCHEMA",
]

SCHEMA_VERSION = 1
BLOCK_SIZE = 8192
SIG_DIGITS = 9


def fmt(x: float) -> float:
    """Round to the fixed number of significant digits used in reports."""
    return float(f"{x:.{SIG_DIGITS}g}")


class Objective(str, enum.Enum):
    RHO_L = "rhoL"
    RHO_Q = "rhoQ"

    @property
    def kind(self) -> str:
        return "L" if self is Objective.RHO_L else "Q"


@dataclass(frozen=True)
class ClassQuery:
    """``kind`` is ``"tree"`` for T(n,k) or ``"graph"`` for R(n,k)."""

    kind: str
    n: int
    k: int
    cap: int = 7

    def __post_init__(self):
        if self.kind not in ("tree", "graph"):
            raise BadParams(f"class kind must be 'tree' or 'graph', got {self.kind!r}")
        if self.kind == "tree":
            TreeClassQuery(self.n, self.k)
        else:
            GraphClassQuery(self.n, self.k, self.cap)

    @property
    def description(self) -> str:
        return f"{'T' if self.kind == 'tree' else 'R'}({self.n},{self.k})"


@dataclass
class ExtremalCertificate:
    class_kind: str
    n: int
    k: int
    objective: Objective
    winner: str
    winner_rho: float
    winner_residual: float
    winner_params: Optional[DoubleBroomParams]
    ties: list[str]
    in_family: bool
    verdict: str
    scanned: int
    runtime_ms: float = 0.0

    @property
    def description(self) -> str:
        return f"{'T' if self.class_kind == 'tree' else 'R'}({self.n},{self.k})"

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "class": {"kind": self.class_kind, "n": self.n, "k": self.k,
                      "description": self.description},
            "objective": self.objective.value,
            "winner": self.winner,
            "winner_rho": fmt(self.winner_rho),
            "winner_params": None if self.winner_params is None else {
                "n": self.winner_params.n, "k": self.winner_params.k,
                "t1": self.winner_params.t1, "t2": self.winner_params.t2},
            "ties": list(self.ties),
            "in_family": self.in_family,
            "verdict": self.verdict,
            "scanned": self.scanned,
        }
        if include_timing:
            d["runtime_ms"] = round(self.runtime_ms, 3)
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def csv_row(self) -> list:
        p = self.winner_params
        return [self.n, self.k, self.objective.value, self.class_kind, self.winner,
                f"{self.winner_rho:.{SIG_DIGITS}g}", "" if p is None else p.t1,
                "" if p is None else p.t2, self.verdict, len(self.ties), self.scanned]


CSV_HEADER = ["n", "k", "objective", "class", "winner", "winner_rho", "t1", "t2",
              "verdict", "ties", "scanned"]


@dataclass
class SweepReport:
    lemma: str
    corpus: str
    instances: int = 0
    confirmed: int = 0
    ties: int = 0
    violations: list[dict] = field(default_factory=list)
    max_violation_gap: float = 0.0
    tie_examples: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, ordering: Ordering, gap: float, witness: Callable[[], dict]) -> None:
        """Classify one instance whose claim is ``lhs > rhs``; ``gap = lhs - rhs``."""
        self.instances += 1
        if ordering is Ordering.GREATER:
            self.confirmed += 1
        elif ordering is Ordering.TIE:
            self.ties += 1
        else:
            self.violations.append(witness())
            self.max_violation_gap = max(self.max_violation_gap, -gap)

    def merge(self, other: "SweepReport") -> None:
        self.instances += other.instances
        self.confirmed += other.confirmed
        self.ties += other.ties
        self.violations.extend(other.violations)
        self.max_violation_gap = max(self.max_violation_gap, other.max_violation_gap)
        self.tie_examples.extend(other.tie_examples)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        d["max_violation_gap"] = fmt(self.max_violation_gap)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    it = iter(it)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def _run_blocks(fn, blocks: Iterable, threads: int) -> Iterator:
    if threads <= 1:
        for b in blocks:
            yield fn(b)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(fn, blocks)


# ---------------------------------------------------------------------------
# extremal search
# ---------------------------------------------------------------------------

def iso_key(g: Graph) -> str:
    """Isomorphism key used to group tied graphs. Trees get their canonical
    form; other graphs are keyed by their labeled graph6, so isomorphic
    non-tree copies are listed separately rather than hidden."""
    if g.is_tree():
        return "T" + tree_canonical_form(g)
    return "G" + graph6.encode(g)


@dataclass
class _BlockResult:
    count: int
    best: float
    # (rho, graph6, iso key) for every member within tolerance of the block best
    candidates: list


def _reduce_block(rhos: np.ndarray, build: Callable[[int], Graph]) -> _BlockResult:
    best = float(rhos.max())
    cut = best - 2 * eps_cmp(best, best)
    cands = []
    for i in np.flatnonzero(rhos >= cut):
        g = build(int(i))
        cands.append((float(rhos[i]), graph6.encode(g), iso_key(g)))
    return _BlockResult(len(rhos), best, cands)


def _tree_block(args) -> _BlockResult:
    kind, graphs = args
    adj = np.stack([g.adjacency_matrix() for g in graphs])
    lap, sig = laplacian_stacks(distance_stack(adj))
    rhos = batch_rho(lap if kind == "L" else sig, kind).rho
    return _reduce_block(rhos, lambda i: graphs[i])


def _mask_block(args) -> _BlockResult:
    kind, n, masks = args
    pairs = pair_order(n)
    adj = np.zeros((masks.size, n, n), dtype=np.int64)
    for e, (i, j) in enumerate(pairs):
        bit = ((masks >> np.uint64(e)) & np.uint64(1)).astype(np.int64)
        adj[:, i, j] = bit
        adj[:, j, i] = bit
    lap, sig = laplacian_stacks(distance_stack(adj))
    rhos = batch_rho(lap if kind == "L" else sig, kind).rho
    return _reduce_block(rhos, lambda i: graph_from_mask(n, masks[i]))


def _mask_blocks(n: int, k: int, cap: int, size: int) -> Iterator[np.ndarray]:
    for chunk in connected_masks(n, k, cap=cap):
        for s in range(0, chunk.size, size):
            yield chunk[s:s + size]


def extremal_search(query: ClassQuery, objective, threads: int = 1,
                    block_size: int = BLOCK_SIZE) -> ExtremalCertificate:
    """Scan a whole class and certify the graph maximizing the objective.

    The winner is the lexicographically least graph6 among everything tied
    with the maximum; other tied isomorphism classes are listed in ``ties``.
    The verdict is ``ambiguous`` when the tied set mixes double brooms with
    graphs outside that family.
    """
    objective = Objective(objective)
    kind = objective.kind
    t0 = time.perf_counter()
    if query.kind == "tree":
        stream = trees_with_k_leaves(TreeClassQuery(query.n, query.k))
        tasks = ((kind, block) for block in _chunks(stream, block_size))
        results = list(_run_blocks(_tree_block, tasks, threads))
    else:
        tasks = ((kind, query.n, m) for m in _mask_blocks(query.n, query.k, query.cap, block_size))
        results = list(_run_blocks(_mask_block, tasks, threads))
    scanned = sum(r.count for r in results)
    if scanned == 0:
        raise EmptyClass(f"{query.description} is empty")
    top = max(r.best for r in results)
    classes: dict[str, str] = {}
    for r in results:
        for rho, code, key in r.candidates:
            if compare_rho(rho, top) is Ordering.TIE:
                if key not in classes or code < classes[key]:
                    classes[key] = code
    winner = min(classes.values())
    winner_graph = graph6.decode(winner)
    summary = rho_L(winner_graph) if kind == "L" else rho_Q(winner_graph)
    params = recognize_double_broom(winner_graph)
    members = [recognize_double_broom(graph6.decode(c)) is not None for c in classes.values()]
    if all(members):
        verdict = "in_family"
    elif any(members):
        verdict = "ambiguous"
    else:
        verdict = "out_of_family"
    ties = sorted(c for c in classes.values() if c != winner)
    return ExtremalCertificate(
        class_kind=query.kind, n=query.n, k=query.k, objective=objective,
        winner=winner, winner_rho=summary.rho, winner_residual=summary.residual,
        winner_params=params, ties=ties, in_family=verdict == "in_family",
        verdict=verdict, scanned=scanned, runtime_ms=(time.perf_counter() - t0) * 1e3,
    )


# ---------------------------------------------------------------------------
# broom profile
# ---------------------------------------------------------------------------

@dataclass
class BroomProfile:
    n: int
    k: int
    objective: Objective
    rows: list[tuple[int, int, float]]

    def ordering(self) -> list[tuple[int, int]]:
        """Splits from largest to smallest spectral radius."""
        return [(t1, t2) for t1, t2, _ in sorted(self.rows, key=lambda r: (-r[2], r[0]))]


def report_broom_profile(n: int, k: int, objective) -> BroomProfile:
    objective = Objective(objective)
    if k < 2 or n - k < 2:
        raise BadParams(f"no double brooms with n={n}, k={k}")
    rows = []
    for t1 in range(1, k // 2 + 1):
        g = double_broom(DoubleBroomParams(n, k, t1, k - t1))
        s = rho_L(g) if objective is Objective.RHO_L else rho_Q(g)
        rows.append((t1, k - t1, s.rho))
    return BroomProfile(n, k, objective, rows)


# ---------------------------------------------------------------------------
# lemma sweeps
# ---------------------------------------------------------------------------

LEMMAS = {
    "branch-move-L": "moving a branch raises rho_L when the eigenvector condition holds",
    "branch-move-Q": "moving a branch raises rho_Q when the Perron vector condition holds",
    "star-relocation": "moving the middle star of a three-star path to an end raises rho_L",
    "path-shift-L": "G_{p,q} -> G_{p-1,q+1} raises rho_L",
    "path-shift-Q": "G_{p,q} -> G_{p-1,q+1} raises rho_Q",
    "edge-add-L": "adding an edge never raises rho_L",
    "edge-add-Q": "adding an edge lowers rho_Q",
    "transmission-bound": "rho_L >= Tr_max + 1, equality only at complete graphs",
}
# numeric identifiers accepted on input for compatibility with existing scripts
ALIASES = {"2.1": "branch-move-L", "3.1": "branch-move-Q", "2.2": "star-relocation",
           "2.3": "path-shift-L", "3.2": "path-shift-Q", "2.5": "edge-add-L",
           "3.4": "edge-add-Q"}

DEFAULT_MAX_N = {"branch-move-L": 10, "branch-move-Q": 10, "star-relocation": 12,
                 "path-shift-L": 6, "path-shift-Q": 6, "edge-add-L": 6, "edge-add-Q": 6,
                 "transmission-bound": 6}


def resolve_lemma(name: str) -> str:
    key = ALIASES.get(name, name)
    if key not in LEMMAS:
        choices = ", ".join(list(LEMMAS) + list(ALIASES))
        raise UnknownLemma(f"unknown lemma {name!r}; choose from {choices}")
    return key


def _corpus(kind: str, max_n: int, min_n: int = 2) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        if kind == "tree":
            yield from free_trees(n)
        else:
            yield from nonisomorphic_connected_graphs(n)


def _witness(**kw) -> dict:
    return {k: (fmt(v) if isinstance(v, float) else v) for k, v in kw.items()}


def _sweep_branch_move(args) -> SweepReport:
    lemma, graphs = args
    variant = Variant.LAPLACIAN_MINUS if lemma == "branch-move-L" else Variant.SIGNLESS_PLUS
    solve = rho_L if lemma == "branch-move-L" else rho_Q
    rep = SweepReport(lemma, "")
    cache: dict[str, float] = {}
    for g in graphs:
        base = solve(g)
        for d in decompositions(g):
            cond = graft_condition(g, d, base.vector, variant)
            if not cond.holds:
                continue
            moved = move_branch(g, d)
            key = iso_key(moved) if moved.is_tree() else None
            if key is not None and key in cache:
                after = cache[key]
            else:
                after = solve(moved).rho
                if key is not None:
                    cache[key] = after
            rep.record(compare_rho(after, base.rho), after - base.rho,
                       lambda: _witness(graph=graph6.encode(g), v0=d.v0, u=d.u,
                                        g3=sorted(d.g3), before=base.rho, after=after))
    return rep


def _sweep_triple_star(args) -> SweepReport:
    _, params = args
    rep = SweepReport("star-relocation", "")
    for p in params:
        h = rho_L(triple_star_path(p)).rho
        h1 = rho_L(relocate_star(p, End.FIRST)).rho
        hl = rho_L(relocate_star(p, End.LAST)).rho
        best = max(h1, hl)
        rep.record(compare_rho(best, h), best - h,
                   lambda: _witness(params=asdict(p), H=h, H_1=h1, H_ell=hl))
    return rep


def _sweep_path_shift(args) -> SweepReport:
    lemma, graphs, max_pq = args
    kind = "L" if lemma == "path-shift-L" else "Q"
    rep = SweepReport(lemma, "")
    built: dict[tuple, int] = {}
    members: list[Graph] = []

    def index(gi, u, p, q):
        key = (gi, u, min(p, q), max(p, q))
        if key not in built:
            built[key] = len(members)
            members.append(attach_pendant_paths(graphs[gi], u, p, q))
        return built[key]

    pending = []
    for gi, g in enumerate(graphs):
        for u in range(g.n):
            for p in range(1, max_pq):
                for q in range(p, max_pq - p + 1):
                    pending.append((g, u, p, q, index(gi, u, p, q), index(gi, u, p - 1, q + 1)))
    rhos = rho_many(members, kind)
    for g, u, p, q, before, after in pending:
        a, b = rhos[after], rhos[before]
        rep.record(compare_rho(a, b), a - b,
                   lambda: _witness(graph=graph6.encode(g), u=u, p=p, q=q, before=b, after=a))
    return rep


def _sweep_edge_addition(args) -> SweepReport:
    # both variants claim rho(G + uv) does not exceed rho(G); the Q variant strictly
    lemma, graphs = args
    kind = "L" if lemma == "edge-add-L" else "Q"
    rep = SweepReport(lemma, "")
    pairs = []
    added = []
    for gi, g in enumerate(graphs):
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v):
                    pairs.append((gi, u, v))
                    added.append(add_edge(g, u, v))
    base = rho_many(graphs, kind)
    plus = rho_many(added, kind)
    increased = 0
    for (gi, u, v), after in zip(pairs, plus):
        before = base[gi]
        increased += after > before + eps_cmp(after, before)
        rep.record(compare_rho(before, after), before - after,
                   lambda: _witness(graph=graph6.encode(graphs[gi]), u=u, v=v,
                                    before=before, after=after))
    rep.notes.append(f"increased:{increased}")
    return rep


def _sweep_transmission_bound(args) -> SweepReport:
    # equality is allowed only for complete graphs, where rho_L = n = Tr_max + 1
    _, graphs = args
    rep = SweepReport("transmission-bound", "")
    for g in graphs:
        if g.n < 2:
            continue
        rho = rho_L(g).rho
        bound = float(distance_data(g).tr_max + 1)
        order = compare_rho(rho, bound)
        if order is Ordering.TIE and not g.is_complete():
            order = Ordering.LESS
        rep.record(order, rho - bound,
                   lambda: _witness(graph=graph6.encode(g), rho=rho, bound=bound))
        if order is Ordering.TIE:
            rep.tie_examples.append(graph6.encode(g))
    return rep


def _triple_star_params(max_order: int) -> Iterator[TripleStarPathParams]:
    for ell in range(3, max_order - 5):
        for i in range(2, ell):
            budget = max_order - ell - 3
            for s1 in range(1, budget + 1):
                for si in range(1, budget - s1 + 1):
                    for sl in range(1, budget - s1 - si + 1):
                        yield TripleStarPathParams(ell, i, s1, si, sl)


def sweep_lemma(lemma: str, max_n: Optional[int] = None, threads: int = 1,
                corpus: Optional[str] = None, max_pq: int = 6,
                block_size: int = 64) -> SweepReport:
    """Check one inequality on every instance in a finite corpus.

    ``corpus`` is ``"tree"`` (free trees) or ``"graph"`` (connected graphs up
    to isomorphism, n <= 7). Branch moves default to trees, everything else
    to graphs; star relocation always runs on three-star paths.
    """
    lemma = resolve_lemma(lemma)
    max_n = DEFAULT_MAX_N[lemma] if max_n is None else max_n
    if lemma == "star-relocation":
        if corpus is not None:
            raise BadParams("star relocation runs on three-star paths only")
        desc = f"triple-star paths of order <= {max_n}"
        tasks = ((lemma, b) for b in _chunks(_triple_star_params(max_n), block_size))
        worker = _sweep_triple_star
    else:
        corpus = corpus or ("tree" if lemma.startswith("branch-move") else "graph")
        if corpus not in ("tree", "graph"):
            raise BadParams(f"corpus must be 'tree' or 'graph', got {corpus!r}")
        desc = f"{'trees' if corpus == 'tree' else 'connected graphs'} with n <= {max_n}"
        if lemma.startswith("branch-move"):
            worker = _sweep_branch_move
            tasks = ((lemma, b) for b in _chunks(_corpus(corpus, max_n, 4), block_size))
        elif lemma.startswith("path-shift"):
            desc += f", 1 <= p <= q, p + q <= {max_pq}"
            worker = _sweep_path_shift
            tasks = ((lemma, b, max_pq) for b in _chunks(_corpus(corpus, max_n), block_size))
        elif lemma.startswith("edge-add"):
            desc += ", every non-edge"
            worker = _sweep_edge_addition
            tasks = ((lemma, b) for b in _chunks(_corpus(corpus, max_n), block_size))
        else:
            worker = _sweep_transmission_bound
            tasks = ((lemma, b) for b in _chunks(_corpus(corpus, max_n), block_size))
    report = SweepReport(lemma, desc)
    increased = 0
    for part in _run_blocks(worker, tasks, threads):
        for note in part.notes:
            if note.startswith("increased:"):
                increased += int(note.split(":")[1])
        report.merge(part)
    if lemma == "edge-add-Q":
        report.notes.append(
            f"the reverse claim rho_Q(G+uv) > rho_Q(G) held on {increased} of "
            f"{report.instances} instances; the decrease is what is checked")
    if lemma == "transmission-bound":
        complete = sum(1 for g6 in report.tie_examples if graph6.decode(g6).is_complete())
        report.notes.append(
            f"{report.ties} equality cases, {complete} of them complete graphs")
    return report


# ---------------------------------------------------------------------------
# JSON schemas
# ---------------------------------------------------------------------------

CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "distlap extremal certificate",
    "type": "object",
    "required": ["schema_version", "class", "objective", "winner", "winner_rho",
                 "winner_params", "ties", "in_family", "verdict", "scanned"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "class": {
            "type": "object",
            "required": ["kind", "n", "k", "description"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["tree", "graph"]},
                "n": {"type": "integer", "minimum": 2},
                "k": {"type": "integer", "minimum": 0},
                "description": {"type": "string"},
            },
        },
        "objective": {"enum": ["rhoL", "rhoQ"]},
        "winner": {"type": "string", "pattern": "^[?-~]+$"},
        "winner_rho": {"type": "number"},
        "winner_params": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["n", "k", "t1", "t2"],
                 "additionalProperties": False,
                 "properties": {x: {"type": "integer", "minimum": 1}
                                for x in ("n", "k", "t1", "t2")}},
            ]
        },
        "ties": {"type": "array", "items": {"type": "string"}},
        "in_family": {"type": "boolean"},
        "verdict": {"enum": ["in_family", "ambiguous", "out_of_family"]},
        "scanned": {"type": "integer", "minimum": 1},
        "runtime_ms": {"type": "number", "minimum": 0},
    },
}

SWEEP_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "distlap lemma sweep report",
    "type": "object",
    "required": ["schema_version", "lemma", "corpus", "instances", "confirmed", "ties",
                 "violations", "max_violation_gap", "tie_examples", "notes"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "lemma": {"enum": list(LEMMAS)},
        "corpus": {"type": "string"},
        "instances": {"type": "integer", "minimum": 0},
        "confirmed": {"type": "integer", "minimum": 0},
        "ties": {"type": "integer", "minimum": 0},
        "violations": {"type": "array", "items": {"type": "object"}},
        "max_violation_gap": {"type": "number", "minimum": 0},
        "tie_examples": {"type": "array", "items": {"type": "string"}},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}
