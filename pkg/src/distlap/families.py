"""Named graph families: paths, stars, spiders, double brooms and the
three-star path used by the star relocation transform."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import BadParams, TooSmall, VertexOutOfRange
from .graph import Graph, from_edge_list

__all__ = [
    "DoubleBroomParams",
    "TripleStarPathParams",
    "End",
    "path",
    "star",
    "spider",
    "double_broom",
    "triple_star_path",
    "relocate_star",
    "attach_pendant_paths",
    "recognize_double_broom",
    "parse_family",
]


@dataclass(frozen=True)
class DoubleBroomParams:
    """T(n, k; t1, t2): a path on ``n - k`` vertices with ``t1`` leaves hung on
    one end and ``t2`` on the other."""

    n: int
    k: int
    t1: int
    t2: int

    def __post_init__(self):
        if self.t1 < 1 or self.t2 < 1:
            raise BadParams(f"broom sizes must be positive, got ({self.t1}, {self.t2})")
        if self.t1 + self.t2 != self.k:
            raise BadParams(f"t1 + t2 = {self.t1 + self.t2} differs from k = {self.k}")
        if self.n - self.k < 2:
            raise BadParams(f"path order n - k = {self.n - self.k} must be at least 2")

    @property
    def ell(self) -> int:
        return self.n - self.k

    def canonical(self) -> "DoubleBroomParams":
        if self.t1 <= self.t2:
            return self
        return DoubleBroomParams(self.n, self.k, self.t2, self.t1)


@dataclass(frozen=True)
class TripleStarPathParams:
    """Path v_1..v_ell with stars (centres u_1, u_i, u_ell) bridged to
    v_1, v_i and v_ell; ``s*`` are the stars' leaf counts."""

    ell: int
    i: int
    s1: int
    si: int
    sl: int

    def __post_init__(self):
        if self.ell < 2:
            raise BadParams(f"path order must be at least 2, got {self.ell}")
        if not 2 <= self.i <= self.ell - 1:
            raise BadParams(f"interior position {self.i} outside 2..{self.ell - 1}")
        if min(self.s1, self.si, self.sl) < 1:
            raise BadParams("every star needs at least one leaf")

    @property
    def order(self) -> int:
        return self.ell + self.s1 + self.si + self.sl + 3


class End(enum.Enum):
    FIRST = "end1"
    LAST = "endl"


def path(n: int) -> Graph:
    if n < 1:
        raise TooSmall("a path needs at least one vertex")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    if n < 2:
        raise TooSmall("a star needs at least two vertices")
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def spider(*legs: int) -> Graph:
    """Centre 0 with pendant paths of the given lengths."""
    if not legs or min(legs) < 1:
        raise BadParams("a spider needs legs of positive length")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return from_edge_list(nxt, edges)


def double_broom(p: DoubleBroomParams) -> Graph:
    """Path ``0..ell-1``; leaves on vertex 0 first, then on vertex ``ell-1``."""
    ell = p.ell
    edges = [(i, i + 1) for i in range(ell - 1)]
    nxt = ell
    for _ in range(p.t1):
        edges.append((0, nxt))
        nxt += 1
    for _ in range(p.t2):
        edges.append((ell - 1, nxt))
        nxt += 1
    g = from_edge_list(p.n, edges)
    pendants = sum(1 for a in g.adjacency if len(a) == 1)
    if pendants != p.k:
        raise BadParams(f"built a tree with {pendants} pendant vertices, expected {p.k}")
    return g


def _triple_star_edges(p: TripleStarPathParams) -> tuple[list[tuple[int, int]], dict]:
    ell = p.ell
    edges = [(j, j + 1) for j in range(ell - 1)]
    nxt = ell
    centres = {}
    for pos, leaves in ((1, p.s1), (p.i, p.si), (ell, p.sl)):
        u = nxt
        centres[pos] = u
        nxt += 1
        edges.append((pos - 1, u))
        for _ in range(leaves):
            edges.append((u, nxt))
            nxt += 1
    return edges, centres


def triple_star_path(p: TripleStarPathParams) -> Graph:
    """The graph H: path vertices are ``0..ell-1`` (v_j is ``j-1``), followed by
    each star's centre and leaves in the order v_1, v_i, v_ell."""
    edges, _ = _triple_star_edges(p)
    return from_edge_list(p.order, edges)


def relocate_star(p: TripleStarPathParams, target: End) -> Graph:
    """H_1 or H_ell: the star at v_i is re-bridged to v_1 or v_ell."""
    edges, centres = _triple_star_edges(p)
    u = centres[p.i]
    dest = 0 if End(target) is End.FIRST else p.ell - 1
    edges = [(dest, u) if e == (p.i - 1, u) else e for e in edges]
    return from_edge_list(p.order, edges)


def attach_pendant_paths(g: Graph, u: int, p: int, q: int) -> Graph:
    """G_{p,q}: hang new paths with ``p`` and ``q`` edges at ``u``."""
    if g.n < 2:
        raise TooSmall("the base graph needs at least two vertices")
    if not 0 <= u < g.n:
        raise VertexOutOfRange(f"vertex {u} outside 0..{g.n - 1}")
    if p < 0 or q < 0:
        raise BadParams("path lengths must be non-negative")
    edges = g.edges()
    nxt = g.n
    for length in (p, q):
        prev = u
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return from_edge_list(nxt, edges)


def recognize_double_broom(g: Graph) -> Optional[DoubleBroomParams]:
    """Canonical params if ``g`` is some T(n, k; t1, t2), else ``None``.

    Structural test: the non-leaf vertices must induce a path on at least
    two vertices and every leaf must hang on one of that path's ends.
    """
    n = g.n
    if not g.is_tree() or n < 4:
        return None
    deg = [len(a) for a in g.adjacency]
    internal = [v for v in range(n) if deg[v] > 1]
    if len(internal) < 2:
        return None
    inner_deg = {v: sum(1 for w in g.adjacency[v] if deg[w] > 1) for v in internal}
    if any(d > 2 for d in inner_deg.values()):
        return None
    ends = [v for v, d in inner_deg.items() if d == 1]
    leaves_on = {v: deg[v] - inner_deg[v] for v in internal}
    for v in internal:
        if v not in ends and leaves_on[v]:
            return None
    t1, t2 = sorted(leaves_on[v] for v in ends)
    return DoubleBroomParams(n, t1 + t2, t1, t2)


def parse_family(spec: str, loader=None) -> Graph:
    """Build a graph from ``path:n``, ``star:n``, ``broom:n,k,t1,t2``,
    ``triplestar:ell,i,s1,si,sl`` or ``attach:FILE,u,p,q``.

    ``loader`` reads FILE for the ``attach`` form.
    """
    name, _, rest = spec.partition(":")
    args = [a.strip() for a in rest.split(",")] if rest else []
    try:
        if name == "attach":
            if len(args) != 4 or loader is None:
                raise BadParams("attach expects FILE,u,p,q")
            base = loader(args[0])
            u, p, q = (int(a) for a in args[1:])
            return attach_pendant_paths(base, u, p, q)
        nums = [int(a) for a in args]
    except ValueError:
        raise BadParams(f"bad family arguments in {spec!r}") from None
    if name == "path" and len(nums) == 1:
        return path(nums[0])
    if name == "star" and len(nums) == 1:
        return star(nums[0])
    if name == "spider" and nums:
        return spider(*nums)
    if name == "broom" and len(nums) == 4:
        return double_broom(DoubleBroomParams(*nums))
    if name == "triplestar" and len(nums) == 5:
        return triple_star_path(TripleStarPathParams(*nums))
    raise BadParams(f"unknown family spec {spec!r}")
