"""Graph representation, exact distances, distance matrices and quadratic forms.

Distances are exact integers obtained by breadth-first search. The matrix
builders return ``int64`` arrays; conversion to floating point happens only
inside the eigensolvers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    Disconnected,
    DuplicateEdge,
    LoopEdge,
    NotATree,
    ParseError,
    VertexOutOfRange,
)

__all__ = [
    "Graph",
    "DistanceData",
    "from_edge_list",
    "distance_data",
    "distance_stack",
    "laplacian_stacks",
    "build_L",
    "build_Q",
    "quadratic_form_L",
    "quadratic_form_Q",
    "degrees_and_pendants",
    "tree_canonical_form",
    "parse_edge_list",
    "format_edge_list",
]


class Graph:
    """Simple connected undirected graph on vertices ``0..n-1``.

    Instances are immutable; use :func:`from_edge_list` (or the
    :meth:`from_edges` alias) to build one.
    """

    __slots__ = ("n", "adjacency", "edge_count", "_dist")

    def __init__(self, n: int, adjacency: tuple[tuple[int, ...], ...]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "edge_count", sum(len(a) for a in adjacency) // 2)
        object.__setattr__(self, "_dist", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.adjacency))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return from_edge_list(n, edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        adj = self.adjacency[u]
        # neighbour lists are short and sorted; bisect is not worth it here
        return v in adj

    def is_tree(self) -> bool:
        return self.edge_count == self.n - 1

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, nbrs in enumerate(self.adjacency):
            a[u, list(nbrs)] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the isomorphic copy in which vertex ``v`` becomes ``perm[v]``."""
        return from_edge_list(self.n, [(perm[u], perm[v]) for u, v in self.edges()])


@dataclass(frozen=True)
class DistanceData:
    dist: np.ndarray
    trans: np.ndarray
    tr_max: int

    @property
    def wiener_index(self) -> int:
        return int(self.trans.sum()) // 2


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Raises ``LoopEdge``, ``DuplicateEdge``, ``VertexOutOfRange`` or
    ``Disconnected``.
    """
    if n < 1:
        raise VertexOutOfRange(f"vertex count must be at least 1, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) listed twice")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    if not _connected(adjacency):
        raise Disconnected(f"graph on {n} vertices is not connected")
    return Graph(n, adjacency)


def _connected(adjacency) -> bool:
    n = len(adjacency)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def _bfs_row(adjacency, source: int) -> list[int]:
    n = len(adjacency)
    row = [-1] * n
    row[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = row[u] + 1
        for w in adjacency[u]:
            if row[w] < 0:
                row[w] = du
                queue.append(w)
    return row


def distance_data(g: Graph) -> DistanceData:
    """All-pairs hop distances and transmissions (cached on the graph)."""
    cached = g._dist
    if cached is not None:
        return cached
    dist = np.array([_bfs_row(g.adjacency, s) for s in range(g.n)], dtype=np.int64)
    dist.setflags(write=False)
    trans = dist.sum(axis=0)
    trans.setflags(write=False)
    data = DistanceData(dist=dist, trans=trans, tr_max=int(trans.max()))
    object.__setattr__(g, "_dist", data)
    return data


def distance_stack(adj: np.ndarray) -> np.ndarray:
    """Hop distances for a stack of connected adjacency matrices ``(B, n, n)``.

    Frontier expansion by boolean matrix products; the result is exact
    ``int64`` and agrees entrywise with :func:`distance_data`.
    """
    adj = np.asarray(adj, dtype=np.int64)
    b, n, _ = adj.shape
    dist = np.zeros((b, n, n), dtype=np.int64)
    reached = np.broadcast_to(np.eye(n, dtype=bool), (b, n, n)).copy()
    frontier = reached.astype(np.int64)
    for d in range(1, n):
        nxt = (frontier @ adj > 0) & ~reached
        if not nxt.any():
            break
        dist[nxt] = d
        reached |= nxt
        frontier = nxt.astype(np.int64)
    return dist


def laplacian_stacks(dist: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(L_D, Q_D)`` stacks from a distance stack."""
    trans = dist.sum(axis=2)
    eye = np.eye(dist.shape[1], dtype=np.int64)
    diag = trans[:, :, None] * eye
    return diag - dist, diag + dist


def build_L(g: Graph) -> np.ndarray:
    """Distance Laplacian ``Tr(G) - D(G)`` as an exact integer matrix."""
    dd = distance_data(g)
    m = -dd.dist
    m[np.diag_indices(g.n)] = dd.trans
    return m


def build_Q(g: Graph) -> np.ndarray:
    """Distance signless Laplacian ``Tr(G) + D(G)``."""
    dd = distance_data(g)
    m = dd.dist.copy()
    m[np.diag_indices(g.n)] = dd.trans
    return m


def _as_vector(g: Graph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise DimensionMismatch(f"expected a vector of length {g.n}, got shape {x.shape}")
    return x


def quadratic_form_L(g: Graph, x) -> float:
    """Sum over unordered pairs of ``d(u, v) * (x_u - x_v)**2``."""
    x = _as_vector(g, x)
    d = distance_data(g).dist
    iu = np.triu_indices(g.n, 1)
    diff = (x[:, None] - x[None, :])[iu]
    return float(np.dot(d[iu], diff * diff))


def quadratic_form_Q(g: Graph, x) -> float:
    """Sum over unordered pairs of ``d(u, v) * (x_u + x_v)**2``."""
    x = _as_vector(g, x)
    d = distance_data(g).dist
    iu = np.triu_indices(g.n, 1)
    s = (x[:, None] + x[None, :])[iu]
    return float(np.dot(d[iu], s * s))


def degrees_and_pendants(g: Graph) -> tuple[tuple[int, ...], frozenset[int]]:
    degrees = tuple(len(a) for a in g.adjacency)
    return degrees, frozenset(v for v, d in enumerate(degrees) if d == 1)


def _centroids(g: Graph) -> list[int]:
    n = g.n
    parent = [-1] * n
    order = [0]
    for u in order:
        for w in g.adjacency[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    best, found = n, []
    for u in range(n):
        heaviest = n - size[u]
        for w in g.adjacency[u]:
            if w != parent[u]:
                heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, found = heaviest, [u]
        elif heaviest == best:
            found.append(u)
    return found


def _ahu(g: Graph, root: int) -> str:
    # iterative post-order so deep paths do not hit the recursion limit
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in g.adjacency[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    codes: dict[int, list[str]] = {u: [] for u in order}
    for u in reversed(order):
        code = "(" + "".join(sorted(codes[u])) + ")"
        if parent[u] >= 0:
            codes[parent[u]].append(code)
        else:
            return code
    raise AssertionError("unreachable")


def tree_canonical_form(g: Graph) -> str:
    """AHU string of the tree rooted at its centroid.

    With two centroids the lexicographically smaller encoding is used, so
    two trees are isomorphic exactly when their strings are equal.
    """
    if not g.is_tree():
        raise NotATree(f"graph with n={g.n}, m={g.edge_count} is not a tree")
    return min(_ahu(g, c) for c in _centroids(g))


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines:
        raise ParseError("empty edge list", 1)
    lineno, head = lines[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must hold two integers", lineno) from None
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}", lineno)
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            edges.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
    return from_edge_list(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"
