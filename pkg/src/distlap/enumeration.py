"""Exhaustive generation of trees and small connected graphs.

Free trees come from the Wright-Richmond-Odlyzko-McKay level-sequence
scheme: canonical rooted trees (Beyer-Hedetniemi successor) rooted at the
tree's centre, with a jump over every run of non-canonical candidates.
Labeled connected graphs are scanned as edge-subset bitmasks, vectorized
in chunks with numpy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .errors import OutOfRange
from .graph import Graph, from_edge_list

log = logging.getLogger(__name__)

MAX_TREE_ORDER = 20
GRAPH_CAP = 7
GRAPH_HARD_CAP = 8

# OEIS A000055 for n = 0..20
TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741,
               19320, 48629, 123867, 317955, 823065)


@dataclass(frozen=True)
class TreeClassQuery:
    n: int
    k: Optional[int] = None
    cap: Optional[int] = None

    def __post_init__(self):
        if not 2 <= self.n <= MAX_TREE_ORDER:
            raise OutOfRange(f"tree order must lie in 2..{MAX_TREE_ORDER}, got {self.n}")
        if self.k is not None and not 2 <= self.k <= self.n - 1:
            raise OutOfRange(f"pendant count must lie in 2..{self.n - 1}, got {self.k}")


@dataclass(frozen=True)
class GraphClassQuery:
    n: int
    k: int
    cap: int = GRAPH_CAP

    def __post_init__(self):
        if self.cap > GRAPH_HARD_CAP:
            raise OutOfRange(f"graph enumeration cap cannot exceed {GRAPH_HARD_CAP}")
        if not 2 <= self.n <= self.cap:
            raise OutOfRange(f"graph order must lie in 2..{self.cap}, got {self.n}")
        if self.k < 0:
            raise OutOfRange("pendant count must be non-negative")


def _successor(seq: list[int], p: Optional[int] = None) -> Optional[list[int]]:
    # Beyer-Hedetniemi: next canonical rooted tree in reverse lexicographic order
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    shift = p - q
    for i in range(p, len(out)):
        out[i] = out[i - shift]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Split into the root's first subtree (relative levels) and the rest."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _canonical_or_jump(seq: list[int]) -> list[int]:
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _successor(seq, p)
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[len(nxt) - len(tail):] = tail
    return nxt


def free_tree_level_sequences(n: int) -> Iterator[list[int]]:
    """Level sequences (root at level 0) of one representative per free tree."""
    if not 1 <= n <= MAX_TREE_ORDER:
        raise OutOfRange(f"tree order must lie in 1..{MAX_TREE_ORDER}, got {n}")
    if n <= 2:
        yield list(range(n))
        return
    seq: Optional[list[int]] = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _canonical_or_jump(seq)
        yield seq
        seq = _successor(seq)


def tree_from_level_sequence(seq: list[int]) -> Graph:
    edges = []
    last_at_level: list[int] = []
    for v, level in enumerate(seq):
        if level > 0:
            edges.append((last_at_level[level - 1], v))
        del last_at_level[level:]
        last_at_level.append(v)
    return from_edge_list(len(seq), edges)


def free_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class on ``n`` vertices, in a fixed order."""
    for seq in free_tree_level_sequences(n):
        yield tree_from_level_sequence(seq)


def trees_with_k_leaves(q: TreeClassQuery) -> Iterator[Graph]:
    yielded = 0
    for g in free_trees(q.n):
        if q.k is not None and sum(1 for a in g.adjacency if len(a) == 1) != q.k:
            continue
        if q.cap is not None and yielded >= q.cap:
            raise OutOfRange(f"query exceeded its cap of {q.cap} trees")
        yielded += 1
        yield g


@lru_cache(maxsize=None)
def pair_order(n: int) -> tuple[tuple[int, int], ...]:
    """Vertex pairs in graph6 column order; bit ``e`` of an edge mask is pair ``e``."""
    return tuple((i, j) for j in range(1, n) for i in range(j))


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def connected_masks(n: int, k: Optional[int] = None, chunk: int = 1 << 16,
                    cap: int = GRAPH_CAP) -> Iterator[np.ndarray]:
    """Yield ascending arrays of edge masks of connected labeled graphs.

    With ``k`` set only graphs with exactly ``k`` pendant vertices survive.
    """
    if n > cap or n > GRAPH_HARD_CAP:
        raise OutOfRange(f"graph order {n} exceeds the enumeration cap {cap}")
    if n < 1:
        raise OutOfRange("graph order must be positive")
    if n == GRAPH_HARD_CAP:
        log.warning("enumerating all 2^28 edge subsets of K_8; this takes a while")
    pairs = pair_order(n)
    m = len(pairs)
    if n == 1:
        if k in (None, 0):
            yield np.zeros(1, dtype=np.uint64)
        return
    # incident[v]: mask of edges touching v; row_bits[v][u]: edge index of uv
    incident = np.zeros(n, dtype=np.uint64)
    edge_of = {}
    for e, (i, j) in enumerate(pairs):
        incident[i] |= np.uint64(1 << e)
        incident[j] |= np.uint64(1 << e)
        edge_of[i, j] = edge_of[j, i] = e
    total = 1 << m
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        deg = np.stack([_popcount(masks & incident[v]) for v in range(n)])
        keep = np.all(deg >= 1, axis=0)
        if k is not None:
            keep &= (deg == 1).sum(axis=0) == k
        masks = masks[keep]
        if masks.size == 0:
            continue
        rows = []
        for v in range(n):
            r = np.zeros(masks.size, dtype=np.uint64)
            for u in range(n):
                if u != v:
                    bit = (masks >> np.uint64(edge_of[v, u])) & np.uint64(1)
                    r |= bit << np.uint64(u)
            rows.append(r)
        reach = np.ones(masks.size, dtype=np.uint64)
        for _ in range(n - 1):
            grown = reach.copy()
            for v in range(n):
                has = (reach >> np.uint64(v)) & np.uint64(1)
                grown |= rows[v] * has
            if np.array_equal(grown, reach):
                break
            reach = grown
        full = np.uint64((1 << n) - 1)
        masks = masks[reach == full]
        if masks.size:
            yield masks


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = pair_order(n)
    mask = int(mask)
    return from_edge_list(n, [pairs[e] for e in range(len(pairs)) if mask >> e & 1])


def connected_graphs_with_k_pendants(q: GraphClassQuery) -> Iterator[Graph]:
    """Labeled connected graphs of order ``n`` with exactly ``k`` pendant vertices."""
    for block in connected_masks(q.n, q.k, cap=q.cap):
        for mask in block:
            yield graph_from_mask(q.n, mask)


def connected_graphs(n: int, cap: int = GRAPH_CAP) -> Iterator[Graph]:
    """All labeled connected graphs of order ``n``."""
    for block in connected_masks(n, None, cap=cap):
        for mask in block:
            yield graph_from_mask(n, mask)


def nonisomorphic_connected_graphs(n: int) -> Iterator[Graph]:
    """One connected graph per isomorphism class, ``n <= 7`` (graph atlas)."""
    if not 1 <= n <= 7:
        raise OutOfRange(f"the graph atlas covers orders 1..7, got {n}")
    return iter(_atlas(n))


@lru_cache(maxsize=None)
def _atlas(n: int) -> tuple[Graph, ...]:
    import networkx as nx

    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n and nx.is_connected(h):
            out.append(from_edge_list(n, h.edges()))
    return tuple(out)

