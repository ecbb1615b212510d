"""Graft transformations and the eigenvector conditions that control them.

A branch move cuts ``G = G1 u G2 u G3`` at a cut vertex ``v0`` and re-hangs
``G3`` at a vertex ``u`` of ``G2``. Whether that raises the spectral radius
is decided by comparing two double sums over the current eigenvector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

import numpy as np

from .eigen import eps_cmp, rho_L, rho_Q
from .errors import (
    AlreadyAdjacent,
    DimensionMismatch,
    InvalidDecomposition,
    LoopEdge,
    NotPendantPath,
    VertexOutOfRange,
    WrongOrder,
)
from .graph import Graph, from_edge_list

__all__ = [
    "Variant",
    "BranchDecomposition",
    "GraftConditionReport",
    "branches_at",
    "validate_decomposition",
    "move_branch",
    "graft_condition",
    "eigen_graft_condition",
    "decompositions",
    "shift_pendant_path",
    "pendant_path",
    "add_edge",
]


class Variant(enum.Enum):
    LAPLACIAN_MINUS = "LaplacianMinus"
    SIGNLESS_PLUS = "SignlessPlus"


@dataclass(frozen=True)
class BranchDecomposition:
    v0: int
    g1: frozenset
    g2: frozenset
    g3: frozenset
    u: int

    @classmethod
    def of(cls, v0, g1, g2, g3, u) -> "BranchDecomposition":
        return cls(v0, frozenset(g1) | {v0}, frozenset(g2) | {v0}, frozenset(g3) | {v0}, u)


@dataclass(frozen=True)
class GraftConditionReport:
    lhs: float
    rhs: float
    strict: bool
    variant: Variant

    @property
    def holds(self) -> bool:
        """Non-strict form ``lhs >= rhs``."""
        return self.lhs >= self.rhs


def branches_at(g: Graph, v0: int) -> list[frozenset]:
    """Vertex sets of the components of ``g - v0``, ordered by least vertex."""
    seen = {v0}
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for w in g.adjacency[x]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def validate_decomposition(g: Graph, d: BranchDecomposition) -> None:
    parts = (d.g1, d.g2, d.g3)
    if not 0 <= d.v0 < g.n:
        raise InvalidDecomposition(f"cut vertex {d.v0} outside the graph")
    if any(d.v0 not in p or len(p) < 2 for p in parts):
        raise InvalidDecomposition("each part must contain v0 and one more vertex")
    if d.g1 & d.g2 != {d.v0} or d.g1 & d.g3 != {d.v0} or d.g2 & d.g3 != {d.v0}:
        raise InvalidDecomposition("parts may only share the cut vertex")
    if d.g1 | d.g2 | d.g3 != frozenset(range(g.n)):
        raise InvalidDecomposition("parts must cover every vertex")
    if d.u == d.v0 or d.u not in d.g2:
        raise InvalidDecomposition("u must lie in G2 and differ from v0")
    for comp in branches_at(g, d.v0):
        if not any(comp <= p for p in parts):
            raise InvalidDecomposition("a component of G - v0 straddles two parts")


def move_branch(g: Graph, d: BranchDecomposition) -> Graph:
    """Re-attach every edge from ``v0`` into ``G3`` at ``u`` instead."""
    validate_decomposition(g, d)
    inner = d.g3 - {d.v0}
    edges = [(d.u, b) if a == d.v0 and b in inner else
             (d.u, a) if b == d.v0 and a in inner else (a, b)
             for a, b in g.edges()]
    return from_edge_list(g.n, edges)


def graft_condition(g: Graph, d: BranchDecomposition, x, variant: Variant) -> GraftConditionReport:
    """Both double sums of the branch-move criterion.

    ``lhs`` sums over ``G3 \\ {v0}`` x ``G1``, ``rhs`` over ``G3 \\ {v0}`` x
    ``G2``, of ``(x_i - x_j)**2`` or ``(x_i + x_j)**2`` per ``variant``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise DimensionMismatch(f"expected a vector of length {g.n}, got shape {x.shape}")
    validate_decomposition(g, d)
    inner = np.fromiter(sorted(d.g3 - {d.v0}), dtype=np.int64)
    sign = -1.0 if Variant(variant) is Variant.LAPLACIAN_MINUS else 1.0

    def side(part):
        cols = np.fromiter(sorted(part), dtype=np.int64)
        t = x[inner][:, None] + sign * x[cols][None, :]
        return float(np.sum(t * t))

    lhs, rhs = side(d.g1), side(d.g2)
    return GraftConditionReport(lhs, rhs, lhs > rhs + eps_cmp(lhs, rhs), Variant(variant))


def eigen_graft_condition(g: Graph, d: BranchDecomposition, variant: Variant) -> GraftConditionReport:
    """:func:`graft_condition` evaluated on ``g``'s own extremal eigenvector."""
    variant = Variant(variant)
    x = rho_L(g).vector if variant is Variant.LAPLACIAN_MINUS else rho_Q(g).vector
    return graft_condition(g, d, x, variant)


def decompositions(g: Graph, v0: Optional[int] = None) -> Iterator[BranchDecomposition]:
    """Every valid decomposition: each branch at ``v0`` goes to one of the
    three parts (none left empty) and ``u`` ranges over ``G2 \\ {v0}``."""
    centres = range(g.n) if v0 is None else (v0,)
    for c in centres:
        branches = branches_at(g, c)
        if len(branches) < 3:
            continue
        for labels in product(range(3), repeat=len(branches)):
            if len(set(labels)) < 3:
                continue
            parts = [frozenset({c}).union(*(b for b, l in zip(branches, labels) if l == j))
                     for j in range(3)]
            for u in sorted(parts[1] - {c}):
                yield BranchDecomposition(c, parts[0], parts[1], parts[2], u)


def pendant_path(g: Graph, u: int, start: int) -> list[int]:
    """Follow the path leaving ``u`` through ``start`` until a leaf.

    Raises ``NotPendantPath`` if a vertex of degree other than 2 is met
    before the end.
    """
    out = [start]
    prev, cur = u, start
    while len(g.adjacency[cur]) == 2:
        nxt = g.adjacency[cur][0] if g.adjacency[cur][1] == prev else g.adjacency[cur][1]
        if nxt == u:
            raise NotPendantPath("path returns to its base vertex")
        prev, cur = cur, nxt
        out.append(cur)
    if len(g.adjacency[cur]) != 1:
        raise NotPendantPath(f"vertex {cur} ends the path with degree {len(g.adjacency[cur])}")
    return out


def _check_pendant(g: Graph, u: int, verts: Sequence[int], label: str) -> None:
    if not verts:
        raise NotPendantPath(f"{label} is empty")
    if any(not 0 <= v < g.n for v in verts):
        raise VertexOutOfRange(f"{label} leaves the graph")
    prev = u
    for j, v in enumerate(verts):
        if not g.has_edge(prev, v):
            raise NotPendantPath(f"{label}: {prev} and {v} are not adjacent")
        want = 1 if j == len(verts) - 1 else 2
        if g.degree(v) != want:
            raise NotPendantPath(f"{label}: vertex {v} has degree {g.degree(v)}, expected {want}")
        prev = v


def shift_pendant_path(g: Graph, u: int, p_path: Sequence[int], q_path: Sequence[int]) -> Graph:
    """G_{p,q} -> G_{p-1,q+1}: move the tip of the shorter pendant path at ``u``
    to the end of the other one. Paths list their vertices outward from ``u``."""
    if not 0 <= u < g.n:
        raise VertexOutOfRange(f"vertex {u} outside 0..{g.n - 1}")
    _check_pendant(g, u, p_path, "p-path")
    _check_pendant(g, u, q_path, "q-path")
    if set(p_path) & set(q_path):
        raise NotPendantPath("the two pendant paths overlap")
    if len(p_path) > len(q_path):
        raise WrongOrder(f"p = {len(p_path)} exceeds q = {len(q_path)}")
    tip = p_path[-1]
    anchor = p_path[-2] if len(p_path) > 1 else u
    edges = [e for e in g.edges() if set(e) != {anchor, tip}]
    edges.append((q_path[-1], tip))
    return from_edge_list(g.n, edges)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{g.n - 1}")
    if u == v:
        raise LoopEdge(f"loop at vertex {u}")
    if g.has_edge(u, v):
        raise AlreadyAdjacent(f"{u} and {v} are already adjacent")
    return from_edge_list(g.n, g.edges() + [(u, v)])
