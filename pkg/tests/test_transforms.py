import math

import numpy as np
import pytest
from conftest import connected_graphs
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import graft_sums

from distlap import (
    BranchDecomposition,
    Ordering,
    Variant,
    add_edge,
    compare_rho,
    decompositions,
    eigen_graft_condition,
    from_edge_list,
    graft_condition,
    move_branch,
    path,
    rho_L,
    rho_Q,
    shift_pendant_path,
    spider,
    star,
    tree_canonical_form,
)
from distlap.errors import (
    AlreadyAdjacent,
    DimensionMismatch,
    InvalidDecomposition,
    LoopEdge,
    NotPendantPath,
    WrongOrder,
)
from distlap.transforms import branches_at, pendant_path

K3 = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])


def same_tree(a, b):
    return tree_canonical_form(a) == tree_canonical_form(b)


def test_move_leaf_to_end_of_long_leg():
    # spider(1,1,2): centre 0, legs {1}, {2}, {3,4}
    g = spider(1, 1, 2)
    d = BranchDecomposition.of(0, [2], [3, 4], [1], 4)
    assert same_tree(move_branch(g, d), path(5))


def test_move_back_is_an_inverse_up_to_isomorphism():
    g = spider(2, 1, 1, 1)  # centre 0, legs {1,2}, {3}, {4}, {5}
    d = BranchDecomposition.of(0, [3, 5], [1, 2], [4], 1)
    moved = move_branch(g, d)
    back = BranchDecomposition.of(1, [2], [0, 3, 5], [4], 0)
    assert same_tree(move_branch(moved, back), g)


def test_pendant_edge_slide():
    g = star(5)
    d = BranchDecomposition.of(0, [2, 4], [1], [3], 1)
    moved = move_branch(g, d)
    assert moved.degree(0) == 3 and moved.degree(1) == 2 and moved.has_edge(1, 3)


def test_invalid_decompositions():
    g = spider(1, 1, 2)
    with pytest.raises(InvalidDecomposition):
        move_branch(g, BranchDecomposition.of(0, [2], [3, 4], [1], 0))
    with pytest.raises(InvalidDecomposition):
        move_branch(g, BranchDecomposition.of(0, [2], [3], [1, 4], 3))
    with pytest.raises(InvalidDecomposition):
        move_branch(g, BranchDecomposition.of(0, [2, 3], [3, 4], [1], 4))
    with pytest.raises(InvalidDecomposition):
        move_branch(g, BranchDecomposition.of(0, [], [3, 4], [1, 2], 4))


def test_decomposition_count_on_a_star():
    ds = list(decompositions(star(4)))
    assert len(ds) == 6
    assert all(d.v0 == 0 for d in ds)
    assert list(decompositions(path(5))) == []


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=4, max_n=8))
def test_move_branch_preserves_size_and_connectivity(g):
    for d in list(decompositions(g))[:30]:
        moved = move_branch(g, d)
        assert moved.n == g.n and moved.edge_count == g.edge_count


def test_branches_at():
    assert branches_at(spider(1, 2), 0) == [frozenset({1}), frozenset({2, 3})]


def test_condition_trivial_vectors():
    g = spider(1, 1, 2)
    d = BranchDecomposition.of(0, [2], [3, 4], [1], 4)
    rep = graft_condition(g, d, np.full(5, 0.3), Variant.LAPLACIAN_MINUS)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.holds and not rep.strict
    rep = graft_condition(g, d, np.ones(5), Variant.SIGNLESS_PLUS)
    assert rep.lhs == 4 * 1 * 2 and rep.rhs == 4 * 1 * 3
    assert not rep.holds
    with pytest.raises(DimensionMismatch):
        graft_condition(g, d, np.ones(4), Variant.SIGNLESS_PLUS)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=7, max_size=7), st.sampled_from(list(Variant)))
def test_condition_matches_nested_loops(x, variant):
    # order 7: centre 0 with legs {1,2}, {3}, {4,5,6}
    g = from_edge_list(7, [(0, 1), (1, 2), (0, 3), (0, 4), (4, 5), (5, 6)])
    d = BranchDecomposition.of(0, [3], [4, 5, 6], [1, 2], 5)
    rep = graft_condition(g, d, x, variant)
    sign = -1 if variant is Variant.LAPLACIAN_MINUS else 1
    lhs, rhs = graft_sums(x, 0, d.g1, d.g2, d.g3, sign)
    assert rep.lhs == pytest.approx(lhs, rel=1e-12, abs=1e-12)
    assert rep.rhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)
    assert rep.lhs >= 0 and rep.rhs >= 0


def test_eigen_condition_uses_own_vector():
    g = spider(1, 1, 2)
    d = BranchDecomposition.of(0, [2], [3, 4], [1], 4)
    direct = graft_condition(g, d, rho_Q(g).vector, Variant.SIGNLESS_PLUS)
    assert eigen_graft_condition(g, d, Variant.SIGNLESS_PLUS) == direct


def test_shift_examples():
    assert same_tree(shift_pendant_path(star(4), 0, [1], [2]), path(4))
    g = spider(2, 2, 1)  # legs [1,2], [3,4], [5]
    assert same_tree(shift_pendant_path(g, 0, [1, 2], [3, 4]), spider(3, 1, 1))
    assert pendant_path(g, 0, 3) == [3, 4]


def test_shift_errors():
    g = spider(1, 2, 1)  # legs [1], [2,3], [4]
    with pytest.raises(NotPendantPath):
        shift_pendant_path(g, 0, [], [2, 3])
    with pytest.raises(WrongOrder):
        shift_pendant_path(g, 0, [2, 3], [1])
    with pytest.raises(NotPendantPath):
        shift_pendant_path(g, 0, [2], [1])
    with pytest.raises(NotPendantPath):
        shift_pendant_path(g, 0, [1], [1])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(2, 5))
def test_shift_raises_both_radii(p, extra, base):
    from distlap import attach_pendant_paths

    q = p + extra
    g = attach_pendant_paths(path(base), 0, p, q)
    p_path = list(range(base, base + p))
    q_path = list(range(base + p, base + p + q))
    shifted = shift_pendant_path(g, 0, p_path, q_path)
    assert compare_rho(rho_L(shifted), rho_L(g)) is Ordering.GREATER
    assert compare_rho(rho_Q(shifted), rho_Q(g)) is Ordering.GREATER


def test_add_edge_closes_a_triangle():
    k3 = add_edge(path(3), 0, 2)
    assert k3 == K3
    assert rho_L(path(3)).rho == pytest.approx(5, abs=1e-8)
    assert rho_L(k3).rho == pytest.approx(3, abs=1e-8)
    assert rho_Q(path(3)).rho == pytest.approx((7 + math.sqrt(17)) / 2, abs=1e-8)
    assert rho_Q(k3).rho == pytest.approx(4, abs=1e-8)
    with pytest.raises(AlreadyAdjacent):
        add_edge(path(3), 0, 1)
    with pytest.raises(LoopEdge):
        add_edge(path(3), 1, 1)
