import networkx as nx
import pytest
from oracles import pruefer_free_trees, subset_scan, tree_key

from distlap import (
    GraphClassQuery,
    TreeClassQuery,
    connected_graphs_with_k_pendants,
    degrees_and_pendants,
    free_trees,
    nonisomorphic_connected_graphs,
    path,
    spider,
    star,
    tree_canonical_form,
    trees_with_k_leaves,
)
from distlap.enumeration import TREE_COUNTS, connected_masks, free_tree_level_sequences
from distlap.errors import OutOfRange

TREES_1_TO_10 = (1, 1, 1, 2, 3, 6, 11, 23, 47, 106)
# connected labeled graphs and connected unlabeled graphs on n vertices
LABELED_CONNECTED = {1: 1, 2: 1, 3: 4, 4: 38, 5: 728, 6: 26704, 7: 1866256}
UNLABELED_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def keys(graphs):
    return sorted(tree_key(g.n, g.edges()) for g in graphs)


def test_tree_counts_up_to_ten():
    assert tuple(sum(1 for _ in free_trees(n)) for n in range(1, 11)) == TREES_1_TO_10


@pytest.mark.parametrize("n", range(11, 17))
def test_larger_tree_counts(n):
    assert sum(1 for _ in free_trees(n)) == TREE_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_trees_match_pruefer_oracle(n):
    oracle = sorted(tree_key(n, es) for es in pruefer_free_trees(n))
    assert keys(free_trees(n)) == oracle


@pytest.mark.slow
def test_trees_match_pruefer_oracle_order_8():
    oracle = sorted(tree_key(8, es) for es in pruefer_free_trees(8))
    assert len(oracle) == 23
    assert keys(free_trees(8)) == oracle


@pytest.mark.parametrize("n", range(9, 13))
def test_trees_match_networkx_generator(n):
    ref = sorted(tree_key(n, list(t.edges())) for t in nx.nonisomorphic_trees(n))
    assert keys(free_trees(n)) == ref


@pytest.mark.parametrize("n", range(2, 15))
def test_no_duplicate_trees_and_leaf_classes_partition(n):
    trees = list(free_trees(n))
    forms = {tree_canonical_form(t) for t in trees}
    assert len(forms) == len(trees)
    assert all(t.is_tree() and t.n == n for t in trees)
    if n >= 3:
        by_k = sum(sum(1 for _ in trees_with_k_leaves(TreeClassQuery(n, k))) for k in range(2, n))
        assert by_k == len(trees)


def test_leaf_class_examples():
    six_three = list(trees_with_k_leaves(TreeClassQuery(6, 3)))
    assert sorted(tree_canonical_form(t) for t in six_three) == sorted(
        tree_canonical_form(t) for t in (spider(3, 1, 1), spider(2, 2, 1)))
    (s5,) = trees_with_k_leaves(TreeClassQuery(5, 4))
    assert tree_canonical_form(s5) == tree_canonical_form(star(5))
    (p6,) = trees_with_k_leaves(TreeClassQuery(6, 2))
    assert tree_canonical_form(p6) == tree_canonical_form(path(6))


def test_streams_are_deterministic():
    assert list(free_tree_level_sequences(9)) == list(free_tree_level_sequences(9))
    a = list(connected_graphs_with_k_pendants(GraphClassQuery(5, 2)))
    assert a == list(connected_graphs_with_k_pendants(GraphClassQuery(5, 2)))


def test_query_validation():
    with pytest.raises(OutOfRange):
        TreeClassQuery(21)
    with pytest.raises(OutOfRange):
        TreeClassQuery(6, 6)
    with pytest.raises(OutOfRange):
        GraphClassQuery(8, 2)
    with pytest.raises(OutOfRange):
        GraphClassQuery(9, 2, cap=9)
    with pytest.raises(OutOfRange):
        list(free_trees(0))
    with pytest.raises(OutOfRange):
        list(nonisomorphic_connected_graphs(8))


def test_small_pendant_classes():
    p3s = list(connected_graphs_with_k_pendants(GraphClassQuery(3, 2)))
    assert len(p3s) == 3 and all(g.is_tree() for g in p3s)
    assert list(connected_graphs_with_k_pendants(GraphClassQuery(3, 3))) == []


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("k", range(0, 5))
def test_pendant_classes_match_subset_scan(n, k):
    got = sorted(tuple(g.edges()) for g in connected_graphs_with_k_pendants(GraphClassQuery(n, k)))
    assert got == sorted(subset_scan(n, k))
    for g in connected_graphs_with_k_pendants(GraphClassQuery(n, k)):
        assert len(degrees_and_pendants(g)[1]) == k


@pytest.mark.parametrize("n", range(1, 8))
def test_labeled_connected_counts(n):
    assert sum(m.size for m in connected_masks(n)) == LABELED_CONNECTED[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_unlabeled_connected_counts(n):
    assert sum(1 for _ in nonisomorphic_connected_graphs(n)) == UNLABELED_CONNECTED[n]
