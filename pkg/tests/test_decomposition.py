import networkx as nx
import pytest

from coopdeg.decomposition import (
    Kind,
    TreeDecomposition,
    check_nice,
    clique_tree,
    elimination_tree_decomposition,
    graphs_to_dot,
    is_chordal,
    make_nice,
    maximal_cliques_chordal,
    perfect_elimination_order,
    td_to_dot,
    validate_td,
)
from coopdeg.errors import ValidationError
from coopdeg.instances import complete_graph, cube_graph

from oracles import random_chordal_graph, to_networkx

CYCLE4 = (0b1010, 0b0101, 0b1010, 0b0101)


def _random_graph(n, seed):
    g = nx.gnp_random_graph(n, 0.4, seed=seed)
    adj = [0] * n
    for u, v in g.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


def test_chordality_matches_networkx():
    for seed in range(300):
        adj = _random_graph(1 + seed % 9, seed)
        assert is_chordal(adj) == nx.is_chordal(to_networkx(adj))
    assert not is_chordal(CYCLE4)
    assert perfect_elimination_order(CYCLE4) is None


def test_cliques_of_chordal_graphs():
    for seed in range(50):
        adj = random_chordal_graph(1 + seed % 10, seed)
        ours = set(maximal_cliques_chordal(adj))
        theirs = {sum(1 << v for v in c) for c in nx.find_cliques(to_networkx(adj))}
        assert ours == theirs


def test_elimination_decomposition_is_valid():
    for seed in range(100):
        adj = _random_graph(1 + seed % 10, seed)
        assert validate_td(adj, elimination_tree_decomposition(adj))
    assert validate_td(CYCLE4, elimination_tree_decomposition(CYCLE4)).width == 2


def test_validation_reasons():
    path = (0b010, 0b101, 0b010)
    ok = TreeDecomposition((0b011, 0b110), ((0, 1),))
    assert validate_td(path, ok).width == 1
    assert not validate_td(path, TreeDecomposition((0b011, 0b100), ((0, 1),)))
    assert not validate_td(path, TreeDecomposition((0b011, 0b110, 0b001), ((0, 1), (1, 2))))
    assert not validate_td(path, TreeDecomposition((0b011, 0b110), ()))


def test_nice_node_rules():
    adj = complete_graph(4)
    ntd = make_nice(clique_tree(adj), adj)
    assert check_nice(ntd, adj) is None
    assert ntd.nodes[ntd.root].bag == 0
    kinds = {node.kind for node in ntd.nodes}
    assert Kind.LEAF in kinds and Kind.INTRODUCE in kinds and Kind.FORGET in kinds
    ntd = make_nice(elimination_tree_decomposition(cube_graph()), cube_graph())
    assert check_nice(ntd, cube_graph()) is None
    assert Kind.JOIN in {node.kind for node in ntd.nodes}


def test_asymmetric_adjacency_rejected():
    with pytest.raises(ValidationError):
        is_chordal((0b10, 0b00))


def test_dot_output():
    assert td_to_dot(clique_tree(complete_graph(3))).startswith("graph")
    text = graphs_to_dot(complete_graph(3), (0b010, 0b001, 0))
    assert "dashed" in text
