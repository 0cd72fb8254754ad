import pytest

from coopdeg.dependency import (
    DependencyGraph,
    Flavor,
    degrees,
    dependency_graph,
    dependency_witness,
    depends,
    depends_hypergraph,
    depends_isg,
    is_dummy,
    is_dummy_bruteforce,
    minimal_winning_coalitions,
    positively_depends,
    positively_depends_wvg,
    veto_players,
)
from coopdeg.errors import DomainError
from coopdeg.game import HypergraphGame, InducedSubgraphGame, MwcListGame, WeightedVotingGame
from coopdeg.instances import additive_game, gen_example1

from corpus import random_simple_games, random_wvgs, veto_wvg


def test_additive_game_has_no_edges():
    g = additive_game([3, 0, 5, 1])
    assert dependency_graph(g).edges() == []
    assert is_dummy(g, dependency_graph(g), 1)


def test_isg_edges_follow_weights():
    g = InducedSubgraphGame(3, [(0, 1, 2), (1, 2, -1)])
    assert depends_isg(g, 0, 1) == (True, True)
    assert depends_isg(g, 1, 2) == (True, False)
    assert depends_isg(g, 0, 2) == (False, False)
    assert dependency_graph(g, Flavor.SUPERMODULAR).edges() == [(0, 1)]


def test_hypergraph_detector_matches_brute_force():
    g = HypergraphGame(4, [({0, 1, 2}, 2), ({0, 1}, -2), ({2, 3}, 1)])
    for i in range(4):
        for j in range(i + 1, 4):
            assert depends_hypergraph(g, i, j) == (depends(g, i, j), positively_depends(g, i, j))


def test_witness_is_a_real_witness():
    g = gen_example1()
    s = dependency_witness(g, 0, 1, positive=True)
    v = g.v
    assert s is not None
    a, b = 1 << 0, 1 << 1
    assert v(s | a | b) - v(s | b) > v(s | a) - v(s)
    assert dependency_witness(additive_game([1, 2]), 0, 1) is None


def test_wvg_auto_matches_brute():
    g = WeightedVotingGame([4, 3, 2, 1, 0], 5)
    for flavor in Flavor:
        assert dependency_graph(g, flavor) == dependency_graph(g, flavor, method="brute")


def test_veto_players():
    assert veto_players(veto_wvg()) == frozenset({0})
    assert veto_players(gen_example1()) == frozenset()


def test_mwcs_from_supermodular_graph():
    for g in random_simple_games(30, seed=11, n_max=8):
        sg = dependency_graph(g, Flavor.SUPERMODULAR)
        assert sorted(minimal_winning_coalitions(g, sg)) == sorted(g.mwcs)


def test_dummy_checks():
    g = MwcListGame(3, [{0, 1}])
    dg = dependency_graph(g)
    assert [is_dummy(g, dg, i) for i in range(3)] == [False, False, True]
    assert is_dummy_bruteforce(g, 2)


def test_graph_type_checks():
    assert degrees(DependencyGraph.from_edges(3, [(0, 1), (1, 2)])) == ([1, 2, 1], 2)
    with pytest.raises(DomainError):
        depends(gen_example1(), 0, 0)


def test_wvg_positive_window_matches_brute_force():
    for g in random_wvgs(60, seed=21, n_max=9):
        for i in range(g.n):
            for j in range(i + 1, g.n):
                assert positively_depends_wvg(g, i, j) == positively_depends(g, i, j)
