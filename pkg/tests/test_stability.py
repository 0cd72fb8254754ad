from fractions import Fraction

import pytest

from coopdeg.dependency import Flavor, dependency_graph, minimal_winning_coalitions
from coopdeg.errors import DomainError, EmptyLeastCore
from coopdeg.game import MwcListGame, WeightedVotingGame
from coopdeg.instances import additive_game, gen_example1, unanimity_game
from coopdeg.stability import (
    NotAnImputation,
    certificate_violation,
    core_simple,
    excess,
    has_imputation,
    imputation_violation,
    least_core_bruteforce,
    least_core_simple,
    separation_oracle_simple,
)

from corpus import veto_wvg


def _sg(g):
    return dependency_graph(g, Flavor.SUPERMODULAR)


def test_example1_least_core():
    g = gen_example1()
    res = least_core_simple(g, _sg(g))
    assert res.epsilon == Fraction(1, 2)
    assert max(excess(g, res.x, s) for s in range(1, g.grand)) == res.epsilon
    assert certificate_violation(g, res) is None
    assert sum(res.weights.values()) == 1
    assert core_simple(g) is None


def test_veto_player_takes_everything():
    g = veto_wvg()
    res = least_core_simple(g, _sg(g))
    assert res.epsilon == 0
    assert core_simple(g) == [1, 0, 0]


def test_unanimity_core_is_uniform():
    g = unanimity_game(3)
    assert least_core_bruteforce(g).epsilon == Fraction(-1, 3)
    assert core_simple(g) == [Fraction(1, 3)] * 3


def test_single_player():
    assert least_core_bruteforce(MwcListGame(1, [{0}])).epsilon == 0


def test_empty_least_core():
    g = MwcListGame(3, [{0}, {1}])
    assert not has_imputation(g)
    with pytest.raises(EmptyLeastCore):
        least_core_simple(g, _sg(g))


def test_separation_oracle():
    g = gen_example1()
    x = [Fraction(1, 4)] * 4
    assert separation_oracle_simple(g, g.mwcs, x, Fraction(1, 2)) is None
    assert separation_oracle_simple(g, g.mwcs, x, Fraction(1, 4)) == 0b11
    with pytest.raises(NotAnImputation):
        separation_oracle_simple(g, g.mwcs, [1, 1, 0, 0], Fraction(1))


def test_excess_and_imputations():
    g = additive_game([1, 2])
    assert excess(g, [1, 2], 0b01) == 0
    assert imputation_violation(g, [Fraction(3, 2), Fraction(3, 2)]) is not None
    with pytest.raises(DomainError):
        excess(g, [1, 2], 0)


def test_non_simple_rejected_by_reduced_route():
    g = additive_game([1, 2])
    with pytest.raises(DomainError):
        least_core_simple(g, _sg(g))
    assert least_core_bruteforce(g).epsilon == 0


def test_certificate_catches_a_tampered_result():
    g = WeightedVotingGame([2, 1, 1], 3)
    res = least_core_bruteforce(g)
    bad = type(res)(res.epsilon - Fraction(1, 10), res.x, res.binding, res.weights, res.rationality, res.budget)
    assert certificate_violation(g, bad) is not None


def test_lowering_epsilon_exposes_a_violation():
    for g in (gen_example1(), veto_wvg(), WeightedVotingGame([3, 2, 2, 1], 5)):
        sg = _sg(g)
        mwcs = minimal_winning_coalitions(g, sg)
        res = least_core_simple(g, sg)
        for k in range(6):
            assert separation_oracle_simple(g, mwcs, res.x, res.epsilon - Fraction(1, 2**k)) is not None
