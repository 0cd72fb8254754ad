import pytest

from coopdeg.dependency import Flavor, degrees, dependency_graph
from coopdeg.errors import ValidationError
from coopdeg.game import check_simple
from coopdeg.instances import (
    cube_graph,
    gen_is_hypergraph,
    gen_random_explicit,
    gen_random_hypergraph,
    gen_random_isg,
    gen_random_simple,
    gen_random_wvg,
    gen_x3c_game,
)


def test_generators_are_deterministic():
    for make in (
        lambda s: gen_random_wvg(7, 9, seed=s),
        lambda s: gen_random_wvg(7, 9, quota_rule="uniform", seed=s),
        lambda s: gen_random_simple(7, 3, 5, seed=s),
        lambda s: gen_random_isg(7, seed=s),
        lambda s: gen_random_hypergraph(7, 6, seed=s),
        lambda s: gen_random_explicit(4, seed=s, den=3),
    ):
        assert make(12) == make(12)
    assert gen_random_wvg(7, 9, seed=1) != gen_random_wvg(7, 9, seed=2)


def test_half_quota():
    g = gen_random_wvg(6, 10, seed=4)
    assert g.quota == max(1, (sum(g.weights) + 1) // 2)


def test_random_simple_is_simple():
    g = gen_random_simple(6, 3, 8, seed=0)
    assert check_simple(g)


def test_x3c_validation():
    with pytest.raises(ValidationError):
        gen_x3c_game(range(4), [])
    with pytest.raises(ValidationError):
        gen_x3c_game(range(3), [(0, 1, 1)])
    with pytest.raises(ValidationError):
        gen_x3c_game(range(3), [(0, 1, 7)])
    many = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (0, 7, 8)]
    with pytest.raises(ValidationError):
        gen_x3c_game(range(9), many)
    g = gen_x3c_game("abcdef", [("a", "b", "c"), ("c", "b", "a")])
    assert g.mwcs == (0b111,)


def test_cube_hypergraph():
    g, x = gen_is_hypergraph(cube_graph())
    assert g.n == 18
    assert sum(x) == 16
    assert x[-2:] == (0, 0)
    assert degrees(dependency_graph(g, Flavor.SUPERMODULAR))[1] == 1


def test_is_hypergraph_rejects_irregular_graphs():
    with pytest.raises(ValidationError):
        gen_is_hypergraph((0b10, 0b01))
