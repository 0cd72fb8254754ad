"""Seeded game families shared by the test modules."""

from coopdeg.game import WeightedVotingGame
from coopdeg.instances import (
    additive_game,
    gen_example1,
    gen_random_explicit,
    gen_random_hypergraph,
    gen_random_isg,
    gen_random_simple,
    gen_random_wvg,
)
from coopdeg.rng import Xoshiro256


def veto_wvg():
    return WeightedVotingGame([2, 1, 1], 3)


def named_fixtures():
    return {
        "example1": gen_example1(),
        "veto": veto_wvg(),
        "additive": additive_game([3, 0, 5, 1]),
    }


def mixed_games(count, seed, n_max=10):
    """Round-robin over the five backends with sizes drawn from [1, n_max]."""
    rng = Xoshiro256(seed)
    out = []
    for k in range(count):
        n = rng.randint(1, n_max)
        s = rng.next_u64()
        kind = k % 5
        if kind == 0:
            out.append(gen_random_wvg(n, rng.randint(0, 20), ("half", "uniform")[k % 2], s))
        elif kind == 1:
            out.append(gen_random_simple(n, rng.randint(1, 4), rng.randint(0, 6), s))
        elif kind == 2:
            out.append(gen_random_isg(n, (1, rng.randint(1, 4)), seed=s))
        elif kind == 3:
            out.append(gen_random_hypergraph(n, rng.randint(0, 8), rng.randint(1, 4), seed=s))
        else:
            out.append(gen_random_explicit(min(n, 8), rng.randint(1, 9), seed=s, den=rng.randint(1, 3)))
    return out


def random_wvgs(count, seed, n_max=12, w_max=20):
    rng = Xoshiro256(seed)
    return [
        gen_random_wvg(rng.randint(1, n_max), rng.randint(0, w_max), ("half", "uniform")[rng.below(2)], rng.next_u64())
        for _ in range(count)
    ]


def random_simple_games(count, seed, n_max=10):
    rng = Xoshiro256(seed)
    return [
        gen_random_simple(rng.randint(1, n_max), rng.randint(1, 5), rng.randint(0, 8), rng.next_u64())
        for _ in range(count)
    ]
