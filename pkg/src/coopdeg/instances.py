"""Fixture games and seeded random instance families."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .decomposition import adjacency_of, graph_edges
from .dependency import Flavor, degrees, dependency_graph
from .errors import InvariantViolation, ValidationError
from .game import (
    MAX_PLAYERS,
    ExplicitGame,
    HypergraphGame,
    InducedSubgraphGame,
    MwcListGame,
    WeightedVotingGame,
    popcount,
)
from .rng import Xoshiro256

QUOTA_RULES = ("half", "uniform")


# -- fixtures ----------------------------------------------------------------

def gen_example1() -> MwcListGame:
    """Four players whose minimal winning coalitions form the cycle 0-1-2-3-0."""
    return MwcListGame(4, [{0, 1}, {1, 2}, {2, 3}, {0, 3}])


def additive_game(weights: Sequence) -> HypergraphGame:
    """``v(S) = sum of weights[i] over i in S``, as rank-one hyperedges."""
    return HypergraphGame(len(weights), [({i}, w) for i, w in enumerate(weights) if w])


def unanimity_game(n: int) -> MwcListGame:
    return MwcListGame(n, [range(n)])


def zero_game(n: int) -> MwcListGame:
    return MwcListGame(n, [])


def gen_x3c_game(elements: Sequence[Hashable], triples: Iterable[Iterable[Hashable]]) -> MwcListGame:
    """Simple game won by any coalition that contains one of the triples.

    Players are the elements in the given order.  Each element may occur in
    at most three triples, which keeps the supermodular degree at most six.
    """
    elements = list(elements)
    index = {e: k for k, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ValidationError("elements must be distinct")
    if len(elements) % 3:
        raise ValidationError(f"need a multiple of three elements, got {len(elements)}")
    masks = []
    count = [0] * len(elements)
    for t in triples:
        t = list(t)
        if len(set(t)) != 3 or len(t) != 3:
            raise ValidationError(f"triple {t!r} must have three distinct elements")
        missing = [e for e in t if e not in index]
        if missing:
            raise ValidationError(f"triple {t!r} uses unknown elements {missing!r}")
        mask = sum(1 << index[e] for e in t)
        if mask in masks:
            continue
        masks.append(mask)
        for e in t:
            count[index[e]] += 1
    busy = [elements[k] for k, c in enumerate(count) if c > 3]
    if busy:
        raise ValidationError(f"elements {busy!r} occur in more than three triples")
    g = MwcListGame(len(elements), masks)
    _, p = degrees(dependency_graph(g, Flavor.SUPERMODULAR))
    if p > 6:
        raise InvariantViolation(f"triple game has supermodular degree {p} > 6")
    return g


def gen_is_hypergraph(graph) -> tuple[HypergraphGame, tuple[Fraction, ...]]:
    """Hypergraph game built from a 3-regular graph, with its canonical imputation.

    Vertex ``u`` becomes players ``2u`` and ``2u + 1`` joined by a weight-3
    edge; players ``2|V|`` and ``2|V| + 1`` share an edge of weight
    ``|V|/2``; each graph edge ``uv`` becomes a weight ``-1`` hyperedge on the
    four players of ``u`` and ``v``.  The imputation pays 1 to every vertex
    player and 0 to the last two.
    """
    adj = adjacency_of(graph)
    size = len(adj)
    bad = [u for u in range(size) if popcount(adj[u]) != 3]
    if bad or size == 0:
        raise ValidationError(f"graph must be 3-regular; vertices {bad} are not of degree 3")
    n = 2 * size + 2
    if n > MAX_PLAYERS:
        raise ValidationError(f"graph gives {n} players, above the {MAX_PLAYERS}-player cap")
    edges = [({2 * u, 2 * u + 1}, 3) for u in range(size)]
    edges.append(({n - 2, n - 1}, Fraction(size, 2)))
    for u, w in graph_edges(adj):
        edges.append(({2 * u, 2 * u + 1, 2 * w, 2 * w + 1}, -1))
    x_star = tuple(Fraction(1) if k < n - 2 else Fraction(0) for k in range(n))
    return HypergraphGame(n, edges), x_star


def complete_graph(k: int) -> tuple[int, ...]:
    full = (1 << k) - 1
    return tuple(full & ~(1 << v) for v in range(k))


def cube_graph() -> tuple[int, ...]:
    """The 3-cube on vertices 0..7 (neighbours differ in one bit)."""
    return tuple(sum(1 << (v ^ (1 << b)) for b in range(3)) for v in range(8))


# -- random families -----------------------------------------------------------

def gen_random_wvg(n: int, w_max: int, quota_rule: str = "half", seed: int = 0) -> WeightedVotingGame:
    """Weights uniform in ``[0, w_max]``.

    ``quota_rule="half"`` sets the quota to half the total weight rounded up
    (at least 1); ``"uniform"`` draws it from ``[1, total]``.
    """
    if not 1 <= n <= MAX_PLAYERS:
        raise ValidationError(f"n must be in [1, {MAX_PLAYERS}]")
    if w_max < 0:
        raise ValidationError("w_max must be non-negative")
    if quota_rule not in QUOTA_RULES:
        raise ValidationError(f"quota rule must be one of {QUOTA_RULES}")
    rng = Xoshiro256(seed)
    weights = [rng.randint(0, w_max) for _ in range(n)]
    total = sum(weights)
    if quota_rule == "half":
        quota = max(1, (total + 1) // 2)
    else:
        quota = rng.randint(1, max(total, 1))
    return WeightedVotingGame(weights, quota)


def gen_random_simple(n: int, max_mwc_size: int, count: int, seed: int = 0) -> MwcListGame:
    """Random coalitions of size ``1..max_mwc_size`` reduced to an antichain.

    Candidates are considered smallest first; a candidate containing an
    already kept coalition is dropped.
    """
    if not 1 <= n <= 20:
        raise ValidationError("n must be in [1, 20]")
    if max_mwc_size < 1 or count < 0:
        raise ValidationError("max_mwc_size must be positive and count non-negative")
    rng = Xoshiro256(seed)
    drawn = []
    for _ in range(count):
        size = rng.randint(1, min(max_mwc_size, n))
        drawn.append(sum(1 << k for k in rng.sample(range(n), size)))
    kept: list[int] = []
    for c in sorted(drawn, key=lambda m: (popcount(m), m)):
        if not any(k & c == k for k in kept):
            kept.append(c)
    return MwcListGame(n, kept)


def gen_random_isg(n: int, density: tuple[int, int] = (1, 2), w_range: tuple[int, int] = (-3, 5), seed: int = 0) -> InducedSubgraphGame:
    """Each pair becomes an edge with probability ``density[0]/density[1]``."""
    rng = Xoshiro256(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.chance(*density):
                w = rng.randint(*w_range)
                if w:
                    edges.append((i, j, w))
    return InducedSubgraphGame(n, edges)


def gen_random_hypergraph(n: int, count: int, max_rank: int = 3, w_range: tuple[int, int] = (-2, 4), seed: int = 0) -> HypergraphGame:
    rng = Xoshiro256(seed)
    edges = []
    for _ in range(count):
        size = rng.randint(1, min(max_rank, n))
        w = rng.randint(*w_range)
        if w:
            edges.append((rng.sample(range(n), size), w))
    return HypergraphGame(n, edges)


def gen_random_explicit(n: int, max_value: int = 10, seed: int = 0, den: int = 1) -> ExplicitGame:
    """Arbitrary table with values ``k/den``, ``k`` uniform in ``[-max_value, max_value]``."""
    rng = Xoshiro256(seed)
    values = [0] + [Fraction(rng.randint(-max_value, max_value), den) for _ in range((1 << n) - 1)]
    return ExplicitGame(n, values)
