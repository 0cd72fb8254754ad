"""Dependency detection and the two dependency graphs of a game.

Player ``i`` depends on ``j`` when some coalition ``S`` avoiding both has
``v(i | S + j) != v(i | S)``; the dependence is positive when the marginal
strictly increases.  The full graph ``G`` joins dependent pairs, the
supermodular graph ``G+`` joins positively dependent pairs.

Brute-force detectors enumerate ``S`` by size, then lexicographically, and
stop at the first witness.  Representation-specific detectors avoid the
enumeration:

* induced subgraph games read the edge weight directly;
* hypergraph games only need the coalitions inside the union of the
  hyperedges that contain both players;
* weighted voting games use one subset-sum reachability table per pair;
* lists of minimal winning coalitions give ``G+`` as co-membership.

The weighted-voting supermodular test is an extension: it reuses the
"``S + i + j`` wins while ``S + i`` and ``S + j`` lose" window, which for
simple games is exactly positive dependence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import DomainError
from .game import (
    Coalition,
    Game,
    HypergraphGame,
    InducedSubgraphGame,
    MwcListGame,
    WeightedVotingGame,
    guard,
    is_simple,
    members,
    player_index,
    require_simple,
    sort_key,
    submasks,
    value_oracle,
)


class Flavor(str, enum.Enum):
    FULL = "full"
    SUPERMODULAR = "supermodular"


@dataclass(frozen=True)
class DependencyGraph:
    """Undirected graph on players; ``adjacency[i]`` is a neighbour bitmask."""

    n: int
    flavor: Flavor
    adjacency: tuple[int, ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise DomainError("adjacency must list one neighbour mask per player")
        for i, nb in enumerate(self.adjacency):
            if nb >> i & 1:
                raise DomainError(f"self-loop on player {i}")
            if nb >> self.n:
                raise DomainError(f"player {i} has neighbours outside [0, {self.n})")
            for j in members(nb):
                if not self.adjacency[j] >> i & 1:
                    raise DomainError(f"adjacency is not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], flavor=Flavor.FULL):
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise DomainError(f"self-loop on player {i}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, Flavor(flavor), tuple(adj))

    def neighbors(self, i: int) -> Coalition:
        return self.adjacency[i]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in members(self.adjacency[i]) if i < j]

    def is_subgraph_of(self, other: "DependencyGraph") -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.adjacency, other.adjacency))


def degrees(dg: DependencyGraph) -> tuple[list[int], int]:
    """Per-player neighbourhood sizes and their maximum (``d`` or ``p``)."""
    per = [bin(nb).count("1") for nb in dg.adjacency]
    return per, max(per, default=0)


# -- brute-force detectors ---------------------------------------------------

def _pair(g: Game, i, j) -> tuple[int, int]:
    i, j = player_index(i, g.n), player_index(j, g.n)
    if i == j:
        raise DomainError("dependency is defined between two distinct players")
    return i, j


def _coalitions_avoiding(n: int, i: int, j: int):
    others = [k for k in range(n) if k != i and k != j]
    for size in range(len(others) + 1):
        for combo in combinations(others, size):
            mask = 0
            for k in combo:
                mask |= 1 << k
            yield mask


def dependency_witness(g: Game, i: int, j: int, positive: bool = False) -> Coalition | None:
    """Smallest (then lexicographically least) ``S`` witnessing the dependence.

    Returns ``None`` when ``i`` does not (positively) depend on ``j``.
    """
    i, j = _pair(g, i, j)
    guard("dependency detection", g.n)
    v = value_oracle(g)
    bi, bj = 1 << i, 1 << j
    for s in _coalitions_avoiding(g.n, i, j):
        delta = v(s | bi | bj) - v(s | bj) - v(s | bi) + v(s)
        if delta > 0 or (delta and not positive):
            return s
    return None


def depends(g: Game, i: int, j: int) -> bool:
    return dependency_witness(g, i, j) is not None


def positively_depends(g: Game, i: int, j: int) -> bool:
    return dependency_witness(g, i, j, positive=True) is not None


def winning_pair_witness(g: Game, i: int, j: int) -> Coalition | None:
    """In a simple game: ``S`` with ``S+i+j`` winning and ``S+i``, ``S+j`` losing."""
    i, j = _pair(g, i, j)
    require_simple(g, "positively_depends_simple")
    guard("dependency detection", g.n)
    v = value_oracle(g)
    bi, bj = 1 << i, 1 << j
    for s in _coalitions_avoiding(g.n, i, j):
        if v(s | bi | bj) == 1 and v(s | bi) == 0 and v(s | bj) == 0:
            return s
    return None


def positively_depends_simple(g: Game, i: int, j: int) -> bool:
    return winning_pair_witness(g, i, j) is not None


# -- representation-specific detectors ---------------------------------------

def _reachable_weights(g: WeightedVotingGame, i: int, j: int) -> int:
    """Bitset whose bit ``s`` is set iff some ``S`` avoiding ``i, j`` weighs ``s``."""
    reach = 1
    for k, w in enumerate(g.weights):
        if k != i and k != j and w:
            reach |= reach << w
    return reach


def _hits(reach: int, lo: int, hi: int) -> bool:
    lo = max(lo, 0)
    if hi <= lo:
        return False
    return bool((reach >> lo) & ((1 << (hi - lo)) - 1))


def depends_wvg(g: WeightedVotingGame, i: int, j: int) -> bool:
    """Pseudo-polynomial dependence test for weighted voting games.

    ``i`` depends on ``j`` iff some ``S`` avoiding both has weight in
    ``[q - wi - wj, min(q - wi, q - wj))`` (``S+i+j`` wins, ``S+i`` and ``S+j``
    lose) or in ``[max(q - wi, q - wj), q)`` (``S+i`` and ``S+j`` win, ``S``
    loses).  A zero quota makes every non-empty coalition win, so ``S`` empty
    satisfies the second condition.
    """
    i, j = _pair(g, i, j)
    q, wi, wj = g.quota, g.weights[i], g.weights[j]
    if q == 0:
        return True
    reach = _reachable_weights(g, i, j)
    return _hits(reach, q - wi - wj, min(q - wi, q - wj)) or _hits(reach, max(q - wi, q - wj), q)


def positively_depends_wvg(g: WeightedVotingGame, i: int, j: int) -> bool:
    """Positive dependence in a weighted voting game: the first window only."""
    i, j = _pair(g, i, j)
    q, wi, wj = g.quota, g.weights[i], g.weights[j]
    if q == 0:
        return False
    return _hits(_reachable_weights(g, i, j), q - wi - wj, min(q - wi, q - wj))


def depends_isg(g: InducedSubgraphGame, i: int, j: int) -> tuple[bool, bool]:
    """``(depends, positively depends)`` read off the edge weight."""
    i, j = _pair(g, i, j)
    w = g.edge_weight(i, j)
    return w != 0, w > 0


def depends_hypergraph(g: HypergraphGame, i: int, j: int) -> tuple[bool, bool]:
    """``(depends, positively depends)`` for a hypergraph game.

    ``v(i | S+j) - v(i | S)`` is the weight of the hyperedges that contain both
    players and lie inside ``S+i+j``, so only ``S`` inside the union of those
    hyperedges matters.
    """
    i, j = _pair(g, i, j)
    both = (1 << i) | (1 << j)
    shared = [(e, w) for e, w in g.hyperedges if e & both == both]
    scope = 0
    for e, _ in shared:
        scope |= e
    scope &= ~both
    dep = pos = False
    for s in submasks(scope):
        full = s | both
        delta = sum(w for e, w in shared if e & full == e)
        if delta:
            dep = True
            if delta > 0:
                pos = True
                break
    return dep, pos


# -- graphs ------------------------------------------------------------------

def _detector(g: Game, flavor: Flavor, method: str):
    positive = flavor is Flavor.SUPERMODULAR
    if method == "brute":
        return lambda i, j: dependency_witness(g, i, j, positive) is not None
    if method != "auto":
        raise DomainError(f"unknown detection method {method!r}")
    if isinstance(g, InducedSubgraphGame):
        return lambda i, j: depends_isg(g, i, j)[positive]
    if isinstance(g, HypergraphGame):
        return lambda i, j: depends_hypergraph(g, i, j)[positive]
    if isinstance(g, WeightedVotingGame):
        return (lambda i, j: positively_depends_wvg(g, i, j)) if positive else (lambda i, j: depends_wvg(g, i, j))
    if positive and is_simple(g):
        return lambda i, j: positively_depends_simple(g, i, j)
    return lambda i, j: dependency_witness(g, i, j, positive) is not None


def dependency_graph(g: Game, flavor: Flavor | str = Flavor.FULL, method: str = "auto") -> DependencyGraph:
    """Build ``G`` (``flavor="full"``) or ``G+`` (``flavor="supermodular"``).

    ``method="auto"`` picks the cheapest exact detector for the backend;
    ``method="brute"`` forces the definitional enumeration.
    """
    flavor = Flavor(flavor)
    n = g.n
    if method == "auto" and flavor is Flavor.SUPERMODULAR and isinstance(g, MwcListGame):
        # Positive dependence in a simple game is co-membership in a minimal winning coalition.
        adj = [0] * n
        for m in g.mwcs:
            for i in members(m):
                adj[i] |= m & ~(1 << i)
        return DependencyGraph(n, flavor, tuple(adj))
    test = _detector(g, flavor, method)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if test(i, j):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return DependencyGraph(n, flavor, tuple(adj))


def _check_graph(g: Game, dg: DependencyGraph) -> None:
    if dg.n != g.n:
        raise DomainError(f"dependency graph has {dg.n} players but the game has {g.n}")


# -- structure read off the graphs ---------------------------------------------

def is_dummy(g: Game, dg: DependencyGraph, i: int) -> bool:
    """A player is a dummy iff it is worth nothing alone and isolated in ``dg``.

    Exact for the full graph on any game; with the supermodular graph the
    game must be monotone.
    """
    _check_graph(g, dg)
    i = player_index(i, g.n)
    return g.value(1 << i) == 0 and dg.adjacency[i] == 0


def is_dummy_bruteforce(g: Game, i: int) -> bool:
    """Definitional check: ``v(i | S) = 0`` for every ``S`` avoiding ``i``."""
    i = player_index(i, g.n)
    guard("is_dummy_bruteforce", g.n)
    v = value_oracle(g)
    bit = 1 << i
    return all(v(s | bit) == v(s) for s in range(1 << g.n) if not s & bit)


def dummy_players(g: Game, dg: DependencyGraph) -> frozenset[int]:
    return frozenset(i for i in range(g.n) if is_dummy(g, dg, i))


def veto_players(g: Game) -> frozenset[int]:
    """Players present in every winning coalition.

    In a simple game ``i`` is a veto player iff ``N - i`` loses.  When nothing
    wins, every player is vacuously a veto player.
    """
    require_simple(g, "veto_players")
    if isinstance(g, MwcListGame):
        common = g.grand
        for m in g.mwcs:
            common &= m
        return frozenset(members(common))
    full = g.grand
    return frozenset(i for i in range(g.n) if g.v(full & ~(1 << i)) == 0)


def _is_mwc(g: Game, c: Coalition) -> bool:
    if g.v(c) != 1:
        return False
    rest = c
    while rest:
        low = rest & -rest
        if g.v(c ^ low) != 0:
            return False
        rest ^= low
    return True


def minimal_winning_coalitions(g: Game, sg: DependencyGraph) -> list[Coalition]:
    """All minimal winning coalitions of a simple game, found inside ``G+``.

    Every minimal winning coalition containing ``i`` is a clique through
    ``i``, hence a subset of ``D+(i) + i``; the candidates are exactly those
    subsets, so the number of value queries is ``O(n 2^(p+1))`` times the
    minimality check.
    """
    require_simple(g, "minimal_winning_coalitions")
    _check_graph(g, sg)
    if sg.flavor is not Flavor.SUPERMODULAR:
        raise DomainError("minimal_winning_coalitions needs the supermodular dependency graph")
    seen: set[Coalition] = set()
    found = []
    for i in range(g.n):
        bit = 1 << i
        for sub in submasks(sg.adjacency[i]):
            c = sub | bit
            if c in seen:
                continue
            seen.add(c)
            if _is_mwc(g, c):
                found.append(c)
    return sorted(found, key=sort_key)


def brute_force_mwcs(g: Game) -> list[Coalition]:
    """Minimal winning coalitions by scanning every coalition."""
    require_simple(g, "brute_force_mwcs")
    guard("brute_force_mwcs", g.n)
    v = value_oracle(g)
    out = []
    for c in range(1, 1 << g.n):
        if v(c) == 1 and all(v(c & ~(1 << k)) == 0 for k in members(c)):
            out.append(c)
    return sorted(out, key=sort_key)
