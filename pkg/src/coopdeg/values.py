"""Shapley and Banzhaf values.

The naive routines sum over every coalition of the other players.  The
fixed-parameter routines only visit subsets ``S`` of the dependency set
``D(i)``: adding players outside ``D(i) + i`` never changes ``v(i | S)``, so
each ``S`` stands for all ``2^m`` coalitions ``S + T`` with ``T`` drawn from
the ``m`` independent players.  Grouped this way

    phi_i  = sum_{S <= D(i)} v(i|S) * sum_{t=0..m} C(m, t) (|S|+t)! (n-|S|-t-1)! / n!
    beta_i = 2^-|D(i)| * sum_{S <= D(i)} v(i|S)

Everything is exact; the returned vectors hold :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .dependency import DependencyGraph, Flavor
from .errors import DomainError
from .game import Game, guard, submasks, value_oracle

NAIVE_LIMIT = 12


@lru_cache(maxsize=None)
def _factorials(n: int) -> tuple[int, ...]:
    return tuple(factorial(k) for k in range(n + 1))


def shapley_naive(g: Game) -> list[Fraction]:
    """Shapley value by direct summation over all coalitions."""
    n = g.n
    guard("shapley_naive", n, NAIVE_LIMIT)
    v = value_oracle(g)
    fact = _factorials(n)
    weight = [fact[s] * fact[n - s - 1] for s in range(n)]
    totals = [0] * n
    for s in range(1 << n):
        size = bin(s).count("1")
        if size == n:
            continue
        vs = v(s)
        w = weight[size]
        for i in range(n):
            bit = 1 << i
            if not s & bit:
                totals[i] += w * (v(s | bit) - vs)
    return [Fraction(t) / fact[n] for t in totals]


def banzhaf_naive(g: Game) -> list[Fraction]:
    """Banzhaf value: average marginal contribution over all coalitions."""
    n = g.n
    guard("banzhaf_naive", n, NAIVE_LIMIT)
    v = value_oracle(g)
    totals = [0] * n
    for s in range(1 << n):
        vs = v(s)
        for i in range(n):
            bit = 1 << i
            if not s & bit:
                totals[i] += v(s | bit) - vs
    return [Fraction(t, 1 << (n - 1)) for t in totals]


def shapley_group_weight(n: int, size: int, free: int) -> Fraction:
    """Total permutation weight of the coalitions ``S + T`` with ``|S| = size``.

    ``T`` ranges over all subsets of ``free`` players whose presence does not
    affect the marginal.
    """
    fact = _factorials(n)
    total = sum(comb(free, t) * fact[size + t] * fact[n - size - t - 1] for t in range(free + 1))
    return Fraction(total, fact[n])


def _check(g: Game, dg: DependencyGraph) -> None:
    if dg.n != g.n:
        raise DomainError(f"dependency graph has {dg.n} players but the game has {g.n}")
    if dg.flavor is not Flavor.FULL:
        raise DomainError("the fixed-parameter values need the full dependency graph G")


def _marginal_sums(g: Game, i: int, dep: int) -> dict[int, object]:
    """``{|S|: sum of v(i|S) over S <= dep with that size}``."""
    bit = 1 << i
    sums: dict[int, object] = {}
    for s in submasks(dep):
        size = bin(s).count("1")
        sums[size] = sums.get(size, 0) + (g.v(s | bit) - g.v(s))
    return sums


def shapley_fpt(g: Game, dg: DependencyGraph) -> list[Fraction]:
    """Shapley value in ``O(n 2^d)`` value queries given ``G`` (or a supergraph)."""
    _check(g, dg)
    n = g.n
    out = []
    for i in range(n):
        dep = dg.adjacency[i]
        free = n - 1 - bin(dep).count("1")
        phi = Fraction(0)
        for size, total in _marginal_sums(g, i, dep).items():
            if total:
                phi += total * shapley_group_weight(n, size, free)
        out.append(phi)
    return out


def banzhaf_fpt(g: Game, dg: DependencyGraph) -> list[Fraction]:
    """Banzhaf value in ``O(n 2^d)`` value queries given ``G`` (or a supergraph)."""
    _check(g, dg)
    out = []
    for i in range(g.n):
        dep = dg.adjacency[i]
        total = sum(_marginal_sums(g, i, dep).values())
        out.append(Fraction(total, 1 << bin(dep).count("1")))
    return out
