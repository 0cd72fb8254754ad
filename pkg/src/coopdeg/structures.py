"""Optimal coalition structures.

``dp_optimal_cs`` runs the bag-partition dynamic program over a nice tree
decomposition of ``G+``.  A table key at node ``t`` is a pair
``(pi, out)``: ``pi`` partitions the bag ``X_t`` and ``out`` lists the blocks
that may still grow into vertices forgotten below ``t``; blocks not in
``out`` are final.  Keys are tuples of block bitmasks sorted by value, so
they hash canonically.

Only keys reachable from the root are materialised: a top-down sweep
collects the child keys each recurrence asks for, then a bottom-up sweep
fills them in.  With ``prune=True`` a key is kept only if every block could
come from a partition whose blocks are minimal winning coalitions or
singletons (some optimal partition of a simple game has that shape).  For
such a partition ``out`` can be taken to hold exactly the blocks that
continue below ``t``, so an ``out`` block must be ``M & X_t`` for a minimal
winning ``M`` that meets ``V_t - X_t``, and any other block of two or more
players must be ``M & V_t`` with ``M & V_t`` inside ``X_t``.
``prune=False`` keeps every reachable key.

``brute_optimal_cs`` (set partitions in restricted-growth order) and
``subset_dp_optimal_cs`` (``O(3^n)`` DP over coalitions) are the oracles.
Both break welfare ties toward more blocks, then toward the earlier
partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomposition import (
    Kind,
    NiceNode,
    NiceTreeDecomposition,
    check_nice,
    clique_tree,
    is_chordal,
    make_nice,
    validate_td,
)
from .dependency import DependencyGraph, Flavor, dependency_graph
from .errors import DomainError, InvariantViolation
from .game import (
    Coalition,
    Game,
    WeightedVotingGame,
    guard,
    members,
    popcount,
    require_simple,
    sort_key,
    submasks,
    value_oracle,
)

BRUTE_FORCE_LIMIT = 10
SUBSET_DP_LIMIT = 16


@dataclass(frozen=True)
class CoalitionStructure:
    welfare: object
    blocks: tuple[Coalition, ...]
    stats: dict = field(default_factory=dict, compare=False)

    def partition(self) -> list[list[int]]:
        return [members(b) for b in self.blocks]


def welfare_of(g: Game, blocks) -> object:
    return sum((g.v(b) for b in blocks), 0)


def is_partition(n: int, blocks) -> bool:
    seen = 0
    for b in blocks:
        if not b or seen & b:
            return False
        seen |= b
    return seen == (1 << n) - 1


def _canonical(blocks) -> tuple[Coalition, ...]:
    return tuple(sorted(blocks, key=sort_key))


# -- oracles -----------------------------------------------------------------

def brute_optimal_cs(g: Game) -> CoalitionStructure:
    """Best partition by enumerating all set partitions (``n <= 10``)."""
    n = g.n
    guard("brute_optimal_cs", n, BRUTE_FORCE_LIMIT)
    v = value_oracle(g)
    best = [None, None]
    blocks: list[int] = []

    def extend(i: int) -> None:
        if i == n:
            key = (sum(v(b) for b in blocks), len(blocks))
            if best[0] is None or key > best[0]:
                best[0] = key
                best[1] = tuple(blocks)
            return
        bit = 1 << i
        for k in range(len(blocks)):
            blocks[k] |= bit
            extend(i + 1)
            blocks[k] ^= bit
        blocks.append(bit)
        extend(i + 1)
        blocks.pop()

    extend(0)
    return CoalitionStructure(best[0][0], _canonical(best[1]))


def subset_dp_optimal_cs(g: Game) -> CoalitionStructure:
    """Best partition by the ``O(3^n)`` DP over coalitions (``n <= 16``)."""
    n = g.n
    guard("subset_dp_optimal_cs", n, SUBSET_DP_LIMIT)
    v = value_oracle(g)
    size = 1 << n
    best = [(0, 0)] * size
    pick = [0] * size
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        top = None
        sub = rest
        while True:
            block = sub | low
            w, k = best[s ^ block]
            cand = (w + v(block), k + 1)
            if top is None or cand > top:
                top = cand
                pick[s] = block
            if not sub:
                break
            sub = (sub - 1) & rest
        best[s] = top
    blocks = []
    s = size - 1
    while s:
        blocks.append(pick[s])
        s ^= pick[s]
    return CoalitionStructure(best[size - 1][0], _canonical(blocks))


# -- tree-decomposition DP ---------------------------------------------------

def _bag_mwcs(v, ntd: NiceTreeDecomposition) -> list[Coalition]:
    """Minimal winning coalitions, searched inside maximal bags.

    Every minimal winning coalition is a clique of ``G+`` and so sits inside
    some bag.
    """
    bags = sorted({x.bag for x in ntd.nodes if x.bag}, key=popcount, reverse=True)
    maximal = []
    for b in bags:
        if not any(b & m == b for m in maximal):
            maximal.append(b)
    found = set()
    for bag in maximal:
        for c in submasks(bag):
            if c and c not in found and v(c) == 1 and all(v(c & ~(1 << k)) == 0 for k in members(c)):
                found.add(c)
    return sorted(found, key=sort_key)


def _options(node: NiceNode, children, key, v, exact: bool):
    """Yield ``(offset, child_keys, choice)`` for each way to realise ``key``.

    With ``exact`` a forget node may also hand its grown block down as final,
    so ``out`` can list exactly the blocks that continue below the node.
    """
    pi, out = key
    kind = node.kind
    if kind is Kind.LEAF:
        if pi == (node.bag,):
            yield v(node.bag), (), None
    elif kind is Kind.INTRODUCE:
        bit = 1 << node.vertex
        sx = next(b for b in pi if b & bit)
        rest = sx ^ bit
        child_pi = [b for b in pi if b != sx]
        if rest:
            child_pi.append(rest)
        child_out = tuple(b for b in out if b != sx)
        yield v(sx) - v(rest), ((children[0], (tuple(sorted(child_pi)), child_out)),), None
    elif kind is Kind.FORGET:
        bit = 1 << node.vertex
        for s in out + (0,):
            grown = s | bit
            child_pi = tuple(sorted([b for b in pi if b != s] + [grown]))
            kept = [b for b in out if b != s]
            yield 0, ((children[0], (child_pi, tuple(sorted(kept + [grown])))),), s
            if exact:
                yield 0, ((children[0], (child_pi, tuple(kept))),), s
    else:
        total = sum(v(b) for b in pi)
        k = len(out)
        for sel in range(1 << k):
            o1 = tuple(out[j] for j in range(k) if sel >> j & 1)
            o2 = tuple(out[j] for j in range(k) if not sel >> j & 1)
            yield -total, ((children[0], (pi, o1)), (children[1], (pi, o2))), sel


def dp_optimal_cs(
    g: Game,
    ntd: NiceTreeDecomposition,
    sg: DependencyGraph | None = None,
    prune: bool = True,
) -> CoalitionStructure:
    """Optimal coalition structure of a simple game from a nice decomposition of ``G+``.

    ``stats`` reports the number of table entries filled, the number of keys
    generated, the width and the node count.
    """
    require_simple(g, "dp_optimal_cs")
    if sg is None:
        sg = dependency_graph(g, Flavor.SUPERMODULAR)
    if sg.n != g.n or sg.flavor is not Flavor.SUPERMODULAR:
        raise DomainError("dp_optimal_cs needs the supermodular dependency graph of the game")
    problem = check_nice(ntd)
    if problem:
        raise DomainError(f"not a nice tree decomposition: {problem}")
    check = validate_td(sg, ntd.as_tree_decomposition())
    if not check:
        raise DomainError(f"decomposition does not fit G+: {check.reason}")

    v = value_oracle(g) if g.n <= 16 else g.v
    nodes = ntd.nodes
    order = ntd.top_down()
    below = [0] * len(nodes)
    for t in reversed(order):
        below[t] = nodes[t].bag
        for c in nodes[t].children:
            below[t] |= below[c]

    allowed = None
    mwcs = _bag_mwcs(v, ntd) if prune else None
    if prune:
        allowed = []
        for t, node in enumerate(nodes):
            x, vt = node.bag, below[t]
            open_ok = {m & x for m in mwcs if m & x and m & vt & ~x}
            closed_ok = {m & vt for m in mwcs if m & vt and not m & vt & ~x}
            allowed.append((open_ok, closed_ok))

    def admissible(t, key) -> bool:
        if allowed is None:
            return True
        open_ok, closed_ok = allowed[t]
        pi, out = key
        for b in out:
            if b not in open_ok:
                return False
        for b in pi:
            if b & (b - 1) and b not in out and b not in closed_ok:
                return False
        return True

    root_key = ((), ())
    keys: list[dict] = [dict() for _ in nodes]
    keys[ntd.root][root_key] = None
    for t in order:
        kids = nodes[t].children
        for key in keys[t]:
            for _, reqs, _ in _options(nodes[t], kids, key, v, prune):
                for c, ck in reqs:
                    if ck not in keys[c] and admissible(c, ck):
                        keys[c][ck] = None

    table: list[dict] = [dict() for _ in nodes]
    for t in reversed(order):
        kids = nodes[t].children
        here = table[t]
        for key in keys[t]:
            best = None
            for offset, reqs, choice in _options(nodes[t], kids, key, v, prune):
                total = offset
                for c, ck in reqs:
                    entry = table[c].get(ck)
                    if entry is None:
                        break
                    total += entry[0]
                else:
                    if best is None or total > best[0]:
                        best = (total, choice, reqs)
            if best is not None:
                here[key] = best

    if root_key not in table[ntd.root]:
        raise InvariantViolation("coalition-structure DP found no feasible root entry")
    welfare = table[ntd.root][root_key][0]
    blocks = _reconstruct(ntd, table, root_key, g.n)
    if welfare_of(g, blocks) != welfare or not is_partition(g.n, blocks):
        raise InvariantViolation("reconstructed partition does not match the DP optimum")
    stats = {
        "entries": sum(len(tb) for tb in table),
        "keys": sum(len(k) for k in keys),
        "width": ntd.width,
        "nodes": len(nodes),
        "pruned": prune,
    }
    if mwcs is not None:
        stats["mwcs"] = len(mwcs)
    return CoalitionStructure(welfare, _canonical(blocks), stats)


def _reconstruct(ntd: NiceTreeDecomposition, table, root_key, n: int) -> list[Coalition]:
    nodes = ntd.nodes
    owner = [None] * n
    fresh = 0
    stack = [(ntd.root, root_key, {})]
    while stack:
        t, key, ids = stack.pop()
        node = nodes[t]
        _, choice, reqs = table[t][key]
        if node.kind is Kind.FORGET:
            bit = 1 << node.vertex
            if choice:
                block_id = ids[choice]
            else:
                block_id = fresh
                fresh += 1
            owner[node.vertex] = block_id
            child_ids = {b: i for b, i in ids.items() if b != choice}
            child_ids[choice | bit] = block_id
            stack.append((reqs[0][0], reqs[0][1], child_ids))
        elif node.kind is Kind.INTRODUCE:
            bit = 1 << node.vertex
            sx = next(b for b in key[0] if b & bit)
            child_ids = {b: i for b, i in ids.items() if b != sx}
            if sx ^ bit:
                child_ids[sx ^ bit] = ids[sx]
            stack.append((reqs[0][0], reqs[0][1], child_ids))
        elif node.kind is Kind.JOIN:
            for c, ck in reqs:
                stack.append((c, ck, ids))
    groups: dict[int, int] = {}
    for x, block_id in enumerate(owner):
        if block_id is None:
            raise InvariantViolation(f"player {x} was never forgotten in the decomposition")
        groups[block_id] = groups.get(block_id, 0) | (1 << x)
    return list(groups.values())


def wvg_optimal_cs(g: WeightedVotingGame, prune: bool = True) -> CoalitionStructure:
    """Optimal coalition structure of a weighted voting game.

    ``G+`` of a weighted voting game is chordal, so its clique tree gives a
    decomposition of width ``p``; the DP then runs on the nice version.
    """
    if not isinstance(g, WeightedVotingGame):
        raise DomainError("wvg_optimal_cs expects a weighted voting game")
    sg = dependency_graph(g, Flavor.SUPERMODULAR)
    if not is_chordal(sg):
        raise InvariantViolation("supermodular dependency graph of a weighted voting game is not chordal")
    ntd = make_nice(clique_tree(sg))
    return dp_optimal_cs(g, ntd, sg, prune=prune)
