"""Tree decompositions, nice decompositions and chordal-graph tools.

Graphs are given as adjacency bitmasks (``adj[v]`` is the neighbour mask of
``v``) or as a :class:`~coopdeg.dependency.DependencyGraph`.  Bags are
bitmasks over the vertices too.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ValidationError
from .game import members, popcount


def adjacency_of(graph) -> tuple[int, ...]:
    adj = getattr(graph, "adjacency", graph)
    adj = tuple(int(a) for a in adj)
    n = len(adj)
    for v, a in enumerate(adj):
        if a >> n or a >> v & 1:
            raise ValidationError(f"vertex {v} has an invalid neighbour mask")
        for u in members(a):
            if not adj[u] >> v & 1:
                raise ValidationError(f"adjacency is not symmetric on ({v}, {u})")
    return adj


def graph_edges(adj: Sequence[int]) -> list[tuple[int, int]]:
    return [(u, v) for u in range(len(adj)) for v in members(adj[u]) if u < v]


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by node id; ``edges`` are the tree edges."""

    bags: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    root: int = 0

    @property
    def width(self) -> int:
        return max((popcount(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        nb = [[] for _ in self.bags]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb


@dataclass(frozen=True)
class Valid:
    width: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Invalid:
    reason: str

    def __bool__(self):
        return False


def _tree_problem(k: int, edges, root: int) -> str | None:
    if k == 0:
        return "decomposition has no nodes"
    if not 0 <= root < k:
        return f"root {root} is not a node"
    if len(edges) != k - 1:
        return f"a tree on {k} nodes needs {k - 1} edges, got {len(edges)}"
    nb = [[] for _ in range(k)]
    for a, b in edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return f"bad tree edge ({a}, {b})"
        nb[a].append(b)
        nb[b].append(a)
    seen = {root}
    todo = [root]
    while todo:
        for b in nb[todo.pop()]:
            if b not in seen:
                seen.add(b)
                todo.append(b)
    if len(seen) != k:
        return "tree is not connected"
    return None


def validate_td(graph, td: TreeDecomposition) -> Valid | Invalid:
    """Check vertex coverage, connectivity of each vertex's nodes, and edge coverage."""
    adj = adjacency_of(graph)
    n = len(adj)
    k = len(td.bags)
    problem = _tree_problem(k, td.edges, td.root)
    if problem:
        return Invalid(problem)
    for t, bag in enumerate(td.bags):
        if bag < 0 or bag >> n:
            return Invalid(f"bag of node {t} names a vertex outside the graph")
    nb = td.neighbors()
    for v in range(n):
        holders = [t for t in range(k) if td.bags[t] >> v & 1]
        if not holders:
            return Invalid(f"vertex {v} is in no bag")
        seen = {holders[0]}
        todo = [holders[0]]
        while todo:
            for b in nb[todo.pop()]:
                if b not in seen and td.bags[b] >> v & 1:
                    seen.add(b)
                    todo.append(b)
        if len(seen) != len(holders):
            return Invalid(f"nodes holding vertex {v} are not connected in the tree")
    for u, v in graph_edges(adj):
        both = (1 << u) | (1 << v)
        if not any(bag & both == both for bag in td.bags):
            return Invalid(f"edge ({u}, {v}) is not inside any bag")
    return Valid(td.width)


class Kind(str, enum.Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: Kind
    bag: int
    children: tuple[int, ...]
    vertex: int | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max((popcount(x.bag) for x in self.nodes), default=0) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = tuple((t, c) for t, node in enumerate(self.nodes) for c in node.children)
        return TreeDecomposition(tuple(x.bag for x in self.nodes), edges, self.root)

    def top_down(self) -> list[int]:
        """Node ids with every parent before its children."""
        order = [self.root]
        for t in order:
            order.extend(self.nodes[t].children)
        return order


class _Builder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, kind, bag, children=(), vertex=None) -> int:
        self.nodes.append(NiceNode(kind, bag, tuple(children), vertex))
        return len(self.nodes) - 1

    def leaf_chain(self, bag: int) -> int:
        vs = members(bag)
        t = self.add(Kind.LEAF, 1 << vs[0])
        cur = 1 << vs[0]
        for v in vs[1:]:
            cur |= 1 << v
            t = self.add(Kind.INTRODUCE, cur, (t,), v)
        return t

    def morph(self, t: int, target: int) -> int:
        """Forget then introduce vertices until node ``t``'s bag equals ``target``."""
        cur = self.nodes[t].bag
        for v in members(cur & ~target):
            cur &= ~(1 << v)
            t = self.add(Kind.FORGET, cur, (t,), v)
        for v in members(target & ~cur):
            cur |= 1 << v
            t = self.add(Kind.INTRODUCE, cur, (t,), v)
        return t


def make_nice(td: TreeDecomposition, graph=None) -> NiceTreeDecomposition:
    """Convert a tree decomposition into a nice one of the same width.

    Children are brought to their parent's bag by forget/introduce chains,
    several children are merged by a left-leaning chain of joins, leaves start
    from a singleton, and the root forgets its bag down to the empty set.
    """
    if graph is not None:
        check = validate_td(graph, td)
        if not check:
            raise ValidationError(f"invalid tree decomposition: {check.reason}")
    else:
        problem = _tree_problem(len(td.bags), td.edges, td.root)
        if problem:
            raise ValidationError(f"invalid tree decomposition: {problem}")

    nb = td.neighbors()
    parent = {td.root: None}
    order = [td.root]
    for t in order:
        for c in nb[t]:
            if c not in parent:
                parent[c] = t
                order.append(c)

    b = _Builder()
    built: dict[int, int | None] = {}
    for t in reversed(order):
        bag = td.bags[t]
        subs = [built[c] for c in nb[t] if parent.get(c) == t and built[c] is not None]
        if not subs:
            built[t] = b.leaf_chain(bag) if bag else None
            continue
        if not bag:
            # An empty bag separates its subtrees completely; chain them
            # through empty joins.
            subs = [b.morph(s, 0) for s in subs]
        else:
            subs = [b.morph(s, bag) for s in subs]
        cur = subs[0]
        for s in subs[1:]:
            cur = b.add(Kind.JOIN, bag, (cur, s))
        built[t] = cur

    top = built[td.root]
    if top is None:
        raise ValidationError("decomposition has only empty bags")
    top = b.morph(top, 0)
    return NiceTreeDecomposition(tuple(b.nodes), top)


def check_nice(ntd: NiceTreeDecomposition, graph=None) -> str | None:
    """First violated nice-node rule (or decomposition condition), else ``None``."""
    nodes = ntd.nodes
    if nodes[ntd.root].bag != 0:
        return "root bag is not empty"
    for t, node in enumerate(nodes):
        kids = [nodes[c] for c in node.children]
        if node.kind is Kind.LEAF:
            if kids or popcount(node.bag) != 1:
                return f"leaf {t} must be childless with a singleton bag"
        elif node.kind is Kind.INTRODUCE:
            if len(kids) != 1 or node.vertex is None:
                return f"introduce node {t} needs one child and a vertex"
            if kids[0].bag >> node.vertex & 1 or kids[0].bag | (1 << node.vertex) != node.bag:
                return f"introduce node {t} does not add exactly vertex {node.vertex}"
        elif node.kind is Kind.FORGET:
            if len(kids) != 1 or node.vertex is None:
                return f"forget node {t} needs one child and a vertex"
            if not kids[0].bag >> node.vertex & 1 or kids[0].bag & ~(1 << node.vertex) != node.bag:
                return f"forget node {t} does not drop exactly vertex {node.vertex}"
        elif node.kind is Kind.JOIN:
            if len(kids) != 2 or any(k.bag != node.bag for k in kids):
                return f"join node {t} needs two children with its own bag"
    problem = _tree_problem(len(nodes), ntd.as_tree_decomposition().edges, ntd.root)
    if problem:
        return problem
    if graph is not None:
        check = validate_td(graph, ntd.as_tree_decomposition())
        if not check:
            return check.reason
    return None


def mcs_order(adj: Sequence[int]) -> list[int]:
    """Maximum cardinality search visit order (ties to the smallest vertex)."""
    n = len(adj)
    weight = [0] * n
    visited = 0
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not visited >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        visited |= 1 << v
        for u in members(adj[v] & ~visited):
            weight[u] += 1
    return order


def perfect_elimination_order(graph) -> list[int] | None:
    """A perfect elimination ordering, or ``None`` when the graph is not chordal."""
    adj = adjacency_of(graph)
    order = mcs_order(adj)
    pos = {v: k for k, v in enumerate(order)}
    before = [0] * len(adj)
    seen = 0
    for v in order:
        before[v] = adj[v] & seen
        seen |= 1 << v
    for v in order:
        earlier = before[v]
        if not earlier:
            continue
        u = max(members(earlier), key=pos.__getitem__)
        if (earlier & ~(1 << u)) & ~before[u]:
            return None
    return order[::-1]


def is_chordal(graph) -> bool:
    return perfect_elimination_order(graph) is not None


def maximal_cliques_chordal(graph) -> list[int]:
    adj = adjacency_of(graph)
    peo = perfect_elimination_order(adj)
    if peo is None:
        raise DomainError("graph is not chordal")
    later = 0
    candidates = []
    for v in reversed(peo):
        candidates.append((1 << v) | (adj[v] & later))
        later |= 1 << v
    cliques = []
    for c in sorted(set(candidates), key=lambda m: (-popcount(m), m)):
        if not any(c & d == c for d in cliques):
            cliques.append(c)
    return sorted(cliques, key=lambda m: members(m))


def clique_tree(graph) -> TreeDecomposition:
    """Clique tree of a chordal graph: a maximum-weight spanning tree of the
    maximal cliques, weighting each pair by the size of its intersection."""
    cliques = maximal_cliques_chordal(graph)
    k = len(cliques)
    pairs = sorted(
        ((popcount(cliques[a] & cliques[b]), a, b) for a in range(k) for b in range(a + 1, k)),
        key=lambda e: (-e[0], e[1], e[2]),
    )
    root = list(range(k))

    def find(a):
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        return a

    edges = []
    for _, a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            root[ra] = rb
            edges.append((a, b))
            if len(edges) == k - 1:
                break
    return TreeDecomposition(tuple(cliques), tuple(edges), 0)


def elimination_tree_decomposition(graph, order: Sequence[int] | None = None) -> TreeDecomposition:
    """Tree decomposition from an elimination order (greedy min-degree by default).

    Works for any graph; on a chordal graph with a perfect elimination order the
    bags are cliques.
    """
    adj = list(adjacency_of(graph))
    n = len(adj)
    if order is None:
        order = []
        alive = (1 << n) - 1
        work = list(adj)
        while alive:
            v = min(members(alive), key=lambda u: (popcount(work[u] & alive), u))
            order.append(v)
            nb = work[v] & alive & ~(1 << v)
            for u in members(nb):
                work[u] |= nb & ~(1 << u)
            alive &= ~(1 << v)
    elif sorted(order) != list(range(n)):
        raise DomainError("elimination order must list every vertex once")
    pos = {v: k for k, v in enumerate(order)}
    work = list(adj)
    bags = []
    later_nb = []
    for v in order:
        nb = sum(1 << u for u in members(work[v]) if pos[u] > pos[v])
        for u in members(nb):
            work[u] |= nb & ~(1 << u)
        bags.append((1 << v) | nb)
        later_nb.append(nb)
    edges = []
    for k, nb in enumerate(later_nb):
        if nb:
            edges.append((k, min(pos[u] for u in members(nb))))
        elif k != n - 1:
            edges.append((k, n - 1))
    return TreeDecomposition(tuple(bags), tuple(edges), n - 1)


def _label(mask: int) -> str:
    return "{" + ", ".join(str(v) for v in members(mask)) + "}"


def td_to_dot(td) -> str:
    if isinstance(td, NiceTreeDecomposition):
        lines = ["digraph nice_td {"]
        for t, node in enumerate(td.nodes):
            extra = f" {node.vertex}" if node.vertex is not None else ""
            lines.append(f'  n{t} [label="{node.kind.value}{extra}\\n{_label(node.bag)}"];')
        for t, node in enumerate(td.nodes):
            lines.extend(f"  n{t} -> n{c};" for c in node.children)
    else:
        lines = ["graph td {"]
        lines.extend(f'  n{t} [label="{_label(bag)}"];' for t, bag in enumerate(td.bags))
        lines.extend(f"  n{a} -- n{b};" for a, b in td.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def graphs_to_dot(full, supermodular=None) -> str:
    """Dependency graphs as DOT: solid edges are supermodular, dashed ones only in ``G``."""
    adj = adjacency_of(full)
    sup = adjacency_of(supermodular) if supermodular is not None else None
    lines = ["graph dependency {"]
    lines.extend(f"  {v};" for v in range(len(adj)))
    for u, v in graph_edges(adj):
        solid = sup is not None and sup[u] >> v & 1
        lines.append(f"  {u} -- {v};" if solid or sup is None else f"  {u} -- {v} [style=dashed];")
    if sup is not None:
        for u, v in graph_edges(sup):
            if not adj[u] >> v & 1:
                lines.append(f"  {u} -- {v} [color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"
