"""Coalitions, characteristic-function backends and the checks shared by them.

Coalitions are plain ``int`` bitmasks: bit ``i`` set means player ``i`` is a
member.  Every public entry point also accepts an iterable of player indices
and normalises it with :func:`coalition`.

Characteristic values are exact rationals.  Backends return ``int`` where the
value is integral and :class:`fractions.Fraction` otherwise; both are
``numbers.Rational`` and mix freely.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, SizeGuardError, ValidationError

MAX_PLAYERS = 64
ENUMERATION_LIMIT = 20
# Games up to this size get a memoised value table for brute-force routines.
TABLE_LIMIT = 16

Coalition = int
CoalitionLike = Union[int, Iterable[int]]

_guards_relaxed: ContextVar[bool] = ContextVar("coopdeg_guards_relaxed", default=False)


@contextmanager
def relaxed_size_guards():
    """Lift the soft enumeration limits for the current context.

    The hard cap of 64 players is never lifted.
    """
    token = _guards_relaxed.set(True)
    try:
        yield
    finally:
        _guards_relaxed.reset(token)


def guard(operation: str, n: int, limit: int = ENUMERATION_LIMIT) -> None:
    if n > limit and not _guards_relaxed.get():
        raise SizeGuardError(operation, n, limit)


# -- coalition helpers -------------------------------------------------------

def coalition(players: CoalitionLike, n: int | None = None) -> Coalition:
    """Return the bitmask of ``players`` (an int mask passes through)."""
    if isinstance(players, int) and not isinstance(players, bool):
        mask = players
        if mask < 0 or (n is not None and mask >> n):
            raise DomainError(f"coalition mask {mask:#x} has players outside [0, {n})")
        return mask
    mask = 0
    for p in players:
        if not isinstance(p, int) or isinstance(p, bool):
            raise DomainError(f"player index must be an int, got {p!r}")
        if p < 0 or (n is not None and p >= n):
            raise DomainError(f"player {p} outside [0, {n})")
        if p >= MAX_PLAYERS:
            raise DomainError(f"player {p} exceeds the {MAX_PLAYERS}-player cap")
        mask |= 1 << p
    return mask


def members(mask: Coalition) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: Coalition) -> int:
    return bin(mask).count("1")


def submasks(mask: Coalition) -> Iterator[Coalition]:
    """Yield every subset of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def sort_key(mask: Coalition) -> tuple[int, ...]:
    """Lexicographic order on sorted member tuples."""
    return tuple(members(mask))


def to_rational(x) -> Rational:
    """Parse ``x`` (int, Fraction or ``"p/q"`` string) into an exact rational."""
    if isinstance(x, bool):
        raise ValidationError(f"expected a rational number, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        try:
            f = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational literal: {x!r}") from exc
        if "." in x or "e" in x.lower():
            raise ValidationError(f"rationals must be written as p/q, got {x!r}")
        return f.numerator if f.denominator == 1 else f
    raise ValidationError(f"expected an exact rational, got {type(x).__name__} {x!r}")


# -- games -------------------------------------------------------------------

class Game:
    """A characteristic function ``v`` on ``n`` players with ``v(empty) = 0``.

    Subclasses implement ``_value(mask)`` for non-empty masks.  Instances are
    immutable; the only mutable state is an idempotent cache of the value
    table and of the monotone/simple flags.
    """

    backend = "abstract"
    claims_simple = False

    def __init__(self, n: int, *, assume_simple: bool = False):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValidationError(f"player count must be a positive int, got {n!r}")
        if n > MAX_PLAYERS:
            raise ValidationError(f"at most {MAX_PLAYERS} players are supported, got {n}")
        self._n = n
        self._flags: dict[str, bool] = {}
        self._table_cache: list | None = None
        # Unsafe-assumption path: callers may vouch for simplicity to skip checks.
        if assume_simple or self.claims_simple:
            self._flags["monotone"] = True
            self._flags["simple"] = True

    @property
    def n(self) -> int:
        return self._n

    @property
    def grand(self) -> Coalition:
        return (1 << self._n) - 1

    def value(self, s: CoalitionLike) -> Rational:
        mask = coalition(s, self._n)
        if mask == 0:
            return 0
        return self._value(mask)

    __call__ = value

    def v(self, mask: Coalition) -> Rational:
        """Unchecked fast path of :meth:`value` for trusted int masks."""
        return self._value(mask) if mask else 0

    def marginal(self, i: int, s: CoalitionLike) -> Rational:
        """``v(s + i) - v(s)``; ``i`` must not belong to ``s``."""
        mask = coalition(s, self._n)
        bit = 1 << player_index(i, self._n)
        if mask & bit:
            raise DomainError(f"player {i} already belongs to the coalition")
        return self.value(mask | bit) - self.value(mask)

    def table(self) -> list:
        """All ``2**n`` values indexed by coalition mask (memoised)."""
        guard("value table", self._n, TABLE_LIMIT + 4)
        if self._table_cache is None:
            t = self._build_table()
            t[0] = 0
            self._table_cache = t
        return self._table_cache

    def _build_table(self) -> list:
        v = self._value
        return [0] + [v(m) for m in range(1, 1 << self._n)]

    def _value(self, mask: Coalition) -> Rational:
        raise NotImplementedError

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return type(self) is type(other) and self._n == other._n and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._n, self._key()))


def value_oracle(g: Game):
    """A fast ``mask -> value`` callable for brute-force loops."""
    if g.n <= TABLE_LIMIT:
        return g.table().__getitem__
    return g.value


def player_index(i, n: int) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
        raise DomainError(f"player {i!r} outside [0, {n})")
    return i


class WeightedVotingGame(Game):
    """``[N; w; q]``: a coalition wins iff its total weight reaches the quota.

    With ``q = 0`` the formula would make the empty coalition winning; the
    global convention ``v(empty) = 0`` takes precedence, so every non-empty
    coalition wins.
    """

    backend = "wvg"
    claims_simple = True

    def __init__(self, weights: Sequence[int], quota: int):
        weights = tuple(weights)
        for w in weights:
            if not isinstance(w, int) or isinstance(w, bool):
                raise ValidationError(f"weights must be integers, got {w!r}")
            if w < 0:
                raise ValidationError(f"weights must be non-negative, got {w}")
        if not isinstance(quota, int) or isinstance(quota, bool) or quota < 0:
            raise ValidationError(f"quota must be a non-negative integer, got {quota!r}")
        super().__init__(len(weights))
        self._weights = weights
        self._quota = quota

    @property
    def weights(self) -> tuple[int, ...]:
        return self._weights

    @property
    def quota(self) -> int:
        return self._quota

    def weight(self, s: CoalitionLike) -> int:
        return sum(self._weights[i] for i in members(coalition(s, self.n)))

    def _value(self, mask):
        w = self._weights
        total = 0
        while mask:
            low = mask & -mask
            total += w[low.bit_length() - 1]
            mask ^= low
        return 1 if total >= self._quota else 0

    def _build_table(self):
        w = self._weights
        size = 1 << self.n
        sums = [0] * size
        for m in range(1, size):
            low = m & -m
            sums[m] = sums[m ^ low] + w[low.bit_length() - 1]
        q = self._quota
        return [1 if s >= q else 0 for s in sums]

    def _key(self):
        return (self._weights, self._quota)

    def __repr__(self):
        return f"WeightedVotingGame(weights={list(self._weights)}, quota={self._quota})"


class InducedSubgraphGame(Game):
    """``v(S)`` is the total weight of the edges with both ends in ``S``."""

    backend = "isg"

    def __init__(self, n: int, edges, *, assume_simple: bool = False):
        super().__init__(n, assume_simple=assume_simple)
        items = edges.items() if isinstance(edges, Mapping) else ((e[:2], e[2]) for e in edges)
        weights: dict[tuple[int, int], Rational] = {}
        for (i, j), w in items:
            i, j = player_index(i, n), player_index(j, n)
            if i == j:
                raise ValidationError(f"self-loop on player {i}")
            key = (min(i, j), max(i, j))
            if key in weights:
                raise ValidationError(f"edge {key} listed twice")
            weights[key] = to_rational(w)
        self._edges = dict(sorted(weights.items()))

    @property
    def edges(self) -> dict[tuple[int, int], Rational]:
        return dict(self._edges)

    def edge_weight(self, i: int, j: int) -> Rational:
        return self._edges.get((min(i, j), max(i, j)), 0)

    def _value(self, mask):
        total = 0
        for (i, j), w in self._edges.items():
            if mask >> i & 1 and mask >> j & 1:
                total += w
        return total

    def _key(self):
        return tuple(self._edges.items())

    def __repr__(self):
        return f"InducedSubgraphGame(n={self.n}, edges={self._edges})"


class HypergraphGame(Game):
    """``v(S)`` is the total weight of the hyperedges contained in ``S``.

    Rank-1 hyperedges (player weights) are allowed, which makes additive games
    a special case.
    """

    backend = "hypergraph"

    def __init__(self, n: int, hyperedges, *, assume_simple: bool = False):
        super().__init__(n, assume_simple=assume_simple)
        out = []
        for members_, w in hyperedges:
            mask = coalition(members_, n)
            if mask == 0:
                raise ValidationError("hyperedges must be non-empty")
            out.append((mask, to_rational(w)))
        self._hyperedges = tuple(out)

    @property
    def hyperedges(self) -> tuple[tuple[Coalition, Rational], ...]:
        return self._hyperedges

    def _value(self, mask):
        total = 0
        for e, w in self._hyperedges:
            if e & mask == e:
                total += w
        return total

    def _key(self):
        return self._hyperedges

    def __repr__(self):
        edges = [(members(e), w) for e, w in self._hyperedges]
        return f"HypergraphGame(n={self.n}, hyperedges={edges})"


class MwcListGame(Game):
    """A simple game given by its minimal winning coalitions.

    ``v(S) = 1`` iff some listed coalition is contained in ``S``.  The list
    must be an antichain of non-empty coalitions.
    """

    backend = "mwc"
    claims_simple = True

    def __init__(self, n: int, mwcs: Iterable[CoalitionLike]):
        super().__init__(n)
        masks = []
        for c in mwcs:
            mask = coalition(c, n)
            if mask == 0:
                raise ValidationError("the empty coalition cannot be winning")
            masks.append(mask)
        masks.sort(key=sort_key)
        for a in range(len(masks)):
            for b in range(len(masks)):
                if a != b and masks[a] & masks[b] == masks[a]:
                    raise ValidationError(
                        f"not an antichain: {members(masks[a])} is contained in {members(masks[b])}"
                    )
        self._mwcs = tuple(masks)

    @property
    def mwcs(self) -> tuple[Coalition, ...]:
        return self._mwcs

    def _value(self, mask):
        for m in self._mwcs:
            if m & mask == m:
                return 1
        return 0

    def _key(self):
        return self._mwcs

    def __repr__(self):
        return f"MwcListGame(n={self.n}, mwcs={[members(m) for m in self._mwcs]})"


class ExplicitGame(Game):
    """A game given by its full table of ``2**n`` values."""

    backend = "explicit"

    def __init__(self, n: int, values: Sequence, *, assume_simple: bool = False):
        super().__init__(n, assume_simple=assume_simple)
        values = [to_rational(x) for x in values]
        if len(values) != 1 << n:
            raise ValidationError(f"explicit table needs {1 << n} values, got {len(values)}")
        if values[0] != 0:
            raise ValidationError(f"v(empty) must be 0, got {values[0]}")
        self._values = tuple(values)

    @property
    def values(self) -> tuple:
        return self._values

    def _value(self, mask):
        return self._values[mask]

    def _build_table(self):
        return list(self._values)

    def _key(self):
        return self._values

    def __repr__(self):
        return f"ExplicitGame(n={self.n}, values={list(self._values)})"


# -- flag checks -------------------------------------------------------------

def check_monotone(g: Game) -> bool:
    """True iff ``v(S) <= v(S + i)`` for every coalition and outside player."""
    guard("check_monotone", g.n)
    v = value_oracle(g)
    n = g.n
    result = True
    for mask in range(1 << n):
        here = v(mask)
        if any(not mask >> i & 1 and v(mask | 1 << i) < here for i in range(n)):
            result = False
            break
    g._flags["monotone"] = result
    return result


def check_simple(g: Game) -> bool:
    """True iff ``v`` is monotone and takes only the values 0 and 1.

    Always enumerates (subject to the size guard); use :func:`is_simple` to
    honour structural or caller-asserted simplicity.
    """
    guard("check_simple", g.n)
    v = value_oracle(g)
    result = all(v(m) in (0, 1) for m in range(1 << g.n)) and check_monotone(g)
    g._flags["simple"] = result
    return result


def is_simple(g: Game) -> bool:
    """Cheap simplicity test: structural or cached flag first, enumeration last."""
    flag = g._flags.get("simple")
    if flag is not None:
        return flag
    return check_simple(g)


def require_simple(g: Game, operation: str) -> None:
    if not is_simple(g):
        raise DomainError(f"{operation} requires a simple game (monotone, values in {{0, 1}})")
