"""Core and least core.

The least core is the optimum of

    minimise eps  s.t.  x(S) >= v(S) - eps   for proper non-empty S
                        x_i >= v({i}),  x(N) = v(N)

Both routes below solve the LP dual with :func:`coopdeg.lp.simplex_max`
(one row per player plus one for ``eps``), so the primal optimum ``(x, eps)``
comes back as the dual multipliers and the dual solution is a certificate
that no imputation does better.

* :func:`least_core_bruteforce` writes one constraint per proper coalition.
* :func:`least_core_simple` keeps only the minimal winning coalitions (found
  inside ``G+``) and the singletons.  For a simple game every imputation is
  non-negative, so a winning coalition's constraint is implied by the one of
  any minimal winning coalition inside it, and a losing coalition's by the one
  of any of its members.  The singleton rows matter when no proper coalition
  wins (e.g. unanimity games), where ``eps*`` is negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dependency import DependencyGraph, minimal_winning_coalitions, veto_players
from .errors import DomainError, EmptyLeastCore, GameError
from .game import Coalition, Game, coalition, guard, members, require_simple, sort_key, to_rational
from .lp import OPTIMAL, simplex_max

BRUTE_FORCE_LIMIT = 10


class NotAnImputation(DomainError):
    """A payoff vector fails efficiency or individual rationality."""


@dataclass(frozen=True)
class LeastCoreResult:
    """``eps*``, an imputation attaining it, and the LP dual certificate.

    ``weights`` maps constraint coalitions to their dual multipliers (they sum
    to one), ``rationality`` holds the multipliers of ``x_i >= v({i})`` and
    ``budget`` the one of ``x(N) = v(N)``.
    """

    epsilon: Fraction
    x: tuple[Fraction, ...]
    binding: tuple[Coalition, ...]
    weights: dict = field(default_factory=dict, compare=False)
    rationality: tuple[Fraction, ...] = field(default=(), compare=False)
    budget: Fraction = field(default=Fraction(0), compare=False)


def _payoff(g: Game, x: Sequence) -> list:
    if len(x) != g.n:
        raise DomainError(f"payoff vector has {len(x)} entries for {g.n} players")
    return [to_rational(xi) if not isinstance(xi, (int, Fraction)) else xi for xi in x]


def payoff_of(x: Sequence, s: Coalition):
    return sum((x[i] for i in members(s)), 0)


def excess(g: Game, x: Sequence, s) -> Fraction:
    """``v(S) - x(S)`` for a proper non-empty coalition."""
    x = _payoff(g, x)
    mask = coalition(s, g.n)
    if mask == 0 or mask == g.grand:
        raise DomainError("excess is defined for coalitions other than the empty and grand coalitions")
    return g.v(mask) - payoff_of(x, mask)


def imputation_violation(g: Game, x: Sequence) -> str | None:
    """Describe the first failed imputation constraint, or ``None``."""
    x = _payoff(g, x)
    total = sum(x, 0)
    if total != g.v(g.grand):
        return f"efficiency fails: x(N) = {total} but v(N) = {g.v(g.grand)}"
    for i, xi in enumerate(x):
        if xi < g.v(1 << i):
            return f"individual rationality fails for player {i}: x = {xi} < v({{{i}}}) = {g.v(1 << i)}"
    return None


def has_imputation(g: Game) -> bool:
    return g.v(g.grand) >= sum(g.v(1 << i) for i in range(g.n))


def core_simple(g: Game) -> list[Fraction] | None:
    """A core imputation of a simple game with ``v(N) = 1``, or ``None``.

    The core is non-empty exactly when some player holds a veto; splitting the
    unit evenly among the veto players is then in the core.
    """
    require_simple(g, "core_simple")
    if g.v(g.grand) != 1:
        raise DomainError("core_simple expects v(N) = 1")
    veto = sorted(veto_players(g))
    if not veto:
        return None
    share = Fraction(1, len(veto))
    return [share if i in veto else Fraction(0) for i in range(g.n)]


def separation_oracle_simple(g: Game, mwcs: Sequence[Coalition], x: Sequence, eps) -> Coalition | None:
    """Check ``x(S) - v(S) >= -eps`` on the reduced constraint family.

    The family is the proper minimal winning coalitions plus the singletons.
    Returns ``None`` when every constraint holds, otherwise the lexicographically
    least coalition attaining the minimum of ``x(S) - v(S)``.
    """
    require_simple(g, "separation_oracle_simple")
    x = _payoff(g, x)
    problem = imputation_violation(g, x)
    if problem is not None:
        raise NotAnImputation(problem)
    worst = None
    for s in _reduced_family(g, mwcs):
        slack = payoff_of(x, s) - g.v(s)
        key = (slack, sort_key(s))
        if worst is None or key < worst[0]:
            worst = (key, s)
    if worst is None or worst[0][0] >= -to_rational(eps):
        return None
    return worst[1]


def _reduced_family(g: Game, mwcs: Sequence[Coalition]) -> list[Coalition]:
    grand = g.grand
    family = {m for m in mwcs if m and m != grand}
    if g.n > 1:
        family.update(1 << i for i in range(g.n))
    return sorted(family, key=sort_key)


def _solve(g: Game, family: Sequence[Coalition]) -> LeastCoreResult:
    n = g.n
    v_grand = g.v(g.grand)
    singles = [g.v(1 << i) for i in range(n)]
    if not has_imputation(g):
        raise EmptyLeastCore(f"v(N) = {v_grand} is below the sum of singleton values {sum(singles)}")
    if n == 1:
        # No proper coalition exists; eps* = 0 by convention.
        return LeastCoreResult(Fraction(0), (Fraction(v_grand),), ())

    k = len(family)
    cols = k + n + 2
    rows = [[0] * cols for _ in range(n + 1)]
    for c, s in enumerate(family):
        for i in members(s):
            rows[i][c] = 1
        rows[n][c] = 1
    for i in range(n):
        rows[i][k + i] = 1
        rows[i][k + n] = 1
        rows[i][k + n + 1] = -1
    objective = [g.v(s) for s in family] + singles + [v_grand, -v_grand]
    rhs = [0] * n + [1]

    res = simplex_max(rows, rhs, objective)
    if res.status != OPTIMAL:
        raise GameError(f"least-core program ended with status {res.status}")
    x = tuple(res.duals[:n])
    eps = res.duals[n]
    binding = tuple(s for s in family if g.v(s) - payoff_of(x, s) == eps)
    weights = {family[c]: res.x[c] for c in range(k) if res.x[c]}
    rationality = tuple(res.x[k:k + n])
    budget = res.x[k + n] - res.x[k + n + 1]
    return LeastCoreResult(eps, x, binding, weights, rationality, budget)


def least_core_bruteforce(g: Game) -> LeastCoreResult:
    """Least core with every proper coalition written out as a constraint."""
    guard("least_core_bruteforce", g.n, BRUTE_FORCE_LIMIT)
    return _solve(g, list(range(1, g.grand)))


def least_core_simple(g: Game, sg: DependencyGraph) -> LeastCoreResult:
    """Least core of a simple game from its minimal winning coalitions.

    ``sg`` is the supermodular dependency graph; the coalitions are enumerated
    in ``O(n 2^(p+1))`` value queries.
    """
    require_simple(g, "least_core_simple")
    if not has_imputation(g):
        raise EmptyLeastCore("the game admits no imputation")
    mwcs = minimal_winning_coalitions(g, sg)
    return _solve(g, _reduced_family(g, mwcs))


def certificate_violation(g: Game, result: LeastCoreResult, family: Sequence[Coalition] | None = None) -> str | None:
    """Re-check a least-core result exactly; ``None`` means it is certified.

    Checks that ``x`` is an imputation with every excess over ``family``
    (default: all proper coalitions) at most ``eps``, and that the dual
    multipliers prove no imputation has a smaller maximum excess.
    """
    problem = imputation_violation(g, result.x)
    if problem:
        return problem
    if family is None:
        guard("certificate_violation", g.n)
        family = range(1, g.grand)
    for s in family:
        if g.v(s) - payoff_of(result.x, s) > result.epsilon:
            return f"coalition {members(s)} has excess above eps"
    if g.n == 1:
        return None
    u = result.weights
    if any(w < 0 for w in u.values()) or sum(u.values(), Fraction(0)) != 1:
        return "coalition multipliers must be non-negative and sum to one"
    if any(m < 0 for m in result.rationality):
        return "rationality multipliers must be non-negative"
    for i in range(g.n):
        load = sum((w for s, w in u.items() if s >> i & 1), Fraction(0))
        if load + result.rationality[i] + result.budget != 0:
            return f"dual constraint for player {i} fails"
    bound = (
        sum((w * g.v(s) for s, w in u.items()), Fraction(0))
        + sum((m * g.v(1 << i) for i, m in enumerate(result.rationality)), Fraction(0))
        + result.budget * g.v(g.grand)
    )
    if bound != result.epsilon:
        return f"dual bound {bound} differs from eps = {result.epsilon}"
    return None
