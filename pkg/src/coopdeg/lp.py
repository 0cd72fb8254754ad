"""Dense two-phase primal simplex over exact rationals.

Solves ``maximize c.z  s.t.  A z = b, z >= 0`` with Bland's rule, so it never
cycles.  The tableau keeps the phase-one artificial columns; at the end they
hold ``B^-1`` and give the optimal dual multipliers ``y = c_B B^-1``, which
satisfy ``A^T y >= c`` and ``b.y = c.z``.

Pivots only touch the non-zero entries of the pivot row, which keeps the
sparse 0/1 systems produced by the least-core programs cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    objective: Fraction | None = None
    duals: list[Fraction] | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, A, b, ncols):
        self.m = len(A)
        self.ncols = ncols
        # Row r: structural columns, then the artificial identity, then the rhs.
        self.rows = []
        for r in range(self.m):
            row = [Fraction(a) for a in A[r]] + [Fraction(0)] * self.m + [Fraction(b[r])]
            row[ncols + r] = Fraction(1)
            self.rows.append(row)
        self.basis = [ncols + r for r in range(self.m)]
        self.pivots = 0

    def pivot(self, r: int, col: int, cost: list[Fraction]) -> None:
        rows = self.rows
        prow = rows[r]
        p = prow[col]
        if p != 1:
            inv = 1 / p
            prow[:] = [a * inv if a else a for a in prow]
        nz = [k for k, a in enumerate(prow) if a]
        for k, row in enumerate(rows):
            if k != r:
                f = row[col]
                if f:
                    for c in nz:
                        row[c] -= f * prow[c]
        f = cost[col]
        if f:
            for c in nz:
                cost[c] -= f * prow[c]
        self.basis[r] = col
        self.pivots += 1

    def reduced_costs(self, c_full: list[Fraction]) -> list[Fraction]:
        """``d_j = c_j - c_B B^-1 A_j`` over every column (rhs last: ``-c_B x_B``)."""
        d = list(c_full) + [Fraction(0)]
        for r, col in enumerate(self.basis):
            cb = c_full[col]
            if cb:
                row = self.rows[r]
                for k, a in enumerate(row):
                    if a:
                        d[k] -= cb * a
        return d

    def run(self, d: list[Fraction], allowed: int) -> str:
        """Iterate until no column below ``allowed`` has positive reduced cost."""
        rows = self.rows
        rhs = len(d) - 1
        while True:
            col = next((j for j in range(allowed) if d[j] > 0), None)
            if col is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(rows):
                a = row[col]
                if a > 0:
                    ratio = row[rhs] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], col, d)


def simplex_max(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Maximise ``c.z`` subject to ``A z = b`` and ``z >= 0``, exactly."""
    m = len(A)
    ncols = len(c)
    A = [list(row) for row in A]
    b = list(b)
    flipped = [False] * m
    for r in range(m):
        if len(A[r]) != ncols:
            raise ValueError("constraint rows must match the objective length")
        if b[r] < 0:
            A[r] = [-a for a in A[r]]
            b[r] = -b[r]
            flipped[r] = True
    t = _Tableau(A, b, ncols)
    total = ncols + m

    # Phase one: maximise minus the sum of artificials.
    phase1 = [Fraction(0)] * ncols + [Fraction(-1)] * m
    d = t.reduced_costs(phase1)
    t.run(d, ncols)
    if d[-1] != 0:
        return LPResult(INFEASIBLE, pivots=t.pivots)

    # Drive zero-level artificials out of the basis; rows with no structural
    # entry left are redundant and keep their artificial at zero.
    for r in range(m):
        if t.basis[r] >= ncols:
            col = next((j for j in range(ncols) if t.rows[r][j] != 0), None)
            if col is not None:
                t.pivot(r, col, [Fraction(0)] * (total + 1))

    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    d = t.reduced_costs(cost)
    status = t.run(d, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=t.pivots)

    x = [Fraction(0)] * ncols
    for r, col in enumerate(t.basis):
        if col < ncols:
            x[col] = t.rows[r][-1]
    objective = sum((cost[j] * x[j] for j in range(ncols) if x[j]), Fraction(0))
    duals = []
    for k in range(m):
        y = sum((cost[col] * t.rows[r][ncols + k] for r, col in enumerate(t.basis) if cost[col]), Fraction(0))
        duals.append(-y if flipped[k] else y)
    return LPResult(OPTIMAL, x, objective, duals, t.pivots)
