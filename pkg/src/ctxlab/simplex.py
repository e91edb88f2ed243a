"""Exact Phase-I simplex for rational feasibility problems.

Solves  find x >= 0 with A x = b  on a dense Fraction tableau.  Bland's
pivoting rule guarantees termination; artificial columns stay in the tableau
so that on infeasibility the dual multipliers y (with y^T A <= 0 componentwise
and y^T b > 0) can be read off the final reduced costs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    solution: dict[int, Fraction] | None  # column index -> positive value
    farkas: list[Fraction] | None  # one multiplier per constraint row


def solve_feasibility(matrix: list[list[Fraction]], rhs: list[Fraction]) -> FeasibilityResult:
    m = len(matrix)
    n = len(matrix[0]) if m else 0

    flipped = [r for r in range(m) if rhs[r] < 0]
    rows = []
    b = []
    for r in range(m):
        sign = -1 if r in flipped else 1
        rows.append([sign * v for v in matrix[r]])
        b.append(sign * rhs[r])

    # tableau columns: n originals, m artificials, rhs
    tableau = [rows[r] + [ONE if i == r else ZERO for i in range(m)] + [b[r]] for r in range(m)]
    basis = [n + r for r in range(m)]
    # reduced costs for cost vector (0,...,0,1,...,1), artificial basis
    cost = [-sum(tableau[r][j] for r in range(m)) for j in range(n)]
    cost += [ZERO] * m
    cost.append(-sum(b))  # negative objective value
    left_basis = [False] * m  # artificials barred from re-entering

    total_cols = n + m
    while True:
        enter = -1
        for j in range(total_cols):
            if j >= n and left_basis[j - n]:
                continue
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for r in range(m):
            a = tableau[r][enter]
            if a > 0:
                ratio = tableau[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        assert leave >= 0, "phase-I objective is bounded below"
        if basis[leave] >= n:
            left_basis[basis[leave] - n] = True
        _pivot(tableau, cost, basis, leave, enter)

    objective = -cost[-1]
    if objective == 0:
        solution: dict[int, Fraction] = {}
        for r, var in enumerate(basis):
            if var < n and tableau[r][-1] != 0:
                solution[var] = tableau[r][-1]
        return FeasibilityResult(True, solution, None)

    # c_bar(artificial r) = 1 - y_r; undo any row sign flips
    farkas = [ONE - cost[n + r] for r in range(m)]
    for r in flipped:
        farkas[r] = -farkas[r]
    return FeasibilityResult(False, None, farkas)


def _pivot(tableau, cost, basis, leave: int, enter: int) -> None:
    m = len(tableau)
    piv = tableau[leave][enter]
    inv = ONE / piv
    tableau[leave] = [v * inv for v in tableau[leave]]
    pivot_row = tableau[leave]
    for r in range(m):
        if r == leave:
            continue
        factor = tableau[r][enter]
        if factor != 0:
            tableau[r] = [v - factor * w for v, w in zip(tableau[r], pivot_row)]
    factor = cost[enter]
    if factor != 0:
        for j in range(len(cost)):
            cost[j] -= factor * pivot_row[j]
    basis[leave] = enter
