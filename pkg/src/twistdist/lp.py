"""Exact feasibility LP: phase-1 simplex over Fractions with Bland's rule."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Some x >= 0 with A x = b, or None if the system is infeasible.

    Bland's smallest-index rule for both entering and leaving variables, so
    the method terminates on degenerate problems.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows: list[list[Fraction]] = []
    for i, (r, bi) in enumerate(zip(A, b)):
        row = [Fraction(v) for v in r]
        rhs = Fraction(bi)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # phase-1 reduced costs: minimize the sum of artificials
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded cannot happen in phase 1
            raise ArithmeticError("phase-1 objective unbounded")
        leave = best[1]
        prow = rows[leave]
        piv = prow[enter]
        prow = [v / piv for v in prow]
        rows[leave] = prow
        for i, row in enumerate(rows):
            if i != leave and row[enter] != 0:
                f = row[enter]
                rows[i] = [a - f * c for a, c in zip(row, prow)]
        f = cost[enter]
        cost = [a - f * c for a, c in zip(cost, prow)]
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][width]
    return x
