"""Small exact linear algebra: GF(2) systems and rational rank/nullspace.

Matrices here have at most a few dozen rows, so everything is dense Python.
GF(2) rows are stored as int bitmasks (bit j = column j).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class GF2System:
    """Row-reduced form of a GF(2) linear system ``A x = b``.

    Keeps pivot bookkeeping so that particular solutions and a kernel basis
    can both be read off.
    """

    def __init__(self, rows: Sequence[int], rhs: Sequence[int], ncols: int):
        self.ncols = ncols
        pivots: list[tuple[int, int, int]] = []  # (pivot col, row mask, rhs bit)
        consistent = True
        for row, bit in zip(rows, rhs):
            row &= (1 << ncols) - 1
            bit &= 1
            for col, prow, pbit in pivots:
                if row >> col & 1:
                    row ^= prow
                    bit ^= pbit
            if row == 0:
                if bit:
                    consistent = False
                continue
            col = (row & -row).bit_length() - 1
            # keep reduced: clear the new pivot column from existing pivot rows
            reduced = []
            for c, prow, pbit in pivots:
                if prow >> col & 1:
                    prow ^= row
                    pbit ^= bit
                reduced.append((c, prow, pbit))
            reduced.append((col, row, bit))
            pivots = reduced
        self.pivots = sorted(pivots)
        self.consistent = consistent

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> list[int]:
        used = {c for c, _, _ in self.pivots}
        return [j for j in range(self.ncols) if j not in used]

    def particular(self) -> int | None:
        """A solution with every free variable set to 0, or None."""
        if not self.consistent:
            return None
        x = 0
        for col, _, bit in self.pivots:
            if bit:
                x |= 1 << col
        return x

    def kernel_basis(self) -> list[int]:
        basis = []
        for f in self.free_columns:
            v = 1 << f
            for col, prow, _ in self.pivots:
                if prow >> f & 1:
                    v |= 1 << col
            basis.append(v)
        return basis


def gf2_rank(rows: Iterable[int], ncols: int) -> int:
    rows = list(rows)
    return GF2System(rows, [0] * len(rows), ncols).rank


def _to_fractions(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in r] for r in rows]


def row_echelon(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = _to_fractions(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivcols: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivcols


def rational_rank(rows: Iterable[Sequence]) -> int:
    """Exact rank over Q; integer rows use gcd-normalized fraction-free steps."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    if any(isinstance(v, Fraction) and v.denominator != 1 for r in m for v in r):
        return len(row_echelon(m)[1])
    m = [[int(v) for v in r] for r in m]
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        pr = m[rank]
        piv = pr[c]
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if f:
                row = [piv * a - f * b for a, b in zip(m[i], pr)]
                g = gcd(*row)
                m[i] = [v // g for v in row] if g > 1 else row
        rank += 1
        if rank == len(m):
            break
    return rank


def affine_solutions(
    rows: Sequence[Sequence], rhs: Sequence, ncols: int
) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Parametrize ``{x : A x = b}`` as ``x0 + span(basis)``; None if empty."""
    if not rows:
        return [Fraction(0)] * ncols, [
            [Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)
        ]
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = row_echelon(aug)
    if ncols in piv:
        return None
    x0 = [Fraction(0)] * ncols
    for r, c in zip(red, piv):
        x0[c] = r[ncols]
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in zip(red, piv):
            v[c] = -r[f]
        basis.append(v)
    return x0, basis
