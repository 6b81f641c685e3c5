"""Exact linear algebra over the rationals.

Elimination is fraction-free (Bareiss) on integer rows; the pivot is always the
leftmost column holding a nonzero entry, taken from the lowest-indexed
remaining row.  Results are returned in reduced row echelon form with
:class:`fractions.Fraction` entries, so nullspace bases are reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

__all__ = ["rref", "rank", "nullspace", "solve"]


def _integer_rows(rows):
    out = []
    for row in rows:
        d = 1
        for v in row:
            d = lcm(d, Fraction(v).denominator)
        out.append([int(Fraction(v) * d) for v in row])
    return out


def _bareiss(rows, ncols):
    """Fraction-free forward elimination. Returns (echelon rows, pivot columns)."""
    a = [list(r) for r in rows]
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            a[i] = [(piv * a[i][j] - f * a[r][j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ech, pivots = _bareiss(_integer_rows(rows), ncols)
    red = [[Fraction(v) for v in row] for row in ech]
    for i in range(len(red) - 1, -1, -1):
        c = pivots[i]
        pv = red[i][c]
        red[i] = [v / pv for v in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(_bareiss(_integer_rows(rows), ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : A v = 0}``, one vector per free column with that entry 1."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """One solution of ``A v = b`` (free variables set to zero), or ``None`` if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        v[p] = row[ncols]
    return v
