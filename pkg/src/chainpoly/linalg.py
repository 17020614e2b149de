"""Exact determinants and linear solves over the rationals and Q[t]."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial


def _to_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    den = 1
    for row in rows:
        for x in row:
            d = Fraction(x).denominator
            den = den * d // math.gcd(den, d)
    return [[int(Fraction(x) * den) for x in row] for row in rows], den


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a, den = _to_int_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return Fraction(sign * a[n - 1][n - 1], den**n)


def poly_det(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a polynomial matrix by Bareiss elimination over Q[t]."""
    n = len(rows)
    if n == 0:
        return Polynomial([1])
    a = [list(r) for r in rows]
    sign = 1
    prev = Polynomial([1])
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial()
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) / prev
        prev = piv
    return a[n - 1][n - 1] * sign


def solve(a: Sequence[Sequence], b: Sequence):
    """Solve a x = b exactly.

    Returns (x, status) where status is "unique", "non_unique" (x is one
    particular solution, free variables set to 0) or "inconsistent" (x None).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [[Fraction(v) for v in a[i]] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if rows[i][n]:
            return None, "inconsistent"
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x, ("unique" if len(pivots) == n else "non_unique")
