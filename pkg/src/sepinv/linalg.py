"""Small dense linear algebra over Q(i): determinants and ranks.

Matrices are lists of rows of :class:`GaussianRational`.  Elimination is the
fraction-free Bareiss scheme; over a field its divisions are exact anyway, but
it keeps intermediate entries as polynomial expressions of the inputs rather
than letting nested quotients pile up.
"""
from __future__ import annotations

from .scalar import ONE, ZERO, GaussianRational

__all__ = ["det", "det3", "rank", "bareiss"]


def det3(rows) -> GaussianRational:
    """Cofactor expansion of a 3x3 determinant."""
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def bareiss(rows):
    """Fraction-free row reduction.

    Returns ``(echelon_rows, rank, sign)``; for a square input of full rank the
    last pivot equals ``sign * det``.
    """
    m = [[GaussianRational.coerce(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = ONE
    sign = 1
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot_row = next((k for k in range(r, nrows) if m[k][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
            sign = -sign
        piv = m[r][col]
        for k in range(r + 1, nrows):
            mk = m[k]
            f = mk[col]
            mk[col] = ZERO
            for j in range(col + 1, ncols):
                mk[j] = (piv * mk[j] - f * m[r][j]) / prev
        prev = piv
        r += 1
    return m, r, sign


def det(rows) -> GaussianRational:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    if n == 1:
        return GaussianRational.coerce(rows[0][0])
    m, r, sign = bareiss(rows)
    if r < n:
        return ZERO
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def rank(rows) -> int:
    if not rows:
        return 0
    return bareiss(rows)[1]
