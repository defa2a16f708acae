"""Exact Gaussian elimination over any field-like element type."""

from __future__ import annotations


def _iszero(x) -> bool:
    try:
        return x.is_zero()
    except AttributeError:
        return x == 0


def row_reduce(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not _iszero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not _iszero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve(matrix: list[list], rhs: list, zero) -> list | None:
    """Solve ``matrix @ x = rhs`` (possibly overdetermined); None if inconsistent
    or underdetermined."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        return None
    x = [zero] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def rank(matrix: list[list]) -> int:
    return len(row_reduce(matrix)[1])


def determinant(matrix: list[list], one):
    """Cofactor expansion; fine for the tiny sizes used here."""
    n = len(matrix)
    if n == 0:
        return one
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        if _iszero(matrix[0][j]):
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * determinant(minor, one)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else one * 0
