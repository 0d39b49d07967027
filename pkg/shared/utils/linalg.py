"""Exact rational linear algebra on small dense matrices."""
from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


def rref(matrix: Sequence[Sequence], ncols: int) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form.

    Args:
        matrix: Rows of rationals, each of length `ncols`
        ncols: Column count (needed when `matrix` is empty)

    Returns:
        (nonzero rows of the RREF, pivot column of each row)
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence], ncols: int) -> int:
    return len(rref(matrix, ncols)[1])


def null_space(matrix: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : matrix x = 0}, one vector per free column."""
    rows, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space(matrix: Sequence[Sequence], ncols: int) -> Matrix:
    """Canonical basis of the row space (the RREF rows)."""
    return rref(matrix, ncols)[0]


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    """Inverse of a square nonsingular matrix."""
    n = len(matrix)
    augmented = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    rows, pivots = rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows]


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b) if x and y), Fraction(0))


def combine(coefficients: Sequence, basis: Sequence[Sequence], ncols: int) -> List[Fraction]:
    """sum_i coefficients[i] * basis[i]."""
    out = [Fraction(0)] * ncols
    for c, vec in zip(coefficients, basis):
        if c:
            for k, v in enumerate(vec):
                if v:
                    out[k] += c * v
    return out
