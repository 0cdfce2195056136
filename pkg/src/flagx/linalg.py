"""Small exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Everything here is sized for
root-system work (dimensions up to a few dozen), so plain Gauss-Jordan is
fine.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Sequence

Matrix = list[list[Q]]


class SingularMatrixError(ValueError):
    pass


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Q(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    a, bt = to_matrix(a), transpose(to_matrix(b))
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Q]) -> list[Q]:
    return [sum((Q(x) * y for x, y in zip(row, v)), Q(0)) for row in a]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = to_matrix(m)
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def solve(a: Matrix, b: Sequence[Q]) -> list[Q]:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    n = len(a)
    aug = [row + [Q(b[i])] for i, row in enumerate(to_matrix(a))]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [red[i][n] for i in range(n)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [row + e for row, e in zip(to_matrix(a), identity(n))]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def solve_in_span(columns: Sequence[Sequence[Q]], v: Sequence[Q]) -> list[Q] | None:
    """Coefficients expressing ``v`` in the span of ``columns``, or None.

    The columns need not be independent; free coefficients are set to zero.
    """
    if not columns:
        return [] if all(x == 0 for x in v) else None
    k = len(columns)
    aug = [[Q(col[i]) for col in columns] + [Q(v[i])] for i in range(len(v))]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    coeffs = [Q(0)] * k
    for row, c in zip(red, pivots):
        coeffs[c] = row[k]
    return coeffs


def is_positive_definite(a: Matrix) -> bool:
    """Exact LDL^T test for a symmetric matrix."""
    n = len(a)
    m = to_matrix(a)
    for k in range(n):
        d = m[k][k]
        if d <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / d
            if f:
                for j in range(k + 1, n):
                    m[i][j] -= f * m[k][j]
    return True


def charpoly(a: Matrix) -> list[Q]:
    """Characteristic polynomial det(x I - a), highest degree first.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    a = to_matrix(a)
    n = len(a)
    coeffs = [Q(1)]
    m = [[Q(0)] * n for _ in range(n)]
    c = Q(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        m = matmul(a, m)
        for i in range(n):
            m[i][i] += c
        am = matmul(a, m)
        c = -sum((am[i][i] for i in range(n)), Q(0)) / k
        coeffs.append(c)
    return coeffs


def polyval(coeffs: Sequence, x):
    acc = 0 * x
    for c in coeffs:
        acc = acc * x + c
    return acc
