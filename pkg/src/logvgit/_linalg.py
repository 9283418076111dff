"""Small exact linear algebra over ``Fraction`` and ``int``.

Matrices are lists of rows. Nothing here is fast; everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for r in range(k + 1, size):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[-1][-1]


def primitive(vector: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero vector unchanged)."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        return tuple(vector)
    return tuple(x // g for x in vector)


def cross_kernel(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generator of the kernel of an ``(m-1) x m`` integer matrix.

    Signed maximal minors; the zero vector signals a rank drop.
    """
    m = len(rows) + 1
    out = []
    for j in range(m):
        minor = [[row[c] for c in range(m) if c != j] for row in rows]
        out.append((-1) ** j * det_int(minor))
    return tuple(out)


def row_reduce(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in matrix]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(matrix)[1])


def kernel(matrix: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right null space of ``matrix`` (which has ``ncols`` columns)."""
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = row_reduce(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -reduced[row_idx][fc]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``matrix @ x = rhs``, or ``None`` if inconsistent."""
    ncols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = row_reduce(augmented)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row_idx, pc in enumerate(pivots):
        x[pc] = reduced[row_idx][ncols]
    return x
