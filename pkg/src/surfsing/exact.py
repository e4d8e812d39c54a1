"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are ``int`` or ``Fraction``.  Sizes here
are tiny (a resolution graph rarely has more than a few dozen vertices), so
plain fraction-based Gaussian elimination is adequate and keeps every
result exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction_matrix(M: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def leading_minors(M: Sequence[Sequence]) -> list[Fraction]:
    """All leading principal minors ``det(M[:k, :k])`` for k = 1..n.

    Computed in one elimination pass: the k-th minor is the product of the
    first k pivots.  A zero pivot means that minor (and elimination without
    pivoting) stops; the remaining minors are recomputed directly.
    """
    n = len(M)
    A = to_fraction_matrix(M)
    minors: list[Fraction] = []
    prod = Fraction(1)
    for k in range(n):
        pivot = A[k][k]
        if pivot == 0:
            minors.extend(determinant([row[:j] for row in M[:j]]) for j in range(k + 1, n + 1))
            return minors
        prod *= pivot
        minors.append(prod)
        for i in range(k + 1, n):
            f = A[i][k] / pivot
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return minors


def determinant(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = to_fraction_matrix(M)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det


def inverse(M: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse.  Raises ``ZeroDivisionError`` on singular input."""
    n = len(M)
    A = to_fraction_matrix(M)
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[k], A[p] = A[p], A[k]
        I[k], I[p] = I[p], I[k]
        inv_pivot = 1 / A[k][k]
        A[k] = [x * inv_pivot for x in A[k]]
        I[k] = [x * inv_pivot for x in I[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
                I[i] = [a - f * b for a, b in zip(I[i], I[k])]
    return I


def matvec(M: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in M]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    return [[sum((Fraction(a) * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def ldl(M: Sequence[Sequence]) -> tuple[Matrix, list[Fraction]]:
    """``M = L diag(D) L^T`` with L unit lower triangular, for M positive definite.

    Raises ``ValueError`` if a pivot is not positive.
    """
    n = len(M)
    A = to_fraction_matrix(M)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = A[j][j] - sum((L[j][k] ** 2 * D[k] for k in range(j)), Fraction(0))
        if D[j] <= 0:
            raise ValueError(f"matrix is not positive definite (pivot {j} = {D[j]})")
        for i in range(j + 1, n):
            s = A[i][j] - sum((L[i][k] * L[j][k] * D[k] for k in range(j)), Fraction(0))
            L[i][j] = s / D[j]
    return L, D


def round_half_down(x: Fraction) -> int:
    """Nearest integer, ties toward minus infinity (deterministic)."""
    return ceil(x - Fraction(1, 2))


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


__all__ = [
    "Matrix", "to_fraction_matrix", "leading_minors", "determinant", "inverse",
    "matvec", "matmul", "ldl", "round_half_down", "fraction_str", "parse_fraction",
]
