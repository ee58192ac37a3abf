"""Exact Fraction matrices: product, determinant, inverse.

Matrices are lists of lists. Sizes here are at most a handful, so plain
Gaussian elimination is all that is needed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularMatrixError(ZeroDivisionError):
    pass


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    inner = len(b)
    return [[sum((Fraction(row[k]) * b[k][j] for k in range(inner)), Fraction(0))
             for j in range(len(b[0]))] for row in a]


def add(a, b) -> Matrix:
    return [[Fraction(x) + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return result


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    m = [[Fraction(x) for x in row] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
