"""Exact matrix helpers over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def integer_adjugate(M: Sequence[Sequence[int]]) -> tuple[int, Matrix]:
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(det, R)`` with ``M @ R == det * I``. Every intermediate division
    is exact, so no rationals appear.
    """
    n = len(M)
    A = [list(map(int, row)) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    prev = 1
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        rowk = A[k]
        for i in range(n):
            if i == k:
                continue
            aik = A[i][k]
            row = A[i]
            for j in range(2 * n):
                num_ = akk * row[j] - aik * rowk[j]
                q, r = divmod(num_, prev)
                if r:
                    raise ArithmeticError("inexact fraction-free step")
                row[j] = q
        prev = akk
    det = A[0][0]
    R = [row[n:] for row in A]
    # Every diagonal entry equals the determinant of the row-permuted matrix.
    return sign * det, [[sign * x for x in row] for row in R]


def rational_inverse(M: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[k], A[piv] = A[piv], A[k]
        inv = 1 / A[k][k]
        A[k] = [x * inv for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                c = A[i][k]
                A[i] = [a - c * b for a, b in zip(A[i], A[k])]
    return [row[n:] for row in A]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]
