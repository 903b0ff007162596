"""Small dense exact-rational matrix helpers (Fraction entries, tuple rows)."""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Sequence

from .errors import InputError

Mat = tuple[tuple[Q, ...], ...]

__all__ = ["Mat", "mat", "identity", "matmul", "matvec", "inverse", "transpose"]


def mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Q(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Mat, v: Sequence) -> tuple[Q, ...]:
    return tuple(sum(x * Q(y) for x, y in zip(row, v)) for row in a)


def inverse(a: Mat) -> Mat:
    """Gauss-Jordan inverse; raises InputError on a singular matrix."""
    n = len(a)
    aug = [list(row) + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise InputError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Q(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)
