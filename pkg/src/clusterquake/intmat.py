"""Tiny exact dense matrix helpers.

Everything here works on tuples of tuples of ints (or Fractions) so
results can be hashed, compared exactly and stored on frozen dataclasses.
Ranks in finite type never exceed 8, so no attempt at being clever.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalConsistencyError

IntMatrix = tuple[tuple[int, ...], ...]


def freeze(rows) -> IntMatrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m))


def matmul(a, b) -> IntMatrix:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matvec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def column(m, j):
    return tuple(row[j] for row in m)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with det = +-1.

    Gauss-Jordan over Fraction; raises InternalConsistencyError if the
    matrix is singular or the inverse is not integral (det != +-1).
    """
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise InternalConsistencyError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = []
    for row in aug:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise InternalConsistencyError(
                    "matrix inverse is not integral (det != +-1)")
            ints.append(int(x))
        inv.append(tuple(ints))
    return tuple(inv)


def conjugate_by_diag(d, m) -> IntMatrix:
    """D * m * D^{-1} for D = diag(d), verified to stay integral."""
    out = []
    for i, row in enumerate(m):
        new_row = []
        for j, x in enumerate(row):
            val = Fraction(d[i] * x, d[j])
            if val.denominator != 1:
                raise InternalConsistencyError(
                    "diagonal conjugation left the integers")
            new_row.append(int(val))
        out.append(tuple(new_row))
    return tuple(out)
