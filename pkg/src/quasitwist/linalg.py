"""Dense exact linear algebra over a Field, on nested lists of encodings.

Matrices here are small (dimensions bounded by m*ell at desk scale), so
plain Gaussian elimination is the right tool; numpy enters only in the
oracle's bulk enumeration paths.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import ShapeError, SingularMatrix
from .galois import Field

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(field: Field, n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def matmul(field: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if len(a[0]) != len(b):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    add, mul = field.add, field.mul
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            orow.append(acc)
        out.append(orow)
    return out


def mat_vec(field: Field, a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [row[0] for row in matmul(field, a, [[x] for x in v])]


def rref(field: Field, mat: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field: Field, mat: Sequence[Sequence[int]]) -> int:
    if not mat:
        return 0
    return len(rref(field, mat)[1])


def nullspace(field: Field, mat: Sequence[Sequence[int]], cols: Optional[int] = None) -> Matrix:
    """Basis (as rows) of the right nullspace {v : mat . v = 0}."""
    if not mat:
        if cols is None:
            raise ShapeError("empty matrix needs an explicit column count")
        return identity(field, cols)
    cols = len(mat[0])
    red, pivots = rref(field, mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def solve(field: Field, mat: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[list[int]]:
    """One solution of mat . x = rhs, or None when inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, pivots = rref(field, aug)
    cols = len(mat[0])
    if cols in pivots:
        return None  # pivot in the augmented column
    x = [0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def inverse(field: Field, mat: Sequence[Sequence[int]]) -> Matrix:
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ShapeError("inverse needs a square matrix")
    aug = [list(row) + ident_row for row, ident_row in zip(mat, identity(field, n))]
    red, pivots = rref(field, aug)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


def is_invertible(field: Field, mat: Sequence[Sequence[int]]) -> bool:
    n = len(mat)
    return rank(field, mat) == n
