"""Twistulant (constacyclic circulant-like) matrix algebra and the
standard-form parity-check matrix [I | G_1* | ... | G_{ell-1}*].

A twistulant matrix is determined by its defining row; products and
inverses are computed in F_q[X]/(X^m - twist) on defining polynomials,
with dense matrices available for interop and oracle checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import DomainError, ShapeError, SingularLeadBlock, SingularMatrix
from .galois import Field
from .polyring import Poly, ring_inv, ring_mul


class TwistulantMatrix:
    """m x m matrix whose rows are successive twist-constashifts of the
    defining row; entry (i, j) is c_{j-i} for j >= i and twist*c_{m+j-i}
    otherwise."""

    __slots__ = ("field", "m", "twist", "row")

    def __init__(self, field: Field, m: int, twist: int, row: Sequence[int]):
        if len(row) != m:
            raise ShapeError(f"defining row must have length {m}")
        if twist == 0:
            raise DomainError("twist must be nonzero")
        self.field = field
        self.m = m
        self.twist = twist
        self.row = tuple(int(c) for c in row)

    @property
    def poly(self) -> Poly:
        return Poly(self.field, self.row)

    def entry(self, i: int, j: int) -> int:
        if j >= i:
            return self.row[j - i]
        return self.field.mul(self.twist, self.row[self.m + j - i])

    def dense(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.m)] for i in range(self.m)]

    def _check(self, other: "TwistulantMatrix") -> None:
        if (other.field is not self.field or other.m != self.m
                or other.twist != self.twist):
            raise ShapeError("twistulant parameters do not match")

    def __mul__(self, other: "TwistulantMatrix") -> "TwistulantMatrix":
        self._check(other)
        prod = ring_mul(self.poly, other.poly, self.m, self.twist)
        return twistulant_from_poly(prod, self.m, self.twist)

    def inv(self) -> "TwistulantMatrix":
        try:
            ip = ring_inv(self.poly, self.m, self.twist)
        except DomainError as exc:
            raise SingularMatrix(str(exc)) from None
        return twistulant_from_poly(ip, self.m, self.twist)

    def is_invertible(self) -> bool:
        mod = Poly.x_pow_m_minus(self.field, self.m, self.twist)
        return self.poly.gcd(mod).degree == 0

    def transpose(self) -> "TwistulantMatrix":
        """The transpose is twistulant with the inverse twist; its defining
        row is (c_0, twist*c_{m-1}, twist*c_{m-2}, ..., twist*c_1)."""
        f = self.field
        new_row = [self.row[0]] + [f.mul(self.twist, self.row[self.m - d])
                                   for d in range(1, self.m)]
        return TwistulantMatrix(f, self.m, f.inv(self.twist), new_row)

    def __eq__(self, other):
        return (isinstance(other, TwistulantMatrix) and other.field is self.field
                and (other.m, other.twist, other.row) == (self.m, self.twist, self.row))

    def __hash__(self):
        return hash((id(self.field), self.m, self.twist, self.row))

    def __repr__(self):
        return f"Twistulant(m={self.m}, twist={self.twist}, row={self.row})"


def twistulant_from_poly(c: Poly, m: int, twist: int) -> TwistulantMatrix:
    if c.degree != float("-inf") and c.degree >= m:
        raise ShapeError(f"defining polynomial degree {c.degree} must be < {m}")
    row = list(c.coeffs) + [0] * (m - len(c.coeffs))
    return TwistulantMatrix(c.field, m, twist, row)


def identity_twistulant(field: Field, m: int, twist: int) -> TwistulantMatrix:
    return TwistulantMatrix(field, m, twist, (1,) + (0,) * (m - 1))


def cycle_matrix(field: Field, m: int, lam: int) -> TwistulantMatrix:
    """The m-cycle matrix B with lam in the upper-right corner; it is a
    twistulant with twist lam^-1 and defining polynomial lam*X^{m-1}."""
    row = [0] * m
    row[m - 1] = lam
    return TwistulantMatrix(field, m, field.inv(lam), row)


@dataclass(frozen=True)
class ParityCheckMatrix:
    """Standard form [I | G_1* | ... | G_{ell-1}*]; the blocks carry the
    inverse twist of the code they check (the dual code's twist)."""

    field: Field
    m: int
    twist: int                      # block twist = code_lam^-1
    blocks: tuple[TwistulantMatrix, ...]   # G_1*, ..., G_{ell-1}*

    @property
    def ell(self) -> int:
        return len(self.blocks) + 1

    @property
    def code_lam(self) -> int:
        return self.field.inv(self.twist)

    def dense(self) -> list[list[int]]:
        m = self.m
        out = [[0] * (m * self.ell) for _ in range(m)]
        for i in range(m):
            out[i][i] = 1
        for b, blk in enumerate(self.blocks, start=1):
            for i in range(m):
                for j in range(m):
                    out[i][b * m + j] = blk.entry(i, j)
        return out

    def defining_rows(self) -> list[tuple[int, ...]]:
        return [blk.row for blk in self.blocks]

    def syndrome(self, word: Sequence[int]) -> list[int]:
        """H . word^T for a contiguous-block word of length m*ell."""
        if len(word) != self.m * self.ell:
            raise ShapeError(f"expected a word of length {self.m * self.ell}")
        f = self.field
        out = list(word[: self.m])
        for b, blk in enumerate(self.blocks, start=1):
            seg = word[b * self.m:(b + 1) * self.m]
            for i in range(self.m):
                acc = out[i]
                for j in range(self.m):
                    if seg[j]:
                        acc = f.add(acc, f.mul(blk.entry(i, j), seg[j]))
                out[i] = acc
        return out


def standard_form(blocks: Sequence[TwistulantMatrix]) -> ParityCheckMatrix:
    """Rewrite [G_0 | G_1 | ... ] as [I | G_0^-1 G_1 | ...]; raises
    SingularLeadBlock when G_0 is not invertible so the caller can resample."""
    if not blocks:
        raise ShapeError("need at least one block")
    g0 = blocks[0]
    for b in blocks[1:]:
        g0._check(b)
    try:
        g0_inv = g0.inv()
    except SingularMatrix:
        raise SingularLeadBlock("leading block is singular") from None
    out = tuple(g0_inv * b for b in blocks[1:])
    return ParityCheckMatrix(field=g0.field, m=g0.m, twist=g0.twist, blocks=out)


def validate_h_conditions(h: ParityCheckMatrix) -> tuple[bool, list[str]]:
    """Check the parity-check block conditions.

    1. The defining polynomials of G_1*, ..., G_{ell-1}* are pairwise distinct.
    2. When the code twist is 1 or q = 2: each defining polynomial has some
       coefficient index i in [1, m-1] whose value differs from every other
       coefficient at indices in [1, m-1].
    """
    diagnostics: list[str] = []
    rows = h.defining_rows()
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if rows[i] == rows[j]:
                diagnostics.append(
                    f"condition 1: blocks {i + 1} and {j + 1} share a defining polynomial")
    if h.code_lam == 1 or h.field.order == 2:
        for b, row in enumerate(rows, start=1):
            tail = row[1:]
            if not any(all(tail[i] != tail[j] for j in range(len(tail)) if j != i)
                       for i in range(len(tail))):
                diagnostics.append(
                    f"condition 2: block {b} has no coefficient distinct from the rest")
    return (not diagnostics), diagnostics


def dense_mul(field: Field, a: TwistulantMatrix, b: TwistulantMatrix) -> list[list[int]]:
    """Dense-matrix product, used as an oracle for the ring-based product."""
    return linalg.matmul(field, a.dense(), b.dense())
