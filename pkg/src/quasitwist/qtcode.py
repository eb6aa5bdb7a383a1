"""Quasi-twisted codes from reduced generator bases: validation of the four
structural properties, dimension, spectral data (eigenvalues, eigenspaces,
eigencodes), the HT-like minimum-distance bound, and encoding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import linalg
from .errors import (
    BoundNotApplicable,
    DomainError,
    InvalidBasis,
    InvalidBoundParams,
    NotAnEigenvalue,
    ShapeError,
)
from .galois import Field, FieldSpec, SplittingData, find_splitting_data
from .polyring import Poly, QuotientPolyVector, phi_inv, ring_mul

#: sentinel for an infinite eigencode distance
INFINITE = math.inf

#: enumeration cap for exact eigencode distance
EIGENCODE_EXHAUSTIVE_MAX = 1 << 20


class GroebnerGenMatrix:
    """Upper-triangular ell x ell polynomial generator matrix of a
    (lambda, ell)-QT code, in reduced-basis form."""

    __slots__ = ("field", "m", "ell", "lam", "rows")

    def __init__(self, field: Field, m: int, ell: int, lam: int,
                 rows: Sequence[Sequence[Poly]]):
        if len(rows) != ell or any(len(r) != ell for r in rows):
            raise ShapeError(f"expected an {ell}x{ell} matrix of polynomials")
        if not 0 < lam < field.order:
            raise DomainError("lambda must be a nonzero element of the base field")
        self.field = field
        self.m = m
        self.ell = ell
        self.lam = lam
        self.rows = tuple(tuple(r) for r in rows)

    @staticmethod
    def from_coeff_lists(field: Field, m: int, ell: int, lam: int,
                         coeffs: Sequence[Sequence[Sequence[int]]]) -> "GroebnerGenMatrix":
        rows = [[Poly(field, c) for c in row] for row in coeffs]
        return GroebnerGenMatrix(field, m, ell, lam, rows)

    def poly(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def eval_at(self, big: Field, x: int) -> list[list[int]]:
        """Dense ell x ell matrix of evaluations at x (encoding in `big`)."""
        return [[p.eval_int(big, x) for p in row] for row in self.rows]

    def validate(self) -> None:
        """Check the four reduced-basis properties; raise InvalidBasis."""
        f = self.field
        m, ell = self.m, self.ell
        mod = Poly.x_pow_m_minus(f, m, self.lam)
        for i in range(ell):
            for j in range(i):
                if not self.rows[i][j].is_zero():
                    raise InvalidBasis(1, f"entry ({i},{j}) below the diagonal is nonzero")
        for j in range(ell):
            dj = self.rows[j][j].degree
            for i in range(j):
                if self.rows[i][j].degree >= dj:
                    raise InvalidBasis(
                        2, f"deg g[{i}][{j}] = {self.rows[i][j].degree} >= deg g[{j}][{j}] = {dj}")
        for i in range(ell):
            if not self.rows[i][i].divides(mod):
                raise InvalidBasis(3, f"g[{i}][{i}] does not divide X^{m} - lambda")
        for i in range(ell):
            gii = self.rows[i][i]
            if gii.degree == m and gii.monic() == mod.monic():
                for j in range(ell):
                    if j != i and not self.rows[i][j].is_zero():
                        raise InvalidBasis(
                            4, f"row {i} has g[{i}][{i}] = X^{m} - lambda but g[{i}][{j}] != 0")

    def to_coeff_lists(self) -> list[list[list[int]]]:
        return [[list(p.coeffs) for p in row] for row in self.rows]


@dataclass(frozen=True)
class EigenData:
    """An eigenvalue beta with a basis of its eigenspace (rows over F)."""

    index: int
    beta: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class Eigencode:
    """The code over F_q orthogonal to an eigenspace V, with its distance."""

    v_basis: tuple[tuple[int, ...], ...]       # rows over F_{q^r}
    generator: tuple[tuple[int, ...], ...]     # rows over F_q
    d: Union[int, float]                       # positive int or INFINITE
    exact: bool = True                         # False when only a lower bound

    @property
    def is_trivial(self) -> bool:
        return not self.generator


@dataclass(frozen=True)
class HtBoundResult:
    d_star: int
    delta: int
    s: int
    indices: tuple[int, ...]
    v_basis: tuple[tuple[int, ...], ...]
    eigencode: Eigencode

    @property
    def d_eigencode(self) -> Union[int, float]:
        return self.eigencode.d


class QTCode:
    """A (lambda, ell)-QT code with cached spectral data.

    Immutable after construction; build through :func:`new_qt_code`.
    """

    def __init__(self, basis: GroebnerGenMatrix,
                 splitting: SplittingData, qspec: Optional[FieldSpec] = None):
        self.basis = basis
        self.field = basis.field
        self.m = basis.m
        self.ell = basis.ell
        self.lam = basis.lam
        self.n = basis.m * basis.ell
        self.splitting = splitting
        self.qspec = qspec
        self.k = self.n - sum(
            int(basis.rows[i][i].degree) for i in range(basis.ell))
        big = splitting.field
        self._evals: dict[int, list[list[int]]] = {}
        eig = []
        for i in range(self.m):
            beta = splitting.root(i)
            mat = basis.eval_at(big, beta)
            self._evals[i] = mat
            det_vanishes = any(mat[j][j] == 0 for j in range(self.ell))
            if det_vanishes:
                eig.append(i)
        self.eigenvalue_indices: tuple[int, ...] = tuple(eig)
        self._eigenspaces: dict[int, EigenData] = {}
        self._gen_matrix: Optional[list[list[int]]] = None

    # -- spectral data ------------------------------------------------------

    def beta(self, i: int) -> int:
        return self.splitting.root(i)

    def evaluated_basis(self, i: int) -> list[list[int]]:
        return self._evals[i % self.m]

    def algebraic_multiplicity(self, i: int) -> int:
        mat = self._evals[i % self.m]
        return sum(1 for j in range(self.ell) if mat[j][j] == 0)

    # -- encoding -----------------------------------------------------------

    def row_free_degrees(self) -> list[int]:
        return [self.m - int(self.basis.rows[j][j].degree) for j in range(self.ell)]

    def generator_matrix(self) -> list[list[int]]:
        """Dense k x n generator over F_q: rows phi^-1(X^d * basis row j),
        for j ascending and d ascending within each row."""
        if self._gen_matrix is None:
            rows = []
            for j in range(self.ell):
                free = self.m - int(self.basis.rows[j][j].degree)
                for d in range(free):
                    vec = self._combine({j: Poly.monomial(self.field, 1, d)})
                    rows.append(list(phi_inv(vec)))
            self._gen_matrix = rows
        return self._gen_matrix

    def _combine(self, multipliers: dict[int, Poly]) -> QuotientPolyVector:
        """sum_j a_j(X) * row_j as an element of R^ell."""
        f = self.field
        comps = [Poly.zero(f) for _ in range(self.ell)]
        for j, a in multipliers.items():
            if a.is_zero():
                continue
            for col in range(j, self.ell):
                g = self.basis.rows[j][col]
                if not g.is_zero():
                    comps[col] = comps[col] + ring_mul(a, g, self.m, self.lam)
        return QuotientPolyVector(f, self.m, self.ell, self.lam, comps)

    def codeword_from_multipliers(self, multipliers: Sequence[Poly]) -> QuotientPolyVector:
        return self._combine(dict(enumerate(multipliers)))

    def contains(self, word: Sequence[int]) -> bool:
        """Membership test by solving against the dense generator matrix."""
        if len(word) != self.n:
            raise ShapeError(f"expected a word of length {self.n}")
        gen = self.generator_matrix()
        if not gen:
            return all(c == 0 for c in word)
        cols = [[gen[r][c] for r in range(len(gen))] for c in range(self.n)]
        return linalg.solve(self.field, cols, list(word)) is not None

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"m": self.m, "ell": self.ell, "lam": self.lam,
             "basis": self.basis.to_coeff_lists()}
        if self.qspec is not None:
            d.update(self.qspec.to_dict())
        else:
            d.update({"p": self.field.p,
                      "s": self.field.degree if self.field.base is not None else 1,
                      "modulus": list(self.field.modulus) if self.field.base is not None else None})
        return d

    def __repr__(self):
        return (f"QTCode([{self.n},{self.k}]_{self.field.order}, "
                f"m={self.m}, ell={self.ell}, lam={self.lam})")


def new_qt_code(basis: GroebnerGenMatrix, qspec: Optional[FieldSpec] = None,
                modulus2: Optional[Sequence[int]] = None) -> QTCode:
    """Validate the reduced-basis properties and build the code with its
    splitting data and eigenvalue set."""
    basis.validate()
    if modulus2 is None and qspec is not None:
        modulus2 = qspec.modulus2
    splitting = find_splitting_data(basis.field, basis.m, basis.lam, modulus2=modulus2)
    return QTCode(basis, splitting, qspec=qspec)


def eigen_data(code: QTCode, i: int) -> EigenData:
    """Eigenspace basis at beta_i = alpha * xi^i, via Gaussian elimination
    over the splitting field."""
    i = i % code.m
    if i not in code.eigenvalue_indices:
        raise NotAnEigenvalue(f"index {i} is not an eigenvalue index")
    if i not in code._eigenspaces:
        big = code.splitting.field
        basis = linalg.nullspace(big, code._evals[i], cols=code.ell)
        code._eigenspaces[i] = EigenData(
            index=i, beta=code.beta(i),
            basis=tuple(tuple(v) for v in basis))
    return code._eigenspaces[i]


def intersection_eigenspace(code: QTCode, indices: Sequence[int]) -> list[list[int]]:
    """Basis rows of the intersection of the eigenspaces at `indices`."""
    big = code.splitting.field
    stacked: list[list[int]] = []
    for i in indices:
        stacked.extend(code._evals[i % code.m])
    return linalg.nullspace(big, stacked, cols=code.ell)


def eigencode_from_v(code_field: Field, big: Field,
                     v_basis: Sequence[Sequence[int]], ell: int,
                     exhaustive_max: int = EIGENCODE_EXHAUSTIVE_MAX) -> Eigencode:
    """Eigencode of the space spanned by `v_basis` (rows over `big`):
    vectors c in F_q^ell with sum_i v_i c_i = 0 for every basis vector."""
    q = code_field.order
    if not v_basis:
        gen = linalg.identity(code_field, ell)
        return Eigencode(v_basis=(), generator=tuple(tuple(r) for r in gen), d=1)
    # each F_{q^r} constraint expands to r constraints over F_q
    constraints: list[list[int]] = []
    r_dim = big.degree if big is not code_field else 1
    for v in v_basis:
        rows = [[0] * ell for _ in range(r_dim)]
        for col, comp in enumerate(v):
            for kc, c in enumerate(big.coeffs(comp) if big is not code_field else (comp,)):
                rows[kc][col] = c
        constraints.extend(rows)
    gen = linalg.nullspace(code_field, constraints, cols=ell)
    if not gen:
        return Eigencode(v_basis=tuple(tuple(v) for v in v_basis), generator=(), d=INFINITE)
    dim = len(gen)
    total = q ** dim
    if total > exhaustive_max:
        # too large to enumerate: fall back to the trivial sound lower bound
        return Eigencode(v_basis=tuple(tuple(v) for v in v_basis),
                         generator=tuple(tuple(r) for r in gen), d=1, exact=False)
    # exhaustive minimum weight over the eigencode
    best = None
    for idx in range(1, total):
        x = idx
        word = [0] * ell
        for row in gen:
            x, digit = divmod(x, q)
            if digit:
                for c in range(ell):
                    if row[c]:
                        word[c] = code_field.add(word[c], code_field.mul(digit, row[c]))
        w = sum(1 for c in word if c)
        if best is None or w < best:
            best = w
    return Eigencode(v_basis=tuple(tuple(v) for v in v_basis),
                     generator=tuple(tuple(r) for r in gen), d=best)


def eigencode(code: QTCode, indices: Sequence[int]) -> Eigencode:
    """Eigencode of the intersection eigenspace over `indices`."""
    if not indices:
        raise DomainError("the index set must be nonempty")
    for i in indices:
        if i % code.m not in code.eigenvalue_indices:
            raise NotAnEigenvalue(f"index {i % code.m} is not an eigenvalue index")
    v_basis = intersection_eigenspace(code, list(indices))
    return eigencode_from_v(code.field, code.splitting.field, v_basis, code.ell)


def bound_index_grid(a: int, n1: int, n2: int, s: int, delta: int, m: int) -> tuple[int, ...]:
    """The index set {a + i1*n1 + i2*n2 mod m} of the bound's eigenvalue grid."""
    return tuple(sorted({(a + i1 * n1 + i2 * n2) % m
                         for i1 in range(delta - 1) for i2 in range(s + 1)}))


def ht_bound(code: QTCode, a: int, n1: int, n2: int, s: int, delta: int) -> HtBoundResult:
    """HT-like lower bound d* = min(delta + s, d_eigencode) on the minimum
    distance, with the eigencode evidence attached."""
    m = code.m
    if delta < 2:
        raise InvalidBoundParams("delta must be >= 2")
    if a < 0 or s < 0 or n1 < 1 or n2 < 1:
        raise InvalidBoundParams("need a >= 0, s >= 0, n1 >= 1, n2 >= 1")
    if math.gcd(m, n1) != 1:
        raise InvalidBoundParams(f"gcd(m, n1) = {math.gcd(m, n1)} != 1")
    if math.gcd(m, n2) >= delta:
        raise InvalidBoundParams(f"gcd(m, n2) = {math.gcd(m, n2)} >= delta = {delta}")
    indices = bound_index_grid(a, n1, n2, s, delta, m)
    missing = [i for i in indices if i not in code.eigenvalue_indices]
    if missing:
        raise BoundNotApplicable(f"indices {missing} are not eigenvalue indices")
    v_basis = intersection_eigenspace(code, indices)
    if not v_basis:
        raise BoundNotApplicable("the intersection eigenspace is zero")
    ec = eigencode_from_v(code.field, code.splitting.field, v_basis, code.ell)
    d_star = int(min(delta + s, ec.d))
    return HtBoundResult(d_star=d_star, delta=delta, s=s, indices=indices,
                         v_basis=tuple(tuple(v) for v in v_basis), eigencode=ec)


def encode(code: QTCode, message: Sequence[int]) -> tuple[int, ...]:
    """Systematic-style encoding: message coordinates fill the row-multiplier
    coefficients in increasing (row, degree) order; the codeword is
    phi^-1(sum_j a_j(X) * basis row j)."""
    if len(message) != code.k:
        raise ShapeError(f"expected a message of length {code.k}, got {len(message)}")
    multipliers = {}
    pos = 0
    for j, free in enumerate(code.row_free_degrees()):
        multipliers[j] = Poly(code.field, message[pos:pos + free])
        pos += free
    return phi_inv(code._combine(multipliers))
