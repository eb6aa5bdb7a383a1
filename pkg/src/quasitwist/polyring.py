"""Polynomials over a field, the quotient ring R = F_q[X]/(X^m - lambda),
the module R^ell, and the isomorphism phi between flat words and R^ell.

Coordinate layout is row-major: the word of length m*ell is read as an
m x ell matrix with coordinate index = row*ell + column, and column j
becomes the polynomial sum_i word[i*ell + j] X^i.  Under this layout the
lambda-constashift by ell positions corresponds to multiplying every
component by X in R.
"""

from __future__ import annotations

from typing import Sequence, Union

from .errors import DomainError, FieldMismatch, ShapeError
from .galois import Field, FieldElement

NEG_INF = float("-inf")


class Poly:
    """Dense polynomial over a field; coefficients are encodings,
    constant term first, normalized with no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: Field) -> "Poly":
        return Poly(field, ())

    @staticmethod
    def one(field: Field) -> "Poly":
        return Poly(field, (1,))

    @staticmethod
    def x(field: Field) -> "Poly":
        return Poly(field, (0, 1))

    @staticmethod
    def monomial(field: Field, coeff: int, deg: int) -> "Poly":
        return Poly(field, (0,) * deg + (coeff,))

    @staticmethod
    def x_pow_m_minus(field: Field, m: int, lam: int) -> "Poly":
        """X^m - lambda."""
        return Poly(field, (field.neg(lam),) + (0,) * (m - 1) + (1,))

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> Union[int, float]:
        """Degree, with -inf as the zero-polynomial sentinel."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.field is self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise FieldMismatch("expected a Poly")
        if other.field is not self.field:
            raise FieldMismatch("polynomials over different fields")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, [f.add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, [f.sub(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        f = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, out)

    def scale(self, c: int) -> "Poly":
        f = self.field
        return Poly(f, [f.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        lead_inv = f.inv(other.coeffs[-1])
        quo = [0] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = f.mul(c, lead_inv)
            quo[i - dd] = q
            for k, oc in enumerate(other.coeffs):
                rem[i - dd + k] = f.sub(rem[i - dd + k], f.mul(q, oc))
        return Poly(f, quo), Poly(f, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def divides(self, other: "Poly") -> bool:
        """True when self | other."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """(g, u, v) with u*self + v*other = g, g monic."""
        f = self.field
        r0, r1 = self, other
        u0, u1 = Poly.one(f), Poly.zero(f)
        v0, v1 = Poly.zero(f), Poly.one(f)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            u0, u1 = u1, u0 - q * u1
            v0, v1 = v1, v0 - q * v1
        if r0.is_zero():
            return r0, u0, v0
        lead_inv = f.inv(r0.coeffs[-1])
        return r0.scale(lead_inv), u0.scale(lead_inv), v0.scale(lead_inv)

    # -- evaluation ----------------------------------------------------------

    def eval_int(self, target: Field, x: int) -> int:
        """Horner evaluation at x, computed in `target` (which must contain
        this polynomial's coefficient field)."""
        if not target.contains_field(self.field):
            raise FieldMismatch("evaluation field does not contain the coefficient field")
        acc = 0
        for c in reversed(self.coeffs):
            acc = target.add(target.mul(acc, x), c)
        return acc

    def __call__(self, x: FieldElement) -> FieldElement:
        return FieldElement(x.field, self.eval_int(x.field, x.val))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(f"{c}")
            elif d == 1:
                terms.append(f"{c}*X" if c != 1 else "X")
            else:
                terms.append(f"{c}*X^{d}" if c != 1 else f"X^{d}")
        return "Poly(" + " + ".join(terms) + ")"


def ring_mul(f: Poly, g: Poly, m: int, lam: int) -> Poly:
    """Product in F_q[X]/(X^m - lambda): multiply then fold X^m -> lambda."""
    prod = f * g
    fld = f.field
    if len(prod.coeffs) <= m:
        return prod
    out = list(prod.coeffs[:m])
    out += [0] * (m - len(out))
    for i in range(m, len(prod.coeffs)):
        out[i - m] = fld.add(out[i - m], fld.mul(lam, prod.coeffs[i]))
    return Poly(fld, out)


def ring_inv(f: Poly, m: int, lam: int) -> Poly:
    """Inverse in F_q[X]/(X^m - lambda); raises DomainError when f is not
    a unit (i.e. gcd(f, X^m - lambda) != 1)."""
    fld = f.field
    mod = Poly.x_pow_m_minus(fld, m, lam)
    g, u, _ = (f % mod).xgcd(mod)
    if g.degree != 0:
        raise DomainError("polynomial is not invertible in the quotient ring")
    return u % mod


def ring_pow_x(m: int, lam: int, field: Field, e: int) -> Poly:
    """X^e in the quotient ring, by exponent folding."""
    e_mod = e % m
    wraps = e // m
    return Poly.monomial(field, field.pow(lam, wraps), e_mod)


def constashift(word: Sequence[int], lam: int, ell: int, field: Field) -> tuple[int, ...]:
    """Constacyclic shift by ell positions:
    (lam*c_{n-ell}, ..., lam*c_{n-1}, c_0, ..., c_{n-ell-1})."""
    n = len(word)
    if ell <= 0 or n % ell != 0:
        raise ShapeError(f"shift width {ell} must divide the length {n}")
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    head = [field.mul(lam, c) for c in word[n - ell:]]
    return tuple(head) + tuple(word[: n - ell])


class QuotientPolyVector:
    """Element of R^ell with R = F_q[X]/(X^m - lambda); each component is
    reduced to degree < m."""

    __slots__ = ("field", "m", "ell", "lam", "polys")

    def __init__(self, field: Field, m: int, ell: int, lam: int, polys: Sequence[Poly]):
        if len(polys) != ell:
            raise ShapeError(f"expected {ell} components, got {len(polys)}")
        for p in polys:
            if p.field is not field:
                raise FieldMismatch("component over the wrong field")
            if p.degree != NEG_INF and p.degree >= m:
                raise ShapeError("component degree must be < m")
        self.field = field
        self.m = m
        self.ell = ell
        self.lam = lam
        self.polys = tuple(polys)

    def _check(self, other: "QuotientPolyVector") -> None:
        if (other.field is not self.field or other.m != self.m
                or other.ell != self.ell or other.lam != self.lam):
            raise ShapeError("mismatched quotient module parameters")

    def __add__(self, other: "QuotientPolyVector") -> "QuotientPolyVector":
        self._check(other)
        return QuotientPolyVector(
            self.field, self.m, self.ell, self.lam,
            [a + b for a, b in zip(self.polys, other.polys)])

    def __sub__(self, other: "QuotientPolyVector") -> "QuotientPolyVector":
        self._check(other)
        return QuotientPolyVector(
            self.field, self.m, self.ell, self.lam,
            [a - b for a, b in zip(self.polys, other.polys)])

    def mul_x(self) -> "QuotientPolyVector":
        return QuotientPolyVector(
            self.field, self.m, self.ell, self.lam,
            [ring_mul(Poly.x(self.field), p, self.m, self.lam) for p in self.polys])

    def __eq__(self, other):
        return (isinstance(other, QuotientPolyVector) and other.field is self.field
                and (other.m, other.ell, other.lam) == (self.m, self.ell, self.lam)
                and other.polys == self.polys)

    def __hash__(self):
        return hash((id(self.field), self.m, self.ell, self.lam, self.polys))

    def weight(self) -> int:
        return sum(1 for p in self.polys for c in p.coeffs if c)

    def __repr__(self):
        return f"QPV(m={self.m}, ell={self.ell}, lam={self.lam}, {list(self.polys)})"


def phi(word: Sequence[int], m: int, ell: int, lam: int, field: Field) -> QuotientPolyVector:
    """Row-major word of length m*ell -> (c_0(X), ..., c_{ell-1}(X))."""
    if len(word) != m * ell:
        raise ShapeError(f"expected a word of length {m * ell}, got {len(word)}")
    polys = []
    for j in range(ell):
        polys.append(Poly(field, [word[i * ell + j] for i in range(m)]))
    return QuotientPolyVector(field, m, ell, lam, polys)


def phi_inv(vec: QuotientPolyVector) -> tuple[int, ...]:
    """Exact inverse of phi."""
    out = [0] * (vec.m * vec.ell)
    for j, p in enumerate(vec.polys):
        for i, c in enumerate(p.coeffs):
            out[i * vec.ell + j] = c
    return tuple(out)
