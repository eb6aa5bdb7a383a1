"""Exact arithmetic in F_p, F_q = F_{p^s}, and tower extensions F_{q^r}.

Elements are encoded as integers in [0, order): the base-p digit expansion
of the coefficient vector in the fixed modulus basis, least-significant
coefficient first.  Subfields embed as the identity on encodings, so an
F_q integer is directly usable inside any extension of F_q.

Multiplication runs on discrete-log tables built once per field; this is
feasible because desk-scale fields stay small (order <= 2^20).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, FieldMismatch, UnsupportedParameters

#: largest field order for which log/exp tables are built
LOG_TABLE_MAX = 1 << 20
#: largest field order for which dense pairwise numpy tables are built
PAIR_TABLE_MAX = 2048


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (desk scale)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


class Field:
    """A finite field, either F_p or an extension of another Field.

    Do not instantiate directly; use :func:`prime_field` and
    :func:`extension_field` so instances are cached and comparable by
    identity.
    """

    def __init__(self, p: int, base: Optional["Field"], modulus: Optional[tuple],
                 generator_hint: Optional[int] = None, _token: object = None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use prime_field()/extension_field() to build fields")
        self.p = p
        self.base = base
        self.modulus = modulus
        if base is None:
            self.degree = 1
            self.order = p
        else:
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
        if self.order > LOG_TABLE_MAX:
            raise UnsupportedParameters(
                f"field of order {self.order} exceeds the desk-scale limit {LOG_TABLE_MAX}")
        self._build_tables(generator_hint)
        self._pair_tables = None

    # -- construction internals ------------------------------------------

    def _decompose(self, x: int) -> list[int]:
        base_order = self.base.order
        digits = []
        for _ in range(self.degree):
            x, d = divmod(x, base_order)
            digits.append(d)
        return digits

    def _compose(self, digits: Sequence[int]) -> int:
        base_order = self.base.order
        x = 0
        for d in reversed(digits):
            x = x * base_order + d
        return x

    def _raw_mul(self, a: int, b: int) -> int:
        """Table-free multiplication, used while bootstrapping tables."""
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        base = self.base
        da, db = self._decompose(a), self._decompose(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        return self._compose(self._reduce(prod))

    def _reduce(self, coeffs: list[int]) -> list[int]:
        """Reduce a coefficient vector (over base) by the monic modulus."""
        base = self.base
        mod = self.modulus
        d = self.degree
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, d - 1, -1):
            lead = coeffs[i]
            if lead:
                coeffs[i] = 0
                for k in range(d):
                    coeffs[i - d + k] = base.sub(coeffs[i - d + k], base.mul(lead, mod[k]))
        coeffs = coeffs[:d]
        coeffs += [0] * (d - len(coeffs))
        return coeffs

    def _mul_by_x(self, digits: list[int]) -> list[int]:
        """Multiply a digit vector by X and reduce: O(degree)."""
        base = self.base
        mod = self.modulus
        lead = digits[-1]
        out = [0] + digits[:-1]
        if lead:
            for k in range(self.degree):
                out[k] = base.sub(out[k], base.mul(lead, mod[k]))
        return out

    def _build_tables(self, generator_hint: Optional[int]) -> None:
        n1 = self.order - 1
        if self.base is None:
            g = generator_hint if generator_hint is not None else _smallest_primitive_root(self.p)
            exp = [1] * n1
            for k in range(1, n1):
                exp[k] = (exp[k - 1] * g) % self.p
        else:
            # generator candidates: X first (our default moduli are primitive)
            g = generator_hint if generator_hint is not None else self.base.order
            exp = self._exp_from_generator(g)
            if exp is None:
                g, exp = self._search_generator()
        log = [-1] * self.order
        for k, v in enumerate(exp):
            log[v] = k
        if any(v == -1 for v in log[1:]):
            raise DomainError("modulus is not irreducible: multiplicative group is too small")
        self.generator = g
        self._exp = exp
        self._log = log
        if self.base is not None:
            # Zech logarithms: zech[k] = log(g^k + 1), -1 when g^k + 1 = 0;
            # addition then runs on table lookups alone
            p = self.p
            zech = [-1] * n1
            for k, v in enumerate(exp):
                low = v % p
                w = v - low + ((low + 1) % p)
                zech[k] = log[w] if w else -1
            self._zech = zech
            self._half = n1 // 2 if p != 2 else 0

    def _exp_from_generator(self, g: int) -> Optional[list[int]]:
        """Exp table for generator g, or None if its order is too small."""
        n1 = self.order - 1
        if g == self.base.order and self.modulus[0] != 0:
            # fast path: g is X, multiplication is a shift-and-reduce
            digits = [0] * self.degree
            digits[0] = 1
            exp = [1]
            for _ in range(1, n1):
                digits = self._mul_by_x(digits)
                v = self._compose(digits)
                if v == 1:
                    return None
                exp.append(v)
            if self._compose(self._mul_by_x(digits)) != 1:
                return None
            return exp
        cur = 1
        exp = [1]
        for _ in range(1, n1):
            cur = self._raw_mul(cur, g)
            if cur == 1:
                return None
            exp.append(cur)
        if self._raw_mul(cur, g) != 1:
            return None
        return exp

    def _search_generator(self) -> tuple[int, list[int]]:
        for g in range(2, self.order):
            exp = self._exp_from_generator(g)
            if exp is not None:
                return g, exp
        raise DomainError("no multiplicative generator found; modulus is reducible")

    # -- integer-level arithmetic ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.order - 1)]

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if self.p == 2 or a == 0:
            return a
        return self._exp[(self._log[a] + self._half) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("division by zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DomainError("division by zero")
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def log(self, a: int) -> int:
        """Discrete log with respect to the designated generator."""
        if a == 0:
            raise DomainError("zero has no discrete log")
        return self._log[a]

    def g_pow(self, k: int) -> int:
        """generator ** k as an element encoding."""
        return self._exp[k % (self.order - 1)]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        n1 = self.order - 1
        return n1 // math.gcd(self._log[a], n1)

    # -- structure --------------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Coefficient vector over the base field (constant first)."""
        if self.base is None:
            return (x,)
        return tuple(self._decompose(x))

    def from_coeffs(self, digits: Sequence[int]) -> int:
        if self.base is None:
            if len(digits) != 1:
                raise FieldMismatch("prime field elements have one coefficient")
            return digits[0] % self.p
        if len(digits) != self.degree:
            raise FieldMismatch(
                f"expected {self.degree} coefficients, got {len(digits)}")
        return self._compose(list(digits))

    def contains_field(self, other: "Field") -> bool:
        """True when `other` appears in this field's tower chain."""
        f: Optional[Field] = self
        while f is not None:
            if f is other:
                return True
            f = f.base
        return False

    def element(self, x: int) -> "FieldElement":
        if not 0 <= x < self.order:
            raise DomainError(f"{x} is not an encoding in [0, {self.order})")
        return FieldElement(self, x)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, x) for x in range(self.order))

    def power_str(self, x: int, symbol: str = "a") -> str:
        """Power-of-generator notation, e.g. 'a^52', '1', '0'."""
        if x == 0:
            return "0"
        k = self._log[x]
        if k == 0:
            return "1"
        if k == 1:
            return symbol
        return f"{symbol}^{k}"

    def pair_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense (add, mul) numpy tables for vectorized arithmetic."""
        if self._pair_tables is None:
            if self.order > PAIR_TABLE_MAX:
                raise UnsupportedParameters(
                    f"pairwise tables limited to order {PAIR_TABLE_MAX}")
            n = self.order
            add = np.empty((n, n), dtype=np.int64)
            mul = np.empty((n, n), dtype=np.int64)
            for a in range(n):
                for b in range(a, n):
                    s = self.add(a, b)
                    m = self.mul(a, b)
                    add[a, b] = add[b, a] = s
                    mul[a, b] = mul[b, a] = m
            self._pair_tables = (add, mul)
        return self._pair_tables

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order})/GF({self.base.order})[X]/{list(self.modulus)}"


_FIELD_TOKEN = object()
_FIELD_CACHE: dict[tuple, Field] = {}


def _field_key(field: Field) -> tuple:
    if field.base is None:
        return ("p", field.p)
    return ("e", _field_key(field.base), field.modulus)


def prime_field(p: int) -> Field:
    if not is_prime(p):
        raise UnsupportedParameters(f"{p} is not prime")
    key = ("p", p)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(p, None, None, _token=_FIELD_TOKEN)
    return _FIELD_CACHE[key]


def extension_field(base: Field, degree: Optional[int] = None,
                    modulus: Optional[Sequence[int]] = None) -> Field:
    """Extension of `base`; the modulus defaults to the lexicographically
    smallest monic polynomial whose root generates the multiplicative group
    (coefficient tuples compared constant term first)."""
    if modulus is None:
        if degree is None or degree < 1:
            raise DomainError("need a degree or an explicit modulus")
        modulus = smallest_primitive_modulus(base, degree)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree >= 1")
        if any(not 0 <= c < base.order for c in modulus):
            raise FieldMismatch("modulus coefficients must be base-field encodings")
        if degree is not None and len(modulus) - 1 != degree:
            raise DomainError("modulus degree does not match the requested degree")
    key = ("e", _field_key(base), tuple(modulus))
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(base.p, base, tuple(modulus), _token=_FIELD_TOKEN)
    return _FIELD_CACHE[key]


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    facs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in facs):
            return g
    raise DomainError(f"no primitive root mod {p}")


_PRIMITIVE_MODULUS_CACHE: dict[tuple, tuple[int, ...]] = {}


def smallest_primitive_modulus(base: Field, degree: int) -> tuple[int, ...]:
    """First monic degree-`degree` polynomial over `base`, in lexicographic
    order of (c_0, ..., c_{d-1}), whose root X is a multiplicative generator."""
    cache_key = (_field_key(base), degree)
    hit = _PRIMITIVE_MODULUS_CACHE.get(cache_key)
    if hit is not None:
        return hit
    n1 = base.order ** degree - 1
    facs = prime_factors(n1)
    for tail in itertools.product(range(base.order), repeat=degree):
        if tail[0] == 0:
            continue  # X divides f
        modulus = tail + (1,)
        if _x_is_primitive(base, modulus, n1, facs):
            _PRIMITIVE_MODULUS_CACHE[cache_key] = modulus
            return modulus
    raise DomainError("no primitive modulus found")


def _poly_modmul(base: Field, a: list[int], b: list[int], mod: tuple) -> list[int]:
    d = len(mod) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
    for i in range(len(prod) - 1, d - 1, -1):
        lead = prod[i]
        if lead:
            prod[i] = 0
            for k in range(d):
                prod[i - d + k] = base.sub(prod[i - d + k], base.mul(lead, mod[k]))
    return prod[:d] + [0] * (d - len(prod[:d]))


def _poly_modpow_x(base: Field, e: int, mod: tuple) -> list[int]:
    """X^e reduced mod the monic polynomial `mod`."""
    d = len(mod) - 1
    result = [0] * d
    result[0] = 1
    sq = [0] * d
    if d == 1:
        sq[0] = base.neg(mod[0])
    else:
        sq[1] = 1
    while e:
        if e & 1:
            result = _poly_modmul(base, result, sq, mod)
        e >>= 1
        if e:
            sq = _poly_modmul(base, sq, sq, mod)
    return result


def _x_is_primitive(base: Field, modulus: tuple, n1: int, facs: list[int]) -> bool:
    one = [1] + [0] * (len(modulus) - 2)
    if _poly_modpow_x(base, n1, modulus) != one:
        return False
    return all(_poly_modpow_x(base, n1 // f, modulus) != one for f in facs)


def is_irreducible(base: Field, poly: Sequence[int]) -> bool:
    """Irreducibility over `base` via the Frobenius gcd criterion."""
    coeffs = [c for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        return False
    if coeffs[-1] != 1:
        inv = base.inv(coeffs[-1])
        coeffs = [base.mul(c, inv) for c in coeffs]
    mod = tuple(coeffs)
    q = base.order
    # X^(q^d) == X mod f
    frob = _poly_modpow_x(base, q ** d, mod)
    x_poly = [0] * d
    if d == 1:
        x_poly[0] = base.neg(mod[0])
    else:
        x_poly[1] = 1
    if frob != x_poly:
        return False
    for ell in prime_factors(d):
        h = _poly_modpow_x(base, q ** (d // ell), mod)
        diff = [base.sub(a, b) for a, b in zip(h, x_poly)]
        if _poly_gcd_is_one(base, diff, list(mod)) is False:
            return False
    return True


def _poly_gcd_is_one(base: Field, a: list[int], b: list[int]) -> bool:
    def deg(v):
        for i in range(len(v) - 1, -1, -1):
            if v[i]:
                return i
        return -1

    a, b = list(a), list(b)
    while True:
        da, db = deg(a), deg(b)
        if db < 0:
            return da == 0
        if da < db:
            a, b = b, a
            continue
        # a -= lead(a)/lead(b) * X^(da-db) * b
        f = base.div(a[da], b[db])
        shift = da - db
        for k in range(db + 1):
            a[k + shift] = base.sub(a[k + shift], base.mul(f, b[k]))


class FieldElement:
    """A field element: a coefficient vector in the fixed modulus basis,
    carried as its integer encoding together with its field."""

    __slots__ = ("field", "val")

    def __init__(self, field: Field, val: int):
        self.field = field
        self.val = val

    def _coerce(self, other) -> tuple["FieldElement", "FieldElement"]:
        if isinstance(other, int):
            if not 0 <= other < self.field.order:
                raise DomainError(f"{other} is not an encoding in [0, {self.field.order})")
            other = FieldElement(self.field, other)
        if not isinstance(other, FieldElement):
            return NotImplemented, NotImplemented
        if other.field is self.field:
            return self, other
        if self.field.contains_field(other.field):
            return self, FieldElement(self.field, other.val)
        if other.field.contains_field(self.field):
            return FieldElement(other.field, self.val), other
        raise FieldMismatch(f"{self.field!r} and {other.field!r} are unrelated")

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field.add(a.val, b.val))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field.sub(a.val, b.val))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field.sub(b.val, a.val))

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field.mul(a.val, b.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field.div(a.val, b.val))

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field.div(b.val, a.val))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.val, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == other
        if isinstance(other, FieldElement):
            try:
                a, b = self._coerce(other)
            except FieldMismatch:
                return False
            return a.val == b.val
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.val))

    def __bool__(self):
        return self.val != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.val)

    def log(self) -> int:
        return self.field.log(self.val)

    def order(self) -> int:
        return self.field.element_order(self.val)

    def __repr__(self):
        return f"<{self.field.power_str(self.val)} in GF({self.field.order})>"


def field_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Dispatch a single arithmetic operation on two field elements."""
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise FieldMismatch("field_arith expects FieldElement operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise DomainError(f"unknown op {op!r}")


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a field tower F_p <= F_q <= F_{q^r}."""

    p: int
    s: int = 1
    modulus: Optional[tuple[int, ...]] = None
    r: int = 1
    modulus2: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise UnsupportedParameters(f"characteristic {self.p} is not prime")
        if self.s < 1 or self.r < 1:
            raise DomainError("extension degrees must be >= 1")

    def base_field(self) -> Field:
        """The F_q level of the tower."""
        fp = prime_field(self.p)
        if self.s == 1:
            return fp
        return extension_field(fp, degree=self.s, modulus=self.modulus)

    def splitting_field(self) -> Field:
        fq = self.base_field()
        if self.r == 1:
            return fq
        return extension_field(fq, degree=self.r, modulus=self.modulus2)

    @property
    def q(self) -> int:
        return self.p ** self.s

    def to_dict(self) -> dict:
        fq = self.base_field()
        d = {"p": self.p, "s": self.s,
             "modulus": list(fq.modulus) if fq.base is not None else None,
             "r": self.r}
        if self.r > 1:
            d["modulus2"] = list(self.splitting_field().modulus)
        else:
            d["modulus2"] = None
        return d

    @staticmethod
    def from_dict(d: dict) -> "FieldSpec":
        return FieldSpec(
            p=int(d["p"]), s=int(d.get("s", 1)),
            modulus=tuple(d["modulus"]) if d.get("modulus") else None,
            r=int(d.get("r", 1)),
            modulus2=tuple(d["modulus2"]) if d.get("modulus2") else None)


@dataclass(frozen=True)
class SplittingData:
    """Splitting field of X^m - lambda over F_q, with fixed roots."""

    r: int
    field: Field            # F_{q^r}
    base: Field             # F_q
    m: int
    lam: int                # encoding of lambda in F_q
    alpha: int              # a fixed m-th root of lambda (encoding in field)
    xi: int                 # a primitive m-th root of unity (encoding in field)

    @property
    def alpha_elt(self) -> FieldElement:
        return FieldElement(self.field, self.alpha)

    @property
    def xi_elt(self) -> FieldElement:
        return FieldElement(self.field, self.xi)

    def root(self, i: int) -> int:
        """Encoding of alpha * xi^i."""
        f = self.field
        return f.mul(self.alpha, f.pow(self.xi, i % self.m))


def multiplicative_order(field: Field, x: int) -> int:
    return field.element_order(x)


def splitting_degree(q_field: Field, m: int, lam: int) -> int:
    """The degree r of the splitting field of X^m - lambda over F_q, computed
    without constructing the extension."""
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    if math.gcd(m, q_field.p) != 1:
        raise UnsupportedParameters(f"gcd(m, p) must be 1; got m={m}, p={q_field.p}")
    ord_lam = q_field.element_order(lam) if lam != 1 else 1
    mod = m * ord_lam
    q = q_field.order
    r, acc = 1, q % mod
    while acc != 1:
        acc = (acc * q) % mod
        r += 1
        if r > 64:
            raise UnsupportedParameters("splitting degree exceeds desk scale")
    return r


def find_splitting_data(q_field: Field, m: int, lam: int,
                        modulus2: Optional[Sequence[int]] = None) -> SplittingData:
    """Minimal r with F_{q^r} containing all roots of X^m - lambda, plus a
    fixed m-th root alpha of lambda and a primitive m-th root of unity xi.

    alpha is the root with the smallest power index with respect to the
    extension's designated generator.
    """
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    if m < 1:
        raise DomainError("m must be positive")
    r = splitting_degree(q_field, m, lam)
    if r == 1:
        big = q_field
    else:
        big = extension_field(q_field, degree=r, modulus=modulus2)
    n1 = big.order - 1
    xi = big.g_pow(n1 // m)
    lam_log = big.log(lam)  # subfield embeds as identity on encodings
    step = n1 // m
    # m | lam_log is guaranteed by the choice of r (lambda is an m-th power)
    assert lam_log % m == 0
    alpha_log = (lam_log // m) % step
    alpha = big.g_pow(alpha_log)
    # sanity: alpha^m = lambda exactly, xi has order exactly m
    assert big.pow(alpha, m) == lam
    assert big.element_order(xi) == m
    return SplittingData(r=r, field=big, base=q_field, m=m, lam=lam,
                         alpha=alpha, xi=xi)
