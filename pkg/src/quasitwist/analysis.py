"""Analytical security calculators: information-set-decoding work factors
(exact rational arithmetic) and the quantum-Fourier-sampling parameter
predicate (exact integer comparison)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError


def _log2_int(n: int) -> float:
    bl = n.bit_length()
    if bl <= 53:
        return math.log2(n)
    shift = bl - 53
    return shift + math.log2(n >> shift)


def _log2_fraction(x: Fraction) -> float:
    if x <= 0:
        raise DomainError("log2 of a non-positive value")
    return _log2_int(x.numerator) - _log2_int(x.denominator)


@dataclass(frozen=True)
class IsdReport:
    """Work-factor report; every binomial is exact, logs are for display."""

    m: int
    ell: int
    eps: int
    value: Fraction
    log2: float
    q_probs: Optional[tuple[Fraction, ...]] = None
    n2: Optional[int] = None
    t2: Optional[Fraction] = None
    classical_variant: bool = False


def work_factor(m: int, ell: int, eps: int,
                alpha: Union[int, Fraction] = 1) -> IsdReport:
    """One-iteration ISD work factor W = alpha m^3 C(m ell, m) / C(m ell - eps, m)."""
    n = m * ell
    if eps < 0 or eps > n - m:
        raise DomainError(f"eps must lie in [0, {n - m}]")
    if m < 1 or ell < 1:
        raise DomainError("m and ell must be positive")
    w = Fraction(alpha) * m ** 3 * Fraction(math.comb(n, m), math.comb(n - eps, m))
    return IsdReport(m=m, ell=ell, eps=eps, value=w, log2=_log2_fraction(w))


def min_work_factor(m: int, ell: int, eps: int,
                    alpha: Union[int, Fraction] = 1,
                    beta: Union[int, Fraction] = 1,
                    classical: bool = False) -> IsdReport:
    """Minimum work factor W_min = T2 (alpha m^3 + N2 beta m), with
    Q_i = C(eps, i) C(m ell - 2, m - i) / C(m ell, m), N2 = sum_i<=2 C(m, i),
    T2 = 1 / sum Q_i.

    With `classical=True` the success probabilities use C(m ell - eps, m - i)
    instead (the textbook Lee-Brickell form); the default follows the
    formula as printed.
    """
    n = m * ell
    if eps < 0 or eps > n - m:
        raise DomainError(f"eps must lie in [0, {n - m}]")
    denom = math.comb(n, m)
    pool = n - eps if classical else n - 2
    q_probs = tuple(Fraction(math.comb(eps, i) * math.comb(pool, m - i), denom)
                    for i in range(3))
    total = sum(q_probs)
    if total == 0:
        raise DomainError("success probability sums to zero")
    t2 = 1 / total
    n2 = sum(math.comb(m, i) for i in range(3))
    w = t2 * (Fraction(alpha) * m ** 3 + n2 * Fraction(beta) * m)
    return IsdReport(m=m, ell=ell, eps=eps, value=w, log2=_log2_fraction(w),
                     q_probs=q_probs, n2=n2, t2=t2, classical_variant=classical)


@dataclass(frozen=True)
class QfsResult:
    """Outcome of the indistinguishability parameter predicate
    m < (1/4) ell (log_q m + log_q ell), decided exactly by comparing
    q^(4m) against (m ell)^ell in integer arithmetic."""

    satisfied: bool
    lhs: int   # q^(4m)
    rhs: int   # (m*ell)^ell
    q: int
    m: int
    ell: int


def qfs_check(q: int, m: int, ell: int) -> QfsResult:
    if q < 2 or m < 1 or ell < 1:
        raise DomainError("need q >= 2, m >= 1, ell >= 1")
    lhs = q ** (4 * m)
    rhs = (m * ell) ** ell
    return QfsResult(satisfied=lhs < rhs, lhs=lhs, rhs=rhs, q=q, m=m, ell=ell)
