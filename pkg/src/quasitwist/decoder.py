"""Syndrome-based decoding of quasi-twisted codes.

Pipeline: eigenvector-weighted syndrome polynomials, joint shortest-recurrence
synthesis across the s+1 syndrome sequences (generalized Berlekamp-Massey,
realized as the fundamental iterative column elimination on the block-Hankel
syndrome system), Chien search for error row-locations, a Vandermonde solve
for the aggregated error values, and a base-field decomposition recovering
the per-component error coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from . import linalg
from .errors import (
    DomainError,
    EvaluationInconsistent,
    InadmissibleEigenvector,
    ShapeError,
)
from .galois import Field
from .polyring import Poly, QuotientPolyVector, phi, phi_inv
from .qtcode import HtBoundResult, QTCode, ht_bound


class _DecodingFailureType:
    """Singleton result value for a failed decode (not an exception)."""

    _instance: Optional["_DecodingFailureType"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DECODING_FAILURE"

    def __bool__(self):
        return False


DECODING_FAILURE = _DecodingFailureType()


class DecoderConfig:
    """Bound parameters, the chosen eigenvector, and derived decode data.

    The eigenvector's components must be linearly independent over the code's
    base field; otherwise the error-value decomposition is ill-posed and
    construction is rejected.
    """

    def __init__(self, code: QTCode, a: int, n1: int, n2: int, s: int, delta: int,
                 v: Optional[Sequence[int]] = None,
                 bound: Optional[HtBoundResult] = None):
        self.code = code
        self.a, self.n1, self.n2, self.s, self.delta = a, n1, n2, s, delta
        self.bound = bound if bound is not None else ht_bound(code, a, n1, n2, s, delta)
        self.d_star = self.bound.d_star
        self.eps = (self.d_star - 1) // 2
        big = code.splitting.field
        self.big = big
        self.indices = self.bound.indices
        if v is None:
            v = _select_eigenvector(code, self.bound)
        else:
            v = tuple(int(x) for x in v)
            if len(v) != code.ell:
                raise ShapeError(f"eigenvector must have {code.ell} components")
            for i in self.indices:
                image = linalg.mat_vec(big, code.evaluated_basis(i), list(v))
                if any(image):
                    raise DomainError(
                        f"eigenvector is not annihilated at eigenvalue index {i}")
        self.v = v
        # base-field decomposition matrix: column j holds the F_q coordinates
        # of v_j inside F_{q^r}
        r_dim = big.degree if big is not code.field else 1
        decomp = [[0] * code.ell for _ in range(r_dim)]
        for j, comp in enumerate(v):
            coords = big.coeffs(comp) if big is not code.field else (comp,)
            for kc, c in enumerate(coords):
                decomp[kc][j] = c
        if linalg.rank(code.field, decomp) != code.ell:
            raise InadmissibleEigenvector(
                "eigenvector components are F_q-linearly dependent")
        self.decomp_matrix = decomp
        # eigenvalue grid eta[k][t] = alpha * xi^(a + k n1 + t n2)
        sp = code.splitting
        self.eta = [[sp.root(a + k * n1 + t * n2) for t in range(s + 1)]
                    for k in range(delta - 1)]
        self.xi_n1 = big.pow(sp.xi, n1 % code.m)
        self.xi_n1_inv = big.inv(self.xi_n1)
        self.xi_n2 = big.pow(sp.xi, n2 % code.m)
        self.alpha_xi_a = sp.root(a)

    @property
    def field(self) -> Field:
        return self.code.field

    def coords_in_base(self, x: int) -> list[int]:
        big = self.big
        if big is self.code.field:
            return [x]
        return list(big.coeffs(x))

    def __repr__(self):
        return (f"DecoderConfig(a={self.a}, n1={self.n1}, n2={self.n2}, "
                f"s={self.s}, delta={self.delta}, eps={self.eps}, v={self.v})")


def _select_eigenvector(code: QTCode, bound: HtBoundResult,
                        search_cap: int = 1 << 16) -> tuple[int, ...]:
    """Deterministic scan of the intersection eigenspace for a vector with
    F_q-independent components, normalized to leading coefficient 1."""
    big = code.splitting.field
    basis = bound.v_basis
    dim = len(basis)
    total = (big.order ** dim) - 1
    for idx in range(1, min(total + 1, search_cap)):
        x = idx
        v = [0] * code.ell
        for row in basis:
            x, digit = divmod(x, big.order)
            if digit:
                for c in range(code.ell):
                    if row[c]:
                        v[c] = big.add(v[c], big.mul(digit, row[c]))
        if _components_independent(code.field, big, v):
            first = next(val for val in v if val)
            inv = big.inv(first)
            return tuple(big.mul(inv, val) for val in v)
    raise InadmissibleEigenvector(
        "no eigenvector with F_q-independent components in the intersection eigenspace")


def _components_independent(base: Field, big: Field, v: Sequence[int]) -> bool:
    r_dim = big.degree if big is not base else 1
    if len(v) > r_dim:
        return False
    mat = [[0] * len(v) for _ in range(r_dim)]
    for j, comp in enumerate(v):
        coords = big.coeffs(comp) if big is not base else (comp,)
        for kc, c in enumerate(coords):
            mat[kc][j] = c
    return linalg.rank(base, mat) == len(v)


@dataclass(frozen=True)
class SyndromeSet:
    """The s+1 syndrome polynomials, as coefficient rows over F_{q^r}:
    values[t][k] = sum_j r_j(alpha xi^{a + k n1 + t n2}) v_j."""

    field: Field
    delta: int
    s: int
    values: tuple[tuple[int, ...], ...]

    def poly(self, t: int) -> Poly:
        return Poly(self.field, self.values[t])

    def all_zero(self) -> bool:
        return all(all(c == 0 for c in row) for row in self.values)


@dataclass(frozen=True)
class ErrorLocator:
    """Error locator polynomial with constant term 1; its roots xi^{-i n1}
    mark the error row-locations i."""

    poly: Poly
    length: int  # shift-register length L from the joint synthesis

    @property
    def degree(self) -> int:
        d = self.poly.degree
        return int(d) if d >= 0 else 0


def compute_syndromes(r_word: QuotientPolyVector, cfg: DecoderConfig) -> SyndromeSet:
    """Evaluate the received word on the eigenvalue grid, weighted by the
    configured eigenvector."""
    code = cfg.code
    if (r_word.m, r_word.ell, r_word.lam) != (code.m, code.ell, code.lam):
        raise ShapeError("received word parameters do not match the code")
    if r_word.field is not code.field:
        raise ShapeError("received word must be over the code's base field")
    big = cfg.big
    rows = []
    for k in range(cfg.delta - 1):
        row_k = []
        for t in range(cfg.s + 1):
            eta = cfg.eta[k][t]
            acc = 0
            for j, p in enumerate(r_word.polys):
                if p.is_zero() or cfg.v[j] == 0:
                    continue
                acc = big.add(acc, big.mul(p.eval_int(big, eta), cfg.v[j]))
            row_k.append(acc)
        rows.append(row_k)
    values = tuple(tuple(rows[k][t] for k in range(cfg.delta - 1))
                   for t in range(cfg.s + 1))
    return SyndromeSet(field=big, delta=cfg.delta, s=cfg.s, values=values)


def solve_key_equations(syn: SyndromeSet, cfg: DecoderConfig) -> ErrorLocator:
    """Shortest connection polynomial valid for all s+1 syndrome sequences
    simultaneously.

    Columns of the block-Hankel syndrome system are processed left to right;
    per column, discrepancies are taken row by row (step-major, sequence-minor)
    and the running combination is updated on each nonzero discrepancy whose
    row already carries a pivot.  The first column that eliminates to zero on
    its valid rows yields the minimal-length recurrence, with the combination
    coefficients read off in reverse as the locator.
    """
    big = syn.field
    seqs = syn.values
    n_terms = cfg.delta - 1
    n_seq = cfg.s + 1

    def entry(comb: list[int], i: int, t: int) -> int:
        acc = 0
        for jj, c in enumerate(comb):
            if c:
                acc = big.add(acc, big.mul(c, seqs[t][i + jj]))
        return acc

    pivots: dict[tuple[int, int], list[int]] = {}
    for j in range(n_terms + 1):
        comb = [0] * (j + 1)
        comb[j] = 1
        independent = False
        for i in range(n_terms - j):
            for t in range(n_seq):
                d = entry(comb, i, t)
                if d == 0:
                    continue
                pivot = pivots.get((i, t))
                if pivot is None:
                    pivots[(i, t)] = comb[:]
                    independent = True
                    break
                f = big.div(d, entry(pivot, i, t))
                for jj, c in enumerate(pivot):
                    comb[jj] = big.sub(comb[jj], big.mul(f, c))
            if independent:
                break
        if not independent:
            lam_coeffs = list(reversed(comb))
            return ErrorLocator(poly=Poly(big, lam_coeffs), length=j)
    raise DomainError("unreachable: the empty-row column is always dependent")


def chien_search(loc: ErrorLocator, cfg: DecoderConfig, m: Optional[int] = None) -> tuple[int, ...]:
    """All locations i in [m] with Lambda(xi^{-i n1}) = 0, by full scan."""
    if m is None:
        m = cfg.code.m
    big = cfg.big
    out = []
    x = 1  # xi^{-i n1} for i = 0
    for i in range(m):
        if loc.poly.eval_int(big, x) == 0:
            out.append(i)
        x = big.mul(x, cfg.xi_n1_inv)
    return tuple(out)


@dataclass(frozen=True)
class ErrorEvaluation:
    """Evaluated errors: aggregated values E_i, the diagonal entries
    (alpha xi^a)^i E_i of the syndrome decomposition, and the per-location
    coordinate error vectors over F_q."""

    locations: tuple[int, ...]
    E_values: tuple[int, ...]
    Y_diag: tuple[int, ...]
    errors: dict[int, tuple[int, ...]]
    evaluator_t: int


def _evaluate_errors_full(syn: SyndromeSet, loc: ErrorLocator,
                          locations: Sequence[int], cfg: DecoderConfig) -> ErrorEvaluation:
    big = cfg.big
    locations = tuple(sorted(locations))
    eps0 = len(locations)
    if eps0 == 0:
        return ErrorEvaluation((), (), (), {}, 0)
    if eps0 != loc.degree:
        raise DomainError("number of locations must equal deg Lambda")
    x_k = [big.pow(cfg.xi_n1, i) for i in locations]
    solution = None
    used_t = 0
    for t in range(cfg.s + 1):
        if eps0 > cfg.delta - 1:
            break
        vand = [[big.pow(xk, w) for xk in x_k] for w in range(eps0)]
        rhs = [syn.values[t][w] for w in range(eps0)]
        sol = linalg.solve(big, vand, rhs)
        if sol is not None:
            solution = sol
            used_t = t
            break
    if solution is None:
        raise EvaluationInconsistent("no solvable evaluator system")
    # solution[k] = (alpha xi^a)^{i_k} E_{i_k} * (xi^{i_k n2})^t ; strip the
    # t-factor, then the location factor
    y_diag = []
    e_values = []
    for k, i_k in enumerate(locations):
        z = solution[k]
        if used_t:
            y_t = big.pow(big.pow(cfg.xi_n2, i_k), used_t)
            z = big.div(z, y_t)
        y_diag.append(z)
        e_values.append(big.div(z, big.pow(cfg.alpha_xi_a, i_k)))
    errors: dict[int, tuple[int, ...]] = {}
    for i_k, e_val in zip(locations, e_values):
        rhs = cfg.coords_in_base(e_val)
        sol = linalg.solve(cfg.code.field, cfg.decomp_matrix, rhs)
        if sol is None:
            raise EvaluationInconsistent(
                f"error value at location {i_k} has no F_q decomposition")
        errors[i_k] = tuple(sol)
    return ErrorEvaluation(locations=locations, E_values=tuple(e_values),
                           Y_diag=tuple(y_diag), errors=errors, evaluator_t=used_t)


def evaluate_errors(syn: SyndromeSet, loc: ErrorLocator,
                    locations: Sequence[int], cfg: DecoderConfig) -> dict[int, tuple[int, ...]]:
    """Per-location coordinate error vectors {i: (e_{i,0}, ..., e_{i,ell-1})}."""
    return _evaluate_errors_full(syn, loc, locations, cfg).errors


@dataclass(frozen=True)
class DecodeTrace:
    syndromes: tuple[tuple[int, ...], ...]
    syndrome_powers: tuple[tuple[str, ...], ...]
    locator_coeffs: tuple[int, ...]
    locator_powers: tuple[str, ...]
    locations: tuple[int, ...]
    E_values: tuple[int, ...]
    E_powers: tuple[str, ...]
    Y_diag: tuple[int, ...]
    Y_powers: tuple[str, ...]
    errors: dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class DecodeOutcome:
    ok: bool
    codeword: Optional[tuple[int, ...]]
    error: Optional[tuple[int, ...]]
    reason: Optional[str]
    trace: Optional[DecodeTrace]


def decode_polyvec(r_word: QuotientPolyVector, cfg: DecoderConfig,
                   want_trace: bool = False) -> DecodeOutcome:
    """Run the full pipeline on an element of R^ell."""
    big = cfg.big
    syn = compute_syndromes(r_word, cfg)
    loc = solve_key_equations(syn, cfg)
    locations = chien_search(loc, cfg)
    fail_reason = None
    evaluation = None
    if len(locations) < loc.degree:
        fail_reason = (f"Chien search found {len(locations)} roots "
                       f"for a degree-{loc.degree} locator")
    else:
        try:
            evaluation = _evaluate_errors_full(syn, loc, locations, cfg)
        except EvaluationInconsistent as exc:
            fail_reason = str(exc)
    trace = None
    if want_trace:
        ps = big.power_str
        trace = DecodeTrace(
            syndromes=syn.values,
            syndrome_powers=tuple(tuple(ps(v) for v in row) for row in syn.values),
            locator_coeffs=loc.poly.coeffs,
            locator_powers=tuple(ps(c) for c in loc.poly.coeffs),
            locations=locations,
            E_values=evaluation.E_values if evaluation else (),
            E_powers=tuple(ps(v) for v in evaluation.E_values) if evaluation else (),
            Y_diag=evaluation.Y_diag if evaluation else (),
            Y_powers=tuple(ps(v) for v in evaluation.Y_diag) if evaluation else (),
            errors=evaluation.errors if evaluation else {})
    if fail_reason is not None:
        return DecodeOutcome(ok=False, codeword=None, error=None,
                             reason=fail_reason, trace=trace)
    code = cfg.code
    f = code.field
    err_polys = []
    for j in range(code.ell):
        coeffs = [0] * code.m
        for i_k, vec in evaluation.errors.items():
            coeffs[i_k] = vec[j]
        err_polys.append(Poly(f, coeffs))
    e_vec = QuotientPolyVector(f, code.m, code.ell, code.lam, err_polys)
    c_vec = r_word - e_vec
    return DecodeOutcome(ok=True, codeword=phi_inv(c_vec), error=phi_inv(e_vec),
                         reason=None, trace=trace)


def decode(r_word: Sequence[int], code: QTCode, cfg: DecoderConfig,
           with_trace: bool = False) -> Union[tuple[int, ...], _DecodingFailureType, DecodeOutcome]:
    """Decode a flat received word of length m*ell.

    Returns the codeword, or DECODING_FAILURE when Chien search finds fewer
    roots than deg Lambda or the error evaluation is inconsistent.  With
    `with_trace=True` the full DecodeOutcome (including the trace) is returned.
    """
    if cfg.code is not code:
        raise DomainError("decoder configuration was built for a different code")
    r_vec = phi(list(r_word), code.m, code.ell, code.lam, code.field)
    outcome = decode_polyvec(r_vec, cfg, want_trace=with_trace)
    if with_trace:
        return outcome
    return outcome.codeword if outcome.ok else DECODING_FAILURE


@lru_cache(maxsize=64)
def candidate_grids(m: int, cap: int = 10) -> tuple[tuple[int, int, int, int, int, tuple[int, ...]], ...]:
    """Deterministic list of (a, n1, n2, s, delta, D) decoder-grid candidates
    with s <= delta-2 (so the syndrome system is nonempty), one per distinct
    index set D, sorted by delta+s descending."""
    seen: dict[tuple[int, ...], tuple] = {}
    for delta in range(3, min(m + 1, cap) + 1):
        for s in range(0, min(delta - 2, cap - delta) + 1):
            for n1 in range(1, m):
                if math.gcd(m, n1) != 1:
                    continue
                for n2 in range(1, m):
                    if math.gcd(m, n2) >= delta:
                        continue
                    if s == 0 and n2 > 1:
                        continue  # n2 is inert when s = 0
                    for a in range(m):
                        d_set = tuple(sorted({(a + i1 * n1 + i2 * n2) % m
                                              for i1 in range(delta - 1)
                                              for i2 in range(s + 1)}))
                        cand = (a, n1, n2, s, delta, d_set)
                        best = seen.get(d_set)
                        if best is None or delta + s > best[4] + best[3]:
                            seen[d_set] = cand
    return tuple(sorted(seen.values(),
                        key=lambda c: (-(c[4] + c[3]), c[4], c[0], c[1], c[2])))


# -- syndrome matrix machinery -------------------------------------------


def build_syndrome_matrix(syn: SyndromeSet, eps: int, cfg: DecoderConfig) -> list[list[int]]:
    """The (delta-1-eps)(s+1) x (eps+1) block-Hankel syndrome matrix."""
    rows_per_block = cfg.delta - 1 - eps
    if rows_per_block <= 0:
        raise ShapeError(f"delta-1-eps = {rows_per_block} must be positive")
    out = []
    for t in range(cfg.s + 1):
        for i in range(rows_per_block):
            out.append([syn.values[t][i + j] for j in range(eps + 1)])
    return out


def star_product(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]],
                 field: Field) -> list[list[int]]:
    """Row-interleaved elementwise product: row (i, i') of the result is
    (a[i][j] * b[i'][j])_j, with i-major ordering."""
    if a and b and len(a[0]) != len(b[0]):
        raise ShapeError("star product needs matching column counts")
    out = []
    for ra in a:
        for rb in b:
            out.append([field.mul(x, y) for x, y in zip(ra, rb)])
    return out


def decomposition_matrices(locations: Sequence[int], e_values: Sequence[int],
                           cfg: DecoderConfig, eps: int) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """The factors (X, Y, X~) of the syndrome matrix decomposition S = X Y X~
    for the given error locations and aggregated values E_i."""
    big = cfg.big
    if len(locations) != eps or len(e_values) != eps:
        raise ShapeError("need exactly eps locations and values")
    rows_per_block = cfg.delta - 1 - eps
    if rows_per_block <= 0:
        raise ShapeError(f"delta-1-eps = {rows_per_block} must be positive")
    xs = []
    for t in range(cfg.s + 1):
        for i in range(rows_per_block):
            xs.append([big.pow(big.mul(big.pow(cfg.xi_n1, i), big.pow(cfg.xi_n2, t)), i_k)
                       for i_k in locations])
    y = [[0] * eps for _ in range(eps)]
    for k, (i_k, e_val) in enumerate(zip(locations, e_values)):
        y[k][k] = big.mul(big.pow(cfg.alpha_xi_a, i_k), e_val)
    xt = [[big.pow(big.pow(cfg.xi_n1, i_k), j) for j in range(eps + 1)]
          for i_k in locations]
    return xs, y, xt
