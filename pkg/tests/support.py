"""Shared test machinery: an independent shortest-recurrence solver used to
cross-check the joint key-equation solver, Frobenius-orbit factorization of
X^m - lambda, and factories for random decodable code instances."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from quasitwist import linalg
from quasitwist.decoder import DecoderConfig, candidate_grids
from quasitwist.errors import QuasitwistError
from quasitwist.galois import (
    Field,
    SplittingData,
    extension_field,
    find_splitting_data,
    prime_field,
    splitting_degree,
)
from quasitwist.polyring import Poly, QuotientPolyVector, phi_inv
from quasitwist.qtcode import GroebnerGenMatrix, QTCode, new_qt_code


def minimal_recurrence_bruteforce(seqs: Sequence[Sequence[int]], big: Field):
    """Smallest L with a connection polynomial (constant term 1, degree <= L)
    satisfying sum_i Lambda_i S_{k-i} = 0 for all sequences and k in [L, N).
    Solved by plain linear algebra, independent of the iterative solver."""
    n_terms = len(seqs[0])
    for L in range(n_terms + 1):
        rows = []
        rhs = []
        for t in range(len(seqs)):
            for k in range(L, n_terms):
                rows.append([seqs[t][k - i] for i in range(1, L + 1)])
                rhs.append(big.neg(seqs[t][k]))
        if not rows:
            return L, Poly(big, [1])
        sol = linalg.solve(big, rows, rhs)
        if sol is not None:
            return L, Poly(big, [1] + sol)
    raise AssertionError("unreachable: L = N always solvable")


def recurrence_holds(poly: Poly, L: int, seqs: Sequence[Sequence[int]], big: Field) -> bool:
    n_terms = len(seqs[0])
    for t in range(len(seqs)):
        for k in range(L, n_terms):
            acc = 0
            for i in range(L + 1):
                c = poly[i]
                if c:
                    acc = big.add(acc, big.mul(c, seqs[t][k - i]))
            if acc != 0:
                return False
    return True


def frobenius_index_orbits(sp: SplittingData) -> list[list[int]]:
    """Partition of [m] into orbits of the index map beta_i -> beta_i^q."""
    big, q = sp.field, sp.base.order
    root_to_index = {sp.root(i): i for i in range(sp.m)}
    seen = set()
    orbits = []
    for i in range(sp.m):
        if i in seen:
            continue
        orbit = []
        j = i
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = root_to_index[big.pow(sp.root(j), q)]
        orbits.append(orbit)
    return orbits


def orbit_factor(sp: SplittingData, orbit: Sequence[int]) -> Poly:
    """prod_{i in orbit} (X - beta_i), an irreducible factor of X^m - lambda
    over F_q (coefficients descend to the subfield)."""
    big = sp.field
    poly = Poly(big, [1])
    for i in orbit:
        poly = poly * Poly(big, [big.neg(sp.root(i)), 1])
    assert all(c < sp.base.order for c in poly.coeffs), "orbit product must be rational"
    return Poly(sp.base, list(poly.coeffs))


def diagonal_instance(q_field: Field, m: int, lam: int, ell: int,
                      orbits_to_use: Sequence[Sequence[int]],
                      sp: Optional[SplittingData] = None,
                      grid: Optional[tuple] = None):
    """Code with basis diag(f, ..., f) where f is the product of the chosen
    orbit factors; every root of f has the full space as eigenspace, so the
    eigenvector (1, g, g^2, ...) is admissible whenever ell <= r."""
    sp = sp or find_splitting_data(q_field, m, lam)
    big = sp.field
    f = Poly(q_field, [1])
    root_set: set[int] = set()
    for orbit in orbits_to_use:
        f = f * orbit_factor(sp, orbit)
        root_set.update(orbit)
    zero = Poly.zero(q_field)
    rows = [[f if i == j else zero for j in range(ell)] for i in range(ell)]
    code = new_qt_code(GroebnerGenMatrix(q_field, m, ell, lam, rows))
    if grid is None:
        grid = next((g for g in candidate_grids(m) if set(g[5]) <= root_set), None)
        if grid is None:
            return None
    a, n1, n2, s, delta, _ = grid
    v = tuple(big.g_pow(j) if j else 1 for j in range(ell))
    cfg = DecoderConfig(code, a, n1, n2, s, delta, v=v)
    return code, cfg


def interpolated_pair_code(q_field: Field, m: int, lam: int,
                           grid: tuple, c_val: int,
                           sp: Optional[SplittingData] = None):
    """ell = 2 code with basis [[1, g01], [0, X^m - lam]] where g01 is
    interpolated so that g01(beta_i) = c_val on the grid's index set; the
    eigenvector is then (1, -1/c_val).  Returns None when the interpolation
    is infeasible or the eigenvector is inadmissible."""
    sp = sp or find_splitting_data(q_field, m, lam)
    big = sp.field
    a, n1, n2, s, delta, d_set = grid
    if c_val == 0:
        return None
    r_dim = big.degree if big is not q_field else 1

    def coords(x):
        return list(big.coeffs(x)) if big is not q_field else [x]

    rows, rhs = [], []
    for i in d_set:
        beta = sp.root(i)
        powers = [coords(big.pow(beta, d)) for d in range(m)]
        for kc in range(r_dim):
            rows.append([powers[d][kc] for d in range(m)])
            rhs.append(coords(c_val)[kc])
    sol = linalg.solve(q_field, rows, rhs)
    if sol is None:
        return None
    g01 = Poly(q_field, sol)
    v1 = big.neg(big.inv(c_val))
    if v1 < q_field.order:
        return None  # v = (1, v1) would be F_q-dependent
    zero = Poly.zero(q_field)
    basis = GroebnerGenMatrix(q_field, m, 2, lam, [
        [Poly.one(q_field), g01],
        [zero, Poly.x_pow_m_minus(q_field, m, lam)],
    ])
    code = new_qt_code(basis)
    try:
        cfg = DecoderConfig(code, a, n1, n2, s, delta, v=(1, v1))
    except QuasitwistError:
        return None
    return code, cfg


_DIAG_POOL = [
    # (p, s, m, lam) combinations with gcd(m, p) = 1 and a small splitting field
    (3, 1, 7, 1), (3, 1, 7, 2), (3, 1, 11, 1), (3, 1, 13, 1), (3, 1, 13, 2),
    (3, 1, 8, 1), (3, 1, 8, 2), (3, 1, 5, 2), (2, 1, 7, 1), (2, 1, 9, 1),
    (2, 1, 15, 1), (2, 2, 5, 2), (2, 2, 7, 1),
]

_SPLIT_ORDER_CAP = 1 << 13


def _q_field(p: int, s: int) -> Field:
    base = prime_field(p)
    return base if s == 1 else extension_field(base, degree=s)


def random_decodable_instance(rng: random.Random, max_codebook: int = 1 << 19,
                              need_eps: int = 1):
    """A randomized (code, cfg) pair with eps >= need_eps and a codebook small
    enough for oracle enumeration, drawn from the diagonal and interpolated
    families."""
    for _ in range(200):
        family = rng.random()
        p, s, m, lam = _DIAG_POOL[rng.randrange(len(_DIAG_POOL))]
        q_field = _q_field(p, s)
        try:
            if q_field.order ** splitting_degree(q_field, m, lam) > _SPLIT_ORDER_CAP:
                continue
            sp = find_splitting_data(q_field, m, lam)
        except QuasitwistError:
            continue
        if family < 0.5:
            # diagonal family
            if sp.r < 2:
                continue
            ell = rng.choice([e for e in (2, 3) if e <= sp.r])
            orbits = frobenius_index_orbits(sp)
            rng.shuffle(orbits)
            chosen, covered = [], set()
            for orb in orbits:
                chosen.append(orb)
                covered.update(orb)
                if len(covered) >= m // 2 + 1:
                    break
            deg_f = len(covered)
            if deg_f >= m:
                continue
            k = ell * (m - deg_f)
            if q_field.order ** k > max_codebook:
                continue
            grid = next((g for g in candidate_grids(m) if set(g[5]) <= covered), None)
            if grid is None:
                continue
            inst = diagonal_instance(q_field, m, lam, ell, chosen, sp=sp, grid=grid)
        else:
            # interpolated ell=2 family
            if sp.r < 2 or q_field.order ** m > max_codebook:
                continue
            grids = [g for g in candidate_grids(m) if g[4] + g[3] >= 3]
            if not grids:
                continue
            grid = grids[rng.randrange(min(8, len(grids)))]
            c_val = rng.randrange(q_field.order, sp.field.order)
            inst = interpolated_pair_code(q_field, m, lam, grid, c_val, sp=sp)
        if inst is None:
            continue
        code, cfg = inst
        if cfg.eps >= need_eps:
            return code, cfg
    raise AssertionError("could not build a decodable instance")


def plant_error(rng: random.Random, code: QTCode, cfg: DecoderConfig,
                n_locations: int, per_location_max: Optional[int] = None):
    """A random error word with exactly n_locations distinct row-locations
    and total Hamming weight >= n_locations."""
    f = code.field
    locations = rng.sample(range(code.m), n_locations)
    coeffs = [[0] * code.m for _ in range(code.ell)]
    total = 0
    for i in locations:
        k_here = 1 if per_location_max is None else rng.randrange(1, per_location_max + 1)
        cols = rng.sample(range(code.ell), min(k_here, code.ell))
        for j in cols:
            coeffs[j][i] = rng.randrange(1, f.order)
            total += 1
    polys = [Poly(f, c) for c in coeffs]
    e_vec = QuotientPolyVector(f, code.m, code.ell, code.lam, polys)
    return phi_inv(e_vec), sorted(locations)


_GROEBNER_POOL = [
    (2, 1, 3, 1), (2, 1, 5, 1), (2, 1, 7, 1), (2, 1, 9, 1), (2, 1, 15, 1),
    (3, 1, 4, 1), (3, 1, 4, 2), (3, 1, 5, 1), (3, 1, 5, 2), (3, 1, 7, 2),
    (3, 1, 8, 1), (3, 1, 8, 2), (3, 1, 10, 2), (3, 1, 11, 1), (3, 1, 13, 1),
    (3, 1, 14, 2), (2, 2, 3, 2), (2, 2, 5, 1), (2, 2, 5, 3), (2, 2, 15, 2),
]


def random_groebner_code(rng: random.Random, max_codebook: int = 1 << 16):
    """A random valid reduced-basis QT code over q in {2, 3, 4}, m <= 15,
    ell <= 3, with a codebook small enough for oracle enumeration."""
    for _ in range(200):
        p, s, m, lam = _GROEBNER_POOL[rng.randrange(len(_GROEBNER_POOL))]
        q_field = _q_field(p, s)
        if lam >= q_field.order:
            continue
        try:
            if q_field.order ** splitting_degree(q_field, m, lam) > _SPLIT_ORDER_CAP:
                continue
            sp = find_splitting_data(q_field, m, lam)
        except QuasitwistError:
            continue
        ell = rng.choice([2, 3])
        orbits = frobenius_index_orbits(sp)
        factors = [orbit_factor(sp, o) for o in orbits]
        mod = Poly.x_pow_m_minus(q_field, m, lam)
        diag = []
        for _j in range(ell):
            f = Poly.one(q_field)
            for fac in factors:
                if rng.random() < 0.45:
                    f = f * fac
            diag.append(f)
        k = m * ell - sum(int(f.degree) for f in diag)
        if k == 0 or q_field.order ** k > max_codebook:
            continue
        zero = Poly.zero(q_field)
        rows = [[zero] * ell for _ in range(ell)]
        for j in range(ell):
            rows[j][j] = diag[j]
        for i in range(ell):
            if diag[i] == mod:
                continue  # the full-modulus row must stay zero off-diagonal
            for j in range(i + 1, ell):
                dj = diag[j].degree
                if dj <= 0:
                    continue
                rows[i][j] = Poly(q_field,
                                  [rng.randrange(q_field.order) for _ in range(int(dj))])
        try:
            return new_qt_code(GroebnerGenMatrix(q_field, m, ell, lam, rows))
        except QuasitwistError:
            continue
    raise AssertionError("could not build a random code")


def cross_orbit_pair_grid(sp: SplittingData):
    """A (delta=3, s=0) grid whose two indices sit in different Frobenius
    orbits (so an interpolated common value is unconstrained), with the
    index difference coprime to m."""
    import math

    orbits = frobenius_index_orbits(sp)
    for a_idx, orb_a in enumerate(orbits):
        for orb_b in orbits[a_idx + 1:]:
            for i in orb_a:
                for j in orb_b:
                    n1 = (j - i) % sp.m
                    if math.gcd(sp.m, n1) == 1:
                        return (i, n1, 1, 0, 3, tuple(sorted((i, j))))
    return None


def random_codeword(rng: random.Random, code: QTCode) -> tuple[int, ...]:
    from quasitwist.qtcode import encode

    msg = [rng.randrange(code.field.order) for _ in range(code.k)]
    return encode(code, msg)


def add_words(field: Field, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(field.add(x, y) for x, y in zip(a, b))
