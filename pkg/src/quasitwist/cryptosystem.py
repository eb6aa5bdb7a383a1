"""Niederreiter-style public-key scheme on quasi-twisted codes.

The private side holds a parity-check matrix H = [I | G_1* | ... ] built
from twistulant blocks, an invertible scrambler S, a coordinate permutation
P, and a decoder configuration for the underlying code; the public side is
H' = S H P together with the weight capacity t.

Coordinate conventions: H and all key material use contiguous m-blocks
(the matrix form); the decoder works on the polynomial module, where the
identity block's component is rotated to the last position so the
generator basis is upper triangular.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .decoder import DecoderConfig, candidate_grids, decode_polyvec
from .errors import (
    DecryptionFailure,
    DomainError,
    InadmissibleEigenvector,
    KeygenRetryExhausted,
    ShapeError,
    UnsupportedParameters,
    WeightTooLarge,
)
from .galois import Field, FieldSpec, find_splitting_data, prime_factors
from .polyring import Poly, QuotientPolyVector, ring_inv, ring_mul
from .qtcode import GroebnerGenMatrix, QTCode, new_qt_code
from .twistulant import ParityCheckMatrix, TwistulantMatrix, validate_h_conditions


@dataclass(frozen=True)
class CryptoParams:
    qspec: FieldSpec
    m: int
    ell: int
    lam: int

    def validate(self) -> None:
        p = self.qspec.p
        facs = prime_factors(self.m)
        if len(facs) != 1:
            raise UnsupportedParameters(f"m = {self.m} is not a prime power")
        if facs[0] == p:
            raise UnsupportedParameters(
                f"m = {self.m} is a power of the field characteristic {p}")
        if self.ell < 2:
            raise UnsupportedParameters("ell must be >= 2")
        if not 0 < self.lam < self.qspec.q:
            raise UnsupportedParameters("lambda must be a nonzero element of F_q")

    def to_dict(self) -> dict:
        d = self.qspec.to_dict()
        d.update({"m": self.m, "ell": self.ell, "lam": self.lam})
        return d

    @staticmethod
    def from_dict(d: dict) -> "CryptoParams":
        return CryptoParams(qspec=FieldSpec.from_dict(d), m=int(d["m"]),
                            ell=int(d["ell"]), lam=int(d["lam"]))


@dataclass(frozen=True)
class PublicKey:
    params: CryptoParams
    h_pub: tuple[tuple[int, ...], ...]   # dense m x m*ell over F_q
    t: int

    def to_dict(self) -> dict:
        return {"params": self.params.to_dict(),
                "h_pub": [list(r) for r in self.h_pub], "t": self.t}

    @staticmethod
    def from_dict(d: dict) -> "PublicKey":
        return PublicKey(params=CryptoParams.from_dict(d["params"]),
                         h_pub=tuple(tuple(r) for r in d["h_pub"]), t=int(d["t"]))

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class KeyPair:
    """Private (S, H, P, decoder config) and public (H' = SHP, t) halves."""

    params: CryptoParams
    seed: int
    s_matrix: tuple[tuple[int, ...], ...]
    perm: tuple[int, ...]                 # P[i][j] = 1 iff perm[i] == j
    h_blocks: tuple[tuple[int, ...], ...]  # defining rows of G_1*, ...
    cfg_params: tuple[int, int, int, int, int]   # (a, n1, n2, s, delta)
    v: tuple[int, ...]
    public: PublicKey

    _rt: Optional[dict] = None  # lazily rebuilt runtime objects

    def _runtime(self) -> dict:
        if self._rt is None:
            params = self.params
            fq = params.qspec.base_field()
            mu = fq.inv(params.lam)
            blocks = tuple(TwistulantMatrix(fq, params.m, mu, row)
                           for row in self.h_blocks)
            h = ParityCheckMatrix(field=fq, m=params.m, twist=mu, blocks=blocks)
            code = _code_from_parity(h, params)
            a, n1, n2, s, delta = self.cfg_params
            cfg = DecoderConfig(code, a, n1, n2, s, delta, v=self.v)
            s_inv = linalg.inverse(fq, [list(r) for r in self.s_matrix])
            perm_inv = [0] * len(self.perm)
            for i, pi in enumerate(self.perm):
                perm_inv[pi] = i
            self._rt = {"fq": fq, "h": h, "code": code, "cfg": cfg,
                        "s_inv": s_inv, "perm_inv": perm_inv}
        return self._rt

    @property
    def code(self) -> QTCode:
        return self._runtime()["code"]

    @property
    def cfg(self) -> DecoderConfig:
        return self._runtime()["cfg"]

    @property
    def parity(self) -> ParityCheckMatrix:
        return self._runtime()["h"]

    def private_to_dict(self) -> dict:
        return {"params": self.params.to_dict(), "seed": self.seed,
                "s_matrix": [list(r) for r in self.s_matrix],
                "perm": list(self.perm),
                "h_blocks": [list(r) for r in self.h_blocks],
                "cfg": {"a": self.cfg_params[0], "n1": self.cfg_params[1],
                        "n2": self.cfg_params[2], "s": self.cfg_params[3],
                        "delta": self.cfg_params[4], "v": list(self.v)},
                "t": self.public.t}

    @staticmethod
    def from_private_dict(d: dict) -> "KeyPair":
        params = CryptoParams.from_dict(d["params"])
        kp = KeyPair(
            params=params, seed=int(d["seed"]),
            s_matrix=tuple(tuple(r) for r in d["s_matrix"]),
            perm=tuple(d["perm"]),
            h_blocks=tuple(tuple(r) for r in d["h_blocks"]),
            cfg_params=(d["cfg"]["a"], d["cfg"]["n1"], d["cfg"]["n2"],
                        d["cfg"]["s"], d["cfg"]["delta"]),
            v=tuple(d["cfg"]["v"]),
            public=_public_from_private(params, d))
        return kp

    def canonical_json(self) -> str:
        return json.dumps(self.private_to_dict(), sort_keys=True, separators=(",", ":"))


def _public_from_private(params: CryptoParams, d: dict) -> PublicKey:
    fq = params.qspec.base_field()
    mu = fq.inv(params.lam)
    blocks = tuple(TwistulantMatrix(fq, params.m, mu, tuple(row))
                   for row in d["h_blocks"])
    h = ParityCheckMatrix(field=fq, m=params.m, twist=mu, blocks=blocks)
    h_pub = _scramble(fq, [list(r) for r in d["s_matrix"]], h.dense(), list(d["perm"]))
    return PublicKey(params=params, h_pub=h_pub, t=int(d["t"]))


def _scramble(fq: Field, s_mat: list[list[int]], h_dense: list[list[int]],
              perm: list[int]) -> tuple[tuple[int, ...], ...]:
    sh = linalg.matmul(fq, s_mat, h_dense)
    n = len(sh[0])
    out = [[0] * n for _ in range(len(sh))]
    for i in range(n):
        for r in range(len(sh)):
            out[r][perm[i]] = sh[r][i]
    return tuple(tuple(r) for r in out)


def _dual_transpose_poly(fq: Field, row: Sequence[int], mu: int) -> Poly:
    """Defining polynomial of the transpose of a mu-twistulant block:
    b'(X) = b_0 + mu * sum_{d>=1} b_{m-d} X^d."""
    m = len(row)
    coeffs = [row[0]] + [fq.mul(mu, row[m - d]) for d in range(1, m)]
    return Poly(fq, coeffs)


def _code_from_parity(h: ParityCheckMatrix, params: CryptoParams) -> QTCode:
    """The (lam, ell)-QT code checked by H, with the identity block's
    component rotated to the last position so the basis is upper triangular:
    row j = e_j - b'_{j+1} e_{ell-1}, last row X^m - lam."""
    fq = h.field
    m, ell, lam = params.m, params.ell, params.lam
    mu = h.twist
    rows = []
    for j in range(ell - 1):
        row = [Poly.zero(fq) for _ in range(ell)]
        row[j] = Poly.one(fq)
        row[ell - 1] = -_dual_transpose_poly(fq, h.blocks[j].row, mu)
        rows.append(row)
    last = [Poly.zero(fq) for _ in range(ell)]
    last[ell - 1] = Poly.x_pow_m_minus(fq, m, lam)
    rows.append(last)
    basis = GroebnerGenMatrix(fq, m, ell, lam, rows)
    return new_qt_code(basis, qspec=params.qspec)


def _frobenius_index_map(sp) -> list[int]:
    """Index permutation i -> i' with beta_{i'} = beta_i^q."""
    root_to_index = {sp.root(i): i for i in range(sp.m)}
    q = sp.base.order
    return [root_to_index[sp.field.pow(sp.root(i), q)] for i in range(sp.m)]


def _grid_value_subfield_dim(d_set: Sequence[int], frob: Sequence[int], r: int) -> int:
    """Largest e such that a polynomial over F_q CAN take a common value in
    F_{q^e} on all of the grid's roots: the gcd of r, the Frobenius orbit
    sizes of the indices, and the in-orbit distances between grid members."""
    g = r
    d = set(d_set)
    for i in d_set:
        j = frob[i]
        k = 1
        while j != i:
            if j in d:
                g = math.gcd(g, k)
            j = frob[j]
            k += 1
        g = math.gcd(g, k)  # orbit size bounds the value's field
    return g


def keygen(params: CryptoParams, seed: int, max_samples: int = 100_000) -> KeyPair:
    """Sample twistulant blocks until the standard form exists and passes the
    block conditions and a decoder configuration with eps >= 1 is found; then
    draw the scrambler and permutation.  Deterministic for a fixed seed.

    Grids whose Frobenius structure forces the common eigenvector into a
    subfield too small for ell independent components can never succeed, so
    they are pruned before sampling; when no grid survives the pruning the
    search is provably hopeless and fails immediately.
    """
    params.validate()
    fq = params.qspec.base_field()
    m, ell, lam = params.m, params.ell, params.lam
    if math.gcd(m, fq.p) != 1:
        raise UnsupportedParameters("gcd(m, p) must be 1")
    mu = fq.inv(lam)
    sp = find_splitting_data(fq, m, lam, modulus2=params.qspec.modulus2)
    big = sp.field
    frob = _frobenius_index_map(sp)
    grids = [g for g in candidate_grids(m)
             if _grid_value_subfield_dim(g[5], frob, sp.r) >= ell]
    rng = random.Random(seed)
    q = fq.order
    mod_mu = Poly.x_pow_m_minus(fq, m, mu)
    if not grids:
        raise KeygenRetryExhausted(
            f"no admissible decoder grid exists at (q={q}, m={m}, ell={ell}, "
            f"lam={lam}): every grid forces the eigenvector into a subfield "
            f"of dimension < ell")
    # only the indices that feasible grids touch need eigenvector values;
    # at a root x of X^m - mu the standard-form block values are quotients
    # b_j(x) = g_j(x) / g_0(x), so the expensive ring inversion can wait
    # until a candidate matches
    needed = sorted({i for g in grids for i in g[5]})
    inv_roots = [big.inv(sp.root(i)) for i in needed]
    big_add, big_mul, big_div = big.add, big.mul, big.div

    def eval_at(coeffs: list[int], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = big_add(big_mul(acc, x), c)
        return acc

    found = None
    for _ in range(max_samples):
        rows = [[rng.randrange(q) for _ in range(m)] for _ in range(ell)]
        g0_vals = [eval_at(rows[0], x) for x in inv_roots]
        if any(v == 0 for v in g0_vals):
            continue  # g_0 is certainly singular
        w = {}
        for pos, i in enumerate(needed):
            x = inv_roots[pos]
            w[i] = tuple(big_div(eval_at(rows[j], x), g0_vals[pos])
                         for j in range(1, ell))
        cfg_choice = None
        for a, n1, n2, s, delta, d_set in grids:
            base = d_set[0]
            if any(w[i] != w[base] for i in d_set[1:]):
                continue
            v = w[base] + (1,)
            if not _independent_over_base(fq, big, v):
                continue
            cfg_choice = (a, n1, n2, s, delta, v)
            break
        if cfg_choice is None:
            continue
        # full invertibility and block-condition checks, once per candidate
        g0 = Poly(fq, rows[0])
        if g0.gcd(mod_mu).degree != 0:
            continue
        g0_inv = ring_inv(g0, m, mu)
        b_rows = []
        for r_row in rows[1:]:
            prod = ring_mul(g0_inv, Poly(fq, r_row), m, mu)
            b_rows.append(tuple(prod.coeffs) + (0,) * (m - len(prod.coeffs)))
        blocks = tuple(TwistulantMatrix(fq, m, mu, row) for row in b_rows)
        h = ParityCheckMatrix(field=fq, m=m, twist=mu, blocks=blocks)
        ok, _diag = validate_h_conditions(h)
        if not ok:
            continue
        found = (h, cfg_choice)
        break
    if found is None:
        raise KeygenRetryExhausted(
            f"no decoder configuration with eps >= 1 within {max_samples} samples")

    h, (a, n1, n2, s, delta, v) = found
    code = _code_from_parity(h, params)
    try:
        cfg = DecoderConfig(code, a, n1, n2, s, delta, v=v)
    except (DomainError, InadmissibleEigenvector) as exc:  # pragma: no cover
        raise KeygenRetryExhausted(f"configuration rejected: {exc}") from exc
    if cfg.eps < 1:  # pragma: no cover
        raise KeygenRetryExhausted("best configuration has eps = 0")

    n = m * ell
    while True:
        s_mat = [[rng.randrange(q) for _ in range(m)] for _ in range(m)]
        if linalg.is_invertible(fq, s_mat):
            break
    perm = list(range(n))
    rng.shuffle(perm)

    h_pub = _scramble(fq, s_mat, h.dense(), perm)
    public = PublicKey(params=params, h_pub=h_pub, t=cfg.eps)
    return KeyPair(params=params, seed=seed,
                   s_matrix=tuple(tuple(r) for r in s_mat), perm=tuple(perm),
                   h_blocks=tuple(blk.row for blk in h.blocks),
                   cfg_params=(a, n1, n2, s, delta), v=v, public=public)


def _has_distinct_tail_coeff(row: Sequence[int]) -> bool:
    tail = row[1:]
    return any(all(tail[i] != tail[j] for j in range(len(tail)) if j != i)
               for i in range(len(tail)))


def _independent_over_base(base: Field, big: Field, v: Sequence[int]) -> bool:
    r_dim = big.degree if big is not base else 1
    if len(v) > r_dim:
        return False
    mat = [[0] * len(v) for _ in range(r_dim)]
    for j, comp in enumerate(v):
        coords = big.coeffs(comp) if big is not base else (comp,)
        for kc, c in enumerate(coords):
            mat[kc][j] = c
    return linalg.rank(base, mat) == len(v)


def encrypt(pub: PublicKey, message: Sequence[int]) -> tuple[int, ...]:
    """Ciphertext c = H' m^T for a message of weight <= t."""
    params = pub.params
    fq = params.qspec.base_field()
    n = params.m * params.ell
    if len(message) != n:
        raise ShapeError(f"expected a message of length {n}")
    wt = sum(1 for x in message if x)
    if wt > pub.t:
        raise WeightTooLarge(f"message weight {wt} exceeds t = {pub.t}")
    return tuple(linalg.mat_vec(fq, [list(r) for r in pub.h_pub], list(message)))


def decrypt(kp: KeyPair, ciphertext: Sequence[int]) -> tuple[int, ...]:
    """Recover the message: unscramble the syndrome, lift it to a received
    word through the identity block, decode, and unpermute the error."""
    params = kp.params
    rt = kp._runtime()
    fq: Field = rt["fq"]
    m, ell = params.m, params.ell
    if len(ciphertext) != m:
        raise ShapeError(f"expected a ciphertext of length {m}")
    s_prime = linalg.mat_vec(fq, rt["s_inv"], list(ciphertext))
    # lift: contiguous word (s', 0, ..., 0) satisfies H r^T = s'; in the
    # decoder's rotated component order the lift sits in the last component
    comps = [Poly.zero(fq) for _ in range(ell)]
    comps[ell - 1] = Poly(fq, s_prime)
    r_vec = QuotientPolyVector(fq, m, ell, params.lam, comps)
    outcome = decode_polyvec(r_vec, rt["cfg"])
    if not outcome.ok:
        raise DecryptionFailure(f"decoder failed: {outcome.reason}")
    # error in rotated components -> contiguous blocks (old block 0 is the
    # rotated last component)
    err = outcome.error  # interleaved flat word of the rotated code
    e_blocks = [[0] * m for _ in range(ell)]
    for idx, val in enumerate(err):
        row, comp = divmod(idx, ell)
        old_block = 0 if comp == ell - 1 else comp + 1
        e_blocks[old_block][row] = val
    e_word = [c for blk in e_blocks for c in blk]
    if sum(1 for x in e_word if x) > kp.public.t:
        raise DecryptionFailure("recovered error weight exceeds t")
    if rt["h"].syndrome(e_word) != s_prime:
        raise DecryptionFailure("recovered error does not match the syndrome")
    perm_inv = rt["perm_inv"]
    return tuple(e_word[perm_inv[j]] for j in range(len(e_word)))
