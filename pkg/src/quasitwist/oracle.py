"""Independent brute-force references used to validate the other modules
at desk scale.  These stay deliberately unsophisticated: full enumeration
of the codebook (vectorized with numpy lookup tables), with an explicit
budget that aborts rather than silently truncating."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import BudgetExceeded, DomainError, ShapeError
from .galois import Field
from .qtcode import INFINITE, QTCode

_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleBudget:
    max_codewords: int = 1 << 22
    max_word_length: int = 4096


def _enumerate_codewords(code: QTCode, budget: OracleBudget):
    """Yield (message_block, codeword_block) numpy int64 arrays in chunks,
    covering all q^k messages in ascending integer order."""
    q = code.field.order
    k = code.k
    total = q ** k
    if total > budget.max_codewords:
        raise BudgetExceeded(
            f"codebook of size {q}^{k} = {total} exceeds the budget "
            f"{budget.max_codewords}")
    if code.n > budget.max_word_length:
        raise BudgetExceeded("word length exceeds the budget")
    gen = np.array(code.generator_matrix(), dtype=np.int64)
    add_t, mul_t = code.field.pair_tables()
    powers = q ** np.arange(k, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        msgs = (idx[:, None] // powers[None, :]) % q
        cws = np.zeros((stop - start, code.n), dtype=np.int64)
        for col in range(k):
            contrib = mul_t[msgs[:, col][:, None], gen[col][None, :]]
            cws = add_t[cws, contrib]
        yield msgs, cws


def min_distance_bruteforce(code: QTCode, budget: Optional[OracleBudget] = None) -> int:
    """Exact minimum distance by enumerating every nonzero codeword."""
    budget = budget or OracleBudget()
    if code.k == 0:
        raise DomainError("the zero code has no nonzero codewords")
    best = None
    for msgs, cws in _enumerate_codewords(code, budget):
        weights = np.count_nonzero(cws, axis=1)
        nonzero_msgs = np.any(msgs != 0, axis=1)
        if nonzero_msgs.any():
            w = int(weights[nonzero_msgs].min())
            best = w if best is None else min(best, w)
    return best


def nearest_codeword(code: QTCode, word: Sequence[int],
                     budget: Optional[OracleBudget] = None) -> tuple[tuple[int, ...], int]:
    """Exhaustive nearest codeword; ties break to the lexicographically
    smallest codeword."""
    budget = budget or OracleBudget()
    if len(word) != code.n:
        raise ShapeError(f"expected a word of length {code.n}")
    target = np.array(list(word), dtype=np.int64)
    best_dist = None
    best_cw = None
    for _msgs, cws in _enumerate_codewords(code, budget):
        dists = np.count_nonzero(cws != target[None, :], axis=1)
        dmin = int(dists.min())
        if best_dist is not None and dmin > best_dist:
            continue
        cands = cws[dists == dmin]
        cand = min(tuple(int(x) for x in row) for row in cands)
        if best_dist is None or dmin < best_dist or (dmin == best_dist and cand < best_cw):
            best_dist, best_cw = dmin, cand
    return best_cw, best_dist


def eigencode_distance_bruteforce(v_basis: Sequence[Sequence[int]], big: Field,
                                  q_field: Field, ell: int,
                                  budget: Optional[OracleBudget] = None) -> Union[int, float]:
    """Enumerate F_q^ell, keep vectors orthogonal to every basis vector of
    the eigenspace (inner products computed in the splitting field), and
    return the minimum nonzero weight, or INFINITE when only 0 survives."""
    budget = budget or OracleBudget()
    q = q_field.order
    total = q ** ell
    if total > budget.max_codewords:
        raise BudgetExceeded(f"{q}^{ell} vectors exceed the budget")
    best = None
    for idx in range(1, total):
        x = idx
        vec = []
        for _ in range(ell):
            x, digit = divmod(x, q)
            vec.append(digit)
        ok = True
        for v in v_basis:
            acc = 0
            for vi, ci in zip(v, vec):
                if vi and ci:
                    acc = big.add(acc, big.mul(vi, ci))
            if acc != 0:
                ok = False
                break
        if ok:
            w = sum(1 for c in vec if c)
            if best is None or w < best:
                best = w
    return INFINITE if best is None else best
