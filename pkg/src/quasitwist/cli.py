"""Command-line front end: code inspection, distance bounds, decoding, the
public-key scheme, security calculators, brute-force oracles, and an
end-to-end reproduction of the worked [20,10,4]_3 decoding example.

Exit codes: 0 success, 1 domain failure (including DECODING FAILURE),
2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__, fileio
from .analysis import min_work_factor, qfs_check, work_factor
from .cryptosystem import CryptoParams, decrypt, encrypt, keygen
from .decoder import DECODING_FAILURE, DecoderConfig, decode
from .errors import QuasitwistError
from .galois import FieldSpec, prime_field
from .oracle import (
    OracleBudget,
    eigencode_distance_bruteforce,
    min_distance_bruteforce,
    nearest_codeword,
)
from .polyring import Poly
from .qtcode import GroebnerGenMatrix, INFINITE, ht_bound, new_qt_code

# g01 of the worked example: 1 + X^2 + 2X^3 + X^5 + 2X^6 + 2X^7 + 2X^9
_EXAMPLE_G01 = (1, 0, 1, 2, 0, 1, 2, 2, 0, 2)


def _emit(args, manifest: dict, result: dict, human_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"manifest": manifest, "result": result}, sort_keys=True))
    else:
        for line in human_lines:
            print(line)
    if getattr(args, "manifest", None):
        fileio.write_manifest(manifest, args.manifest)


def _cmd_code_info(args) -> int:
    code = fileio.load_code(args.code)
    code.basis.validate()
    manifest = fileio.make_manifest("code", {"code": args.code},
                                    field=code.splitting.field)
    result = {"n": code.n, "k": code.k, "m": code.m, "ell": code.ell,
              "lam": code.lam, "q": code.field.order,
              "splitting_degree": code.splitting.r,
              "eigenvalue_indices": list(code.eigenvalue_indices),
              "properties_valid": True}
    _emit(args, manifest, result, [
        f"[{code.n},{code.k}]_{code.field.order} ({code.lam},{code.ell})-QT code",
        f"m = {code.m}, splitting field GF({code.splitting.field.order})",
        f"eigenvalue indices: {sorted(code.eigenvalue_indices)}",
        "reduced-basis properties: all valid",
    ])
    return 0


def _cmd_bound(args) -> int:
    code = fileio.load_code(args.code)
    res = ht_bound(code, args.a, args.n1, args.n2, args.s, args.delta)
    manifest = fileio.make_manifest(
        "bound", {"code": args.code, "a": args.a, "n1": args.n1,
                  "n2": args.n2, "s": args.s, "delta": args.delta},
        field=code.splitting.field)
    d_c = "infinite" if res.eigencode.d == INFINITE else int(res.eigencode.d)
    result = {"d_star": res.d_star, "indices": list(res.indices),
              "d_eigencode": d_c, "eigenspace_dim": len(res.v_basis)}
    _emit(args, manifest, result, [
        f"index set D = {list(res.indices)}",
        f"eigencode distance: {d_c}",
        f"d* = min(delta + s, d_C) = {res.d_star}",
    ])
    return 0


def _cmd_decode(args) -> int:
    code = fileio.load_code(args.code)
    cfg = fileio.load_decoder_config(args.config, code)
    word = fileio.parse_word(args.word, length=code.n, field=code.field)
    outcome = decode(word, code, cfg, with_trace=True)
    manifest = fileio.make_manifest(
        "decode", {"code": args.code, "config": args.config, "word": args.word},
        field=code.splitting.field)
    if not outcome.ok:
        result = {"status": "DECODING_FAILURE", "reason": outcome.reason}
        _emit(args, manifest, result, ["DECODING FAILURE", f"reason: {outcome.reason}"])
        return 1
    result = {"status": "ok",
              "codeword": list(outcome.codeword),
              "error": list(outcome.error),
              "locations": list(outcome.trace.locations)}
    _emit(args, manifest, result, [
        f"codeword: {fileio.format_word(outcome.codeword)}",
        f"error:    {fileio.format_word(outcome.error)}",
        f"locations: {list(outcome.trace.locations)}",
    ])
    return 0


def _crypto_params(args) -> CryptoParams:
    return CryptoParams(qspec=FieldSpec(args.p, args.s), m=args.m,
                        ell=args.ell, lam=args.lam)


def _cmd_keygen(args) -> int:
    params = _crypto_params(args)
    kp = keygen(params, seed=args.seed, max_samples=args.max_samples)
    fileio.save_public_key(kp.public, args.out_pub)
    fileio.save_private_key(kp, args.out_priv)
    manifest = fileio.make_manifest(
        "keygen", {"p": args.p, "s": args.s, "m": args.m, "ell": args.ell,
                   "lam": args.lam}, seed=args.seed,
        field=kp.code.splitting.field)
    result = {"t": kp.public.t, "public": args.out_pub, "private": args.out_priv,
              "config": {"a": kp.cfg_params[0], "n1": kp.cfg_params[1],
                         "n2": kp.cfg_params[2], "s": kp.cfg_params[3],
                         "delta": kp.cfg_params[4]}}
    _emit(args, manifest, result, [
        f"wrote public key to {args.out_pub} (t = {kp.public.t})",
        f"wrote private key to {args.out_priv}",
    ])
    return 0


def _cmd_encrypt(args) -> int:
    pub = fileio.load_public_key(args.pub)
    fq = pub.params.qspec.base_field()
    n = pub.params.m * pub.params.ell
    msg = fileio.parse_word(args.msg, length=n, field=fq)
    ct = encrypt(pub, msg)
    manifest = fileio.make_manifest("encrypt", {"pub": args.pub, "msg": args.msg})
    _emit(args, manifest, {"ciphertext": list(ct)},
          [f"ciphertext: {fileio.format_word(ct)}"])
    return 0


def _cmd_decrypt(args) -> int:
    kp = fileio.load_private_key(args.priv)
    fq = kp.params.qspec.base_field()
    ct = fileio.parse_word(args.ct, length=kp.params.m, field=fq)
    msg = decrypt(kp, ct)
    manifest = fileio.make_manifest("decrypt", {"priv": args.priv, "ct": args.ct})
    _emit(args, manifest, {"message": list(msg)},
          [f"message: {fileio.format_word(msg)}"])
    return 0


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmd_workfactor(args) -> int:
    if args.sweep:
        rows = ["m,ell,eps,W,log2W,Wmin,log2Wmin"]
        for m in _parse_range(args.m_range):
            for ell in _parse_range(args.ell_range):
                for eps in _parse_range(args.eps_range):
                    if eps > m * ell - m:
                        continue
                    w = work_factor(m, ell, eps, alpha=args.alpha)
                    wmin = min_work_factor(m, ell, eps, alpha=args.alpha,
                                           classical=args.classical)
                    rows.append(f"{m},{ell},{eps},{_fraction_str(w.value)},"
                                f"{w.log2:.3f},{_fraction_str(wmin.value)},{wmin.log2:.3f}")
        out = "\n".join(rows)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(out + "\n")
        else:
            print(out)
        return 0
    w = work_factor(args.m, args.ell, args.eps, alpha=args.alpha)
    wmin = min_work_factor(args.m, args.ell, args.eps, alpha=args.alpha,
                           classical=args.classical)
    manifest = fileio.make_manifest(
        "workfactor", {"m": args.m, "ell": args.ell, "eps": args.eps,
                       "alpha": str(args.alpha), "classical": args.classical})
    result = {"W": _fraction_str(w.value), "log2_W": w.log2,
              "W_min": _fraction_str(wmin.value), "log2_W_min": wmin.log2,
              "N2": wmin.n2, "T2": _fraction_str(wmin.t2),
              "Q": [_fraction_str(qp) for qp in wmin.q_probs]}
    _emit(args, manifest, result, [
        f"W = {_fraction_str(w.value)}  (log2 = {w.log2:.3f})",
        f"W_min = {_fraction_str(wmin.value)}  (log2 = {wmin.log2:.3f})",
        f"Q = {[_fraction_str(qp) for qp in wmin.q_probs]}, N2 = {wmin.n2}, "
        f"T2 = {_fraction_str(wmin.t2)}",
    ])
    return 0


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in spec.split(",")]


def _cmd_qfs_check(args) -> int:
    res = qfs_check(args.q, args.m, args.ell)
    manifest = fileio.make_manifest("qfs-check", {"q": args.q, "m": args.m,
                                                  "ell": args.ell})
    result = {"satisfied": res.satisfied, "lhs_q4m_digits": len(str(res.lhs)),
              "rhs_mll_digits": len(str(res.rhs))}
    verdict = "satisfied" if res.satisfied else "not satisfied"
    _emit(args, manifest, result, [
        f"m < (1/4) ell (log_q m + log_q ell): {verdict}",
        f"integer comparison: q^(4m) {'<' if res.satisfied else '>='} (m ell)^ell",
    ])
    return 0


def _cmd_oracle(args) -> int:
    budget = OracleBudget(max_codewords=args.budget)
    code = fileio.load_code(args.code)
    if args.oracle_op == "min-distance":
        d = min_distance_bruteforce(code, budget)
        manifest = fileio.make_manifest("oracle", {"op": "min-distance",
                                                   "code": args.code})
        _emit(args, manifest, {"d": d}, [f"minimum distance: {d}"])
        return 0
    if args.oracle_op == "nearest":
        word = fileio.parse_word(args.word, length=code.n, field=code.field)
        cw, dist = nearest_codeword(code, word, budget)
        manifest = fileio.make_manifest("oracle", {"op": "nearest",
                                                   "code": args.code, "word": args.word})
        _emit(args, manifest, {"codeword": list(cw), "distance": dist},
              [f"nearest codeword: {fileio.format_word(cw)}", f"distance: {dist}"])
        return 0
    # eigencode-distance
    indices = [int(t) for t in args.indices.split(",")]
    from .qtcode import intersection_eigenspace

    v_basis = intersection_eigenspace(code, indices)
    d = eigencode_distance_bruteforce(v_basis, code.splitting.field,
                                      code.field, code.ell, budget)
    manifest = fileio.make_manifest("oracle", {"op": "eigencode-distance",
                                               "code": args.code,
                                               "indices": args.indices})
    d_repr = "infinite" if d == INFINITE else int(d)
    _emit(args, manifest, {"d_eigencode": d_repr},
          [f"eigencode distance: {d_repr}"])
    return 0


def _cmd_paper_example(args) -> int:
    f3 = prime_field(3)
    basis = GroebnerGenMatrix(f3, 10, 2, 2, [
        [Poly.one(f3), Poly(f3, list(_EXAMPLE_G01))],
        [Poly.zero(f3), Poly(f3, [1] + [0] * 9 + [1])],
    ])
    code = new_qt_code(basis, qspec=FieldSpec(3))
    f81 = code.splitting.field
    cfg = DecoderConfig(code, a=6, n1=1, n2=1, s=0, delta=4,
                        v=(1, f81.g_pow(50)))
    word = [0] * 20
    word[8 * 2 + 1] = 1  # r(X) = (0, X^8)
    outcome = decode(word, code, cfg, with_trace=True)
    checkpoints = {
        "syndromes are a^66, a^50, a^34":
            outcome.trace.syndrome_powers[0] == ("a^66", "a^50", "a^34"),
        "Lambda_1 = a^64":
            len(outcome.trace.locator_coeffs) == 2
            and outcome.trace.locator_coeffs[1] == f81.neg(f81.g_pow(64)),
        "error locations {8}": outcome.trace.locations == (8,),
        "decoded to the zero codeword":
            outcome.ok and outcome.codeword == (0,) * 20,
        "e_{8,1} = 1": outcome.trace.errors.get(8) == (0, 1),
    }
    manifest = fileio.make_manifest("paper-example", {}, field=f81)
    lines = [f"[20,10,4]_3 (2,2)-QT code, d* = {cfg.d_star}, eps = {cfg.eps}",
             f"received word r(X) = (0, X^8)"]
    for name, ok in checkpoints.items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    all_ok = all(checkpoints.values())
    if all_ok:
        lines.append("decoded: zero codeword; e_{8,1}=1")
    result = {"checkpoints": checkpoints, "ok": all_ok,
              "syndrome_powers": list(outcome.trace.syndrome_powers[0]),
              "E_powers": list(outcome.trace.E_powers),
              "Y_diag_powers": list(outcome.trace.Y_powers)}
    _emit(args, manifest, result, lines)
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasitwist",
        description="Quasi-twisted codes: bounds, decoding, and a "
                    "Niederreiter-style cryptosystem")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--manifest", help="write the run manifest to this file")

    p = sub.add_parser("code", help="inspect a code description file")
    code_sub = p.add_subparsers(dest="code_op", required=True)
    pi = code_sub.add_parser("info")
    pi.add_argument("--code", required=True)
    common(pi)
    pi.set_defaults(func=_cmd_code_info)

    p = sub.add_parser("bound", help="evaluate the minimum-distance bound")
    p.add_argument("--code", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("decode", help="decode a received word")
    p.add_argument("--code", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--lam", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-samples", type=int, default=100_000)
    p.add_argument("--out-pub", required=True)
    p.add_argument("--out-priv", required=True)
    common(p)
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a bounded-weight message")
    p.add_argument("--pub", required=True)
    p.add_argument("--msg", required=True)
    common(p)
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext")
    p.add_argument("--priv", required=True)
    p.add_argument("--ct", required=True)
    common(p)
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("workfactor", help="information-set-decoding work factors")
    p.add_argument("--m", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--eps", type=int)
    p.add_argument("--alpha", type=Fraction, default=Fraction(1))
    p.add_argument("--classical", action="store_true",
                   help="use the textbook success probabilities")
    p.add_argument("--sweep", action="store_true", help="CSV table over ranges")
    p.add_argument("--m-range", default="2..6")
    p.add_argument("--ell-range", default="2..4")
    p.add_argument("--eps-range", default="1..3")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=_cmd_workfactor)

    p = sub.add_parser("qfs-check", help="quantum-sampling parameter predicate")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_qfs_check)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    oracle_sub = p.add_subparsers(dest="oracle_op", required=True)
    for name in ("min-distance", "nearest", "eigencode-distance"):
        po = oracle_sub.add_parser(name)
        po.add_argument("--code", required=True)
        po.add_argument("--budget", type=int, default=OracleBudget().max_codewords)
        if name == "nearest":
            po.add_argument("--word", required=True)
        if name == "eigencode-distance":
            po.add_argument("--indices", required=True)
        common(po)
        po.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("paper-example",
                       help="reproduce the worked [20,10,4]_3 decoding example")
    common(p)
    p.set_defaults(func=_cmd_paper_example)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "workfactor" and not args.sweep:
        if args.m is None or args.ell is None or args.eps is None:
            parser.error("workfactor requires --m, --ell, --eps (or --sweep)")
    try:
        return args.func(args)
    except QuasitwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
