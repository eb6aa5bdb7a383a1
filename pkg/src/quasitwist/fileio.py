"""File formats: code descriptions, decoder configurations, key halves,
word encodings, and run manifests.  Everything is canonical JSON so that a
fixed seed reproduces byte-identical files."""

from __future__ import annotations

import json
from typing import Optional, Sequence

from . import __version__
from .cryptosystem import KeyPair, PublicKey
from .decoder import DecoderConfig
from .errors import DomainError
from .galois import Field, FieldSpec
from .qtcode import GroebnerGenMatrix, QTCode, new_qt_code

PRIVATE_KEY_HEADER = "# NOT FOR PRODUCTION USE"


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def save_code(code: QTCode, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(_dump(code.to_dict()))


def load_code(path: str) -> QTCode:
    with open(path) as fh:
        d = json.load(fh)
    spec = FieldSpec.from_dict(d)
    fq = spec.base_field()
    basis = GroebnerGenMatrix.from_coeff_lists(
        fq, int(d["m"]), int(d["ell"]), int(d["lam"]), d["basis"])
    return new_qt_code(basis, qspec=spec)


def save_decoder_config(cfg: DecoderConfig, path: str) -> None:
    d = {"a": cfg.a, "n1": cfg.n1, "n2": cfg.n2, "s": cfg.s,
         "delta": cfg.delta, "v": list(cfg.v)}
    with open(path, "w") as fh:
        fh.write(_dump(d))


def load_decoder_config(path: str, code: QTCode) -> DecoderConfig:
    with open(path) as fh:
        d = json.load(fh)
    v = d.get("v")
    return DecoderConfig(code, int(d["a"]), int(d["n1"]), int(d["n2"]),
                         int(d["s"]), int(d["delta"]),
                         v=tuple(v) if v is not None else None)


def save_public_key(pub: PublicKey, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(_dump(pub.to_dict()))


def load_public_key(path: str) -> PublicKey:
    with open(path) as fh:
        return PublicKey.from_dict(json.load(fh))


def save_private_key(kp: KeyPair, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(PRIVATE_KEY_HEADER + "\n")
        fh.write(_dump(kp.private_to_dict()))


def load_private_key(path: str) -> KeyPair:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if not ln.startswith("#")]
    return KeyPair.from_private_dict(json.loads("\n".join(lines)))


def parse_word(text: str, length: Optional[int] = None,
               field: Optional[Field] = None) -> list[int]:
    """Words serialize as comma-separated element encodings; each token may
    use any integer literal base (e.g. 0x1f)."""
    try:
        vals = [int(tok.strip(), 0) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise DomainError(f"cannot parse word {text!r}: {exc}") from None
    if length is not None and len(vals) != length:
        raise DomainError(f"expected {length} elements, got {len(vals)}")
    if field is not None:
        for v in vals:
            if not 0 <= v < field.order:
                raise DomainError(f"{v} is not an element encoding in [0, {field.order})")
    return vals


def format_word(seq: Sequence[int]) -> str:
    return ",".join(str(int(x)) for x in seq)


def field_tower_dict(field: Field) -> dict:
    """Modulus choices of every level of a field tower, for manifests."""
    levels = []
    f: Optional[Field] = field
    while f is not None:
        if f.base is None:
            levels.append({"p": f.p})
        else:
            levels.append({"order": f.order, "modulus": list(f.modulus)})
        f = f.base
    return {"levels": list(reversed(levels))}


def make_manifest(command: str, parameters: dict,
                  seed: Optional[int] = None,
                  field: Optional[Field] = None) -> dict:
    manifest = {"command": command, "parameters": parameters,
                "seed": seed, "version": __version__}
    if field is not None:
        manifest["field"] = field_tower_dict(field)
    return manifest


def write_manifest(manifest: dict, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(_dump(manifest))
