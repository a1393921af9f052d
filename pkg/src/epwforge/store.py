"""Canonical serialization and content addressing of the package's objects.

Files are JSON with a fixed layout version ("epwforge/1"), scalars encoded
with no floating point ("num/den" strings over Q, canonical ints over F_p),
and a sha256 of the canonical mathematical payload embedded in the header.
Because Lagrangians serialize their echelon basis and sextics their
normalized term list, equal objects hash equally regardless of how they
were built; loading re-validates every invariant and recomputes the hash,
so tampered files fail loudly.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .fields import Field, field_from_json

FORMAT = "epwforge/1"


class StoreError(ValueError):
    pass


def _canonical_dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _sha(payload: dict) -> str:
    return hashlib.sha256(_canonical_dumps(payload).encode("ascii")).hexdigest()


def _lagrangian_payload(obj) -> dict:
    return {
        "kind": "lagrangian",
        "field": obj.field.to_json(),
        "basis": obj.subspace.to_json(),
    }


def _sextic_payload(obj) -> dict:
    return {
        "kind": "sextic",
        "field": obj.field.to_json(),
        "degree": 6,
        "vars": 6,
        "terms": obj.poly.to_json_terms(),
    }


def content_hash(obj) -> str:
    """sha256 of the canonical mathematical payload (provenance excluded)."""
    if hasattr(obj, "subspace"):
        return _sha(_lagrangian_payload(obj))
    if hasattr(obj, "poly"):
        return _sha(_sextic_payload(obj))
    raise StoreError(f"no canonical payload for {type(obj).__name__}")


def to_document(obj) -> dict:
    if hasattr(obj, "subspace"):
        payload = _lagrangian_payload(obj)
    elif hasattr(obj, "poly"):
        payload = _sextic_payload(obj)
    else:
        raise StoreError(f"cannot serialize {type(obj).__name__}")
    doc = {"format": FORMAT}
    doc.update(payload)
    doc["provenance"] = dict(getattr(obj, "provenance", {}))
    doc["sha256"] = _sha(payload)
    return doc


def save(obj, path) -> str:
    """Write the canonical document; returns the content hash."""
    doc = to_document(obj)
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return doc["sha256"]


def loads_document(doc: dict):
    if doc.get("format") != FORMAT:
        raise StoreError(f"unsupported file format {doc.get('format')!r}; expected {FORMAT}")
    kind = doc.get("kind")
    field = field_from_json(doc.get("field", {}))
    if kind == "lagrangian":
        return _load_lagrangian(doc, field)
    if kind == "sextic":
        return _load_sextic(doc, field)
    raise StoreError(f"unknown object kind {kind!r}")


def load(path):
    """Read and re-validate an object; fails loudly on any tampering."""
    doc = json.loads(Path(path).read_text())
    return loads_document(doc)


def _load_lagrangian(doc: dict, field: Field):
    from .lagrangian import IsotropyError, Lagrangian
    from .linalg import Subspace, rref

    basis = doc.get("basis")
    if not isinstance(basis, list) or len(basis) != 10:
        raise StoreError("a Lagrangian file carries exactly 10 basis rows")
    rows = []
    for r in basis:
        if len(r) != 20:
            raise StoreError("basis rows must have 20 coordinates")
        rows.append([field.scalar_from_json(x) for x in r])
    echelon, _ = rref(rows, field)
    if rows != echelon or len(echelon) != 10:
        raise StoreError("basis is not in canonical echelon form of rank 10")
    sub = Subspace(field, 20, rows)
    try:
        lag = Lagrangian(sub, doc.get("provenance", {}))
    except IsotropyError as exc:
        raise StoreError(f"stored subspace violates isotropy: {exc}") from exc
    expect = _sha(_lagrangian_payload(lag))
    if doc.get("sha256") != expect:
        raise StoreError("content hash mismatch; file was modified")
    return lag


def _load_sextic(doc: dict, field: Field):
    from .epw import EPWSextic
    from .multipoly import MultiPoly

    if doc.get("degree") != 6 or doc.get("vars") != 6:
        raise StoreError("sextic files are degree-6 equations in 6 variables")
    poly = MultiPoly.from_json_terms(field, doc.get("terms", []))
    if poly.is_zero() or not poly.is_homogeneous(6):
        raise StoreError("stored polynomial is not a nonzero degree-6 form")
    if poly.normalized() != poly:
        raise StoreError("stored polynomial is not in canonical normalized form")
    sx = EPWSextic(poly=poly, provenance=doc.get("provenance", {}))
    expect = _sha(_sextic_payload(sx))
    if doc.get("sha256") != expect:
        raise StoreError("content hash mismatch; file was modified")
    return sx
