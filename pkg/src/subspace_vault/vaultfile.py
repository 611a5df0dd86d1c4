"""Canonical JSON encoding of vaults.

Layout (keys sorted, no whitespace)::

    {"version": 1, "scheme": "pfv" | "sfv",
     "field": {"p": 2, "m": 1, "modulus": null},
     "params": {...}, "points": [[first, second], ...],
     "mode": "strict" | "relaxed", "hash": "sha-256"}   # last two: sfv only

Field elements are ints for prime fields and coefficient lists (low to high)
for extension fields.  Hashed first coordinates are lowercase hex digests.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import (
    MalformedVaultError,
    ParameterError,
    UnsupportedVersionError,
    VaultInvariantError,
)
from .field import FieldSpec, Poly
from .pfv import PfvVault
from .sfv import GroundTruth, SfvKey, SfvParams, SfvVault
from .spread import spread_new

FORMAT_VERSION = 1
HASH_NAME = "sha-256"


def canonical_json(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def encode_elem(field: FieldSpec, a: int) -> int | list[int]:
    return a if field.m == 1 else list(field.coeffs(a))


def encode_vec(field: FieldSpec, v) -> list:
    return [encode_elem(field, a) for a in v]


def _field_dict(field: FieldSpec) -> dict:
    return {"p": field.p, "m": field.m, "modulus": list(field.modulus) if field.modulus else None}


def vault_to_dict(vault: PfvVault | SfvVault) -> dict:
    if isinstance(vault, PfvVault):
        f = vault.field
        return {
            "version": FORMAT_VERSION,
            "scheme": "pfv",
            "field": _field_dict(f),
            "params": {"ell": vault.ell, "t": vault.t, "r": vault.r},
            "points": [[encode_elem(f, x), encode_elem(f, y)] for x, y in vault.points],
        }
    p = vault.params
    f = p.field
    out = {
        "version": FORMAT_VERSION,
        "scheme": "sfv",
        "field": _field_dict(f),
        "mode": p.mode,
        "params": {
            "k": p.k,
            "n": p.n,
            "s": p.code.s,
            "poly": encode_vec(f, p.code.poly.coeffs),
            "t": p.t,
            "r": p.r,
            "chaff": p.chaff,
            "chaff_domain": p.chaff_domain,
        },
        "points": [[x if p.hashed else encode_vec(f, x), encode_vec(f, y)] for x, y in vault.points],
    }
    if p.hashed:
        out["hash"] = HASH_NAME
    return out


def vault_serialize(vault: PfvVault | SfvVault) -> bytes:
    return canonical_json(vault_to_dict(vault))


# -- parsing --------------------------------------------------------------------


def _get(obj: dict, key: str, loc: str, kind: type | tuple[type, ...]):
    if not isinstance(obj, dict):
        raise MalformedVaultError("expected an object", loc)
    if key not in obj:
        raise MalformedVaultError(f"missing key {key!r}", loc)
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise MalformedVaultError(f"{key!r} has the wrong type", f"{loc}.{key}")
    return value


def _decode_elem(field: FieldSpec, raw: Any, loc: str) -> int:
    try:
        if field.m == 1:
            if not isinstance(raw, int) or isinstance(raw, bool) or not 0 <= raw < field.p:
                raise ValueError
            return raw
        if not isinstance(raw, list) or len(raw) != field.m or any(
            not isinstance(c, int) or not 0 <= c < field.p for c in raw
        ):
            raise ValueError
        return field.from_coeffs(raw)
    except ValueError:
        raise MalformedVaultError(f"not an element of {field!r}", loc) from None


def _decode_vec(field: FieldSpec, raw: Any, length: int, loc: str) -> tuple[int, ...]:
    if not isinstance(raw, list):
        raise MalformedVaultError("expected a vector", loc)
    if len(raw) != length:
        raise VaultInvariantError(f"vector of length {len(raw)}, expected {length}", loc)
    return tuple(_decode_elem(field, a, f"{loc}[{i}]") for i, a in enumerate(raw))


def _parse_field(doc: dict) -> FieldSpec:
    fd = _get(doc, "field", "$", dict)
    p = _get(fd, "p", "$.field", int)
    m = _get(fd, "m", "$.field", int)
    modulus = fd.get("modulus")
    try:
        return FieldSpec(p, m, tuple(modulus) if modulus else None)
    except (ParameterError, TypeError) as exc:
        raise VaultInvariantError(str(exc), "$.field") from None


def _points(doc: dict) -> list:
    pts = _get(doc, "points", "$", list)
    for i, pt in enumerate(pts):
        if not isinstance(pt, list) or len(pt) != 2:
            raise MalformedVaultError("each point is a [first, second] pair", f"$.points[{i}]")
    return pts


def vault_parse(data: bytes | str) -> PfvVault | SfvVault:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedVaultError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedVaultError("top level must be an object")
    version = _get(doc, "version", "$", int)
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"version {version} is not supported", "$.version")
    scheme = _get(doc, "scheme", "$", str)
    field = _parse_field(doc)
    params = _get(doc, "params", "$", dict)
    pts = _points(doc)
    if scheme == "pfv":
        ell = _get(params, "ell", "$.params", int)
        t = _get(params, "t", "$.params", int)
        r = _get(params, "r", "$.params", int)
        points = tuple(
            (_decode_elem(field, x, f"$.points[{i}][0]"), _decode_elem(field, y, f"$.points[{i}][1]"))
            for i, (x, y) in enumerate(pts)
        )
        _check_distinct([x for x, _ in points])
        try:
            return PfvVault(field, ell, t, r, points)
        except ParameterError as exc:
            raise VaultInvariantError(str(exc), "$.params") from None
    if scheme == "sfv":
        return _parse_sfv(doc, field, params, pts)
    raise MalformedVaultError(f"unknown scheme {scheme!r}", "$.scheme")


def _check_distinct(firsts: list) -> None:
    seen: dict = {}
    for i, x in enumerate(firsts):
        if x in seen:
            raise VaultInvariantError(f"first coordinate repeats point {seen[x]}", f"$.points[{i}][0]")
        seen[x] = i


def _parse_sfv(doc: dict, field: FieldSpec, params: dict, pts: list) -> SfvVault:
    mode = _get(doc, "mode", "$", str)
    hashed = "hash" in doc
    if hashed and doc["hash"] != HASH_NAME:
        raise VaultInvariantError(f"unsupported hash {doc['hash']!r}", "$.hash")
    k = _get(params, "k", "$.params", int)
    n = _get(params, "n", "$.params", int)
    s = _get(params, "s", "$.params", int)
    t = _get(params, "t", "$.params", int)
    r = _get(params, "r", "$.params", int)
    chaff = _get(params, "chaff", "$.params", str)
    domain = _get(params, "chaff_domain", "$.params", str)
    poly_raw = _get(params, "poly", "$.params", list)
    if n != k * s:
        raise VaultInvariantError(f"n={n} differs from k*s={k * s}", "$.params.n")
    poly = Poly(field, tuple(_decode_elem(field, c, f"$.params.poly[{i}]") for i, c in enumerate(poly_raw)))
    try:
        code = spread_new(field, k, s, poly)
        sp = SfvParams(code, mode, t, r, hashed, chaff, domain)
    except ParameterError as exc:
        raise VaultInvariantError(str(exc), "$.params") from None
    points = []
    for i, (x, y) in enumerate(pts):
        if hashed:
            if not isinstance(x, str) or len(x) != 64 or x != x.lower() or any(c not in "0123456789abcdef" for c in x):
                raise MalformedVaultError("expected a lowercase hex SHA-256 digest", f"$.points[{i}][0]")
            first = x
        else:
            first = _decode_vec(field, x, k, f"$.points[{i}][0]")
        points.append((first, _decode_vec(field, y, n, f"$.points[{i}][1]")))
    if domain == "complement":
        _check_distinct([x for x, _ in points])
    try:
        return SfvVault(sp, tuple(points))
    except ParameterError as exc:
        raise VaultInvariantError(str(exc), "$.points") from None


# -- ground truth (test harness only) -------------------------------------------


def truth_to_dict(truth: GroundTruth, field: FieldSpec) -> dict:
    return {
        "authentic": sorted(truth.authentic),
        "features": [encode_vec(field, x) for x in truth.features],
        "key": [encode_vec(field, c) for c in truth.key.codeword.coordinates],
    }


def truth_from_dict(doc: dict, vault: SfvVault) -> GroundTruth:
    p = vault.params
    f = p.field
    key = SfvKey(p.code.codeword([_decode_vec(f, c, p.k, "$.key") for c in doc["key"]]))
    feats = tuple(_decode_vec(f, x, p.k, "$.features") for x in doc["features"])
    return GroundTruth(feats, key, frozenset(doc["authentic"]))
