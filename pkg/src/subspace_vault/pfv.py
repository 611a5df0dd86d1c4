"""Polynomial fuzzy vault: a key polynomial hidden among chaff points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import DecodingFailure, ParameterError
from .field import FieldElem, FieldSpec, Poly
from .rng import as_seed, stream
from .rs import rs_decode


@dataclass(frozen=True)
class PfvVault:
    field: FieldSpec
    ell: int
    t: int
    r: int
    points: tuple[tuple[int, int], ...]

    def __post_init__(self):
        xs = [x for x, _ in self.points]
        if len(set(xs)) != len(xs):
            raise ParameterError("vault first coordinates must be distinct")
        if len(self.points) != self.r:
            raise ParameterError(f"vault holds {len(self.points)} points, r={self.r}")
        if not self.r > self.t > self.ell:
            raise ParameterError(f"need r > t > l, got r={self.r}, t={self.t}, l={self.ell}")

    @property
    def simplified(self) -> bool:
        """True when every field element is a first coordinate (B = F_q minus A)."""
        return self.r == self.field.q


def _elements(field: FieldSpec, items: Iterable[int | FieldElem]) -> list[int]:
    out = []
    for a in items:
        if isinstance(a, FieldElem):
            if a.field != field:
                raise ParameterError(f"{a!r} is not in {field!r}")
            a = a.value
        out.append(field.check(int(a)))
    return out


def pfv_lock(key: Poly, features: Iterable[int | FieldElem], r: int, ell: int, seed: int | random.Random) -> PfvVault:
    field = key.field
    A = _elements(field, features)
    if len(set(A)) != len(A):
        raise ParameterError("duplicate feature")
    t = len(A)
    if key.degree >= ell:
        raise ParameterError(f"key polynomial degree {key.degree} >= l={ell}")
    if t <= ell:
        raise ParameterError(f"need t > l, got t={t}, l={ell}")
    if not t < r <= field.q:
        raise ParameterError(f"need t < r <= q, got t={t}, r={r}, q={field.q}")
    master = as_seed(seed)
    chaff_rng, shuffle_rng = stream(master, "chaff"), stream(master, "shuffle")
    taken = set(A)
    free = [x for x in field.elements() if x not in taken]
    B = free if r - t == len(free) else chaff_rng.sample(free, r - t)
    points = [(x, key(x)) for x in A]
    for x in B:
        kx = key(x)
        y = chaff_rng.randrange(field.q - 1)
        points.append((x, y if y < kx else y + 1))
    shuffle_rng.shuffle(points)
    return PfvVault(field, ell, t, r, tuple(points))


def pfv_unlock(vault: PfvVault, witness: Iterable[int | FieldElem], enforce_size: bool = True) -> Poly:
    """Decode the key from the vault points selected by ``witness``.

    With ``enforce_size`` the witness must have exactly ``t`` features, the
    setting in which success is equivalent to ``d(A, W) <= t - l``.
    """
    W = set(_elements(vault.field, witness))
    if enforce_size and len(W) != vault.t:
        raise ParameterError(f"witness has {len(W)} features, vault expects t={vault.t}")
    Z = [(x, y) for x, y in vault.points if x in W]
    if len(Z) < vault.ell:
        raise DecodingFailure(f"only {len(Z)} vault points match the witness, need l={vault.ell}")
    return rs_decode(Z, vault.ell, vault.field)
