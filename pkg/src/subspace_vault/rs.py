"""Reed-Solomon evaluation codes and unique decoding.

``rs_decode`` is Berlekamp-Welch: it finds an error locator ``E`` (monic,
degree ``e = (z - l) // 2``) and ``Q`` of degree ``< e + l`` with
``Q(g_i) = y_i E(g_i)``, then returns ``Q / E``.  ``rs_decode_oracle`` is an
independent brute-force interpolator kept for cross-checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DecodingFailure, ParameterError
from .field import FieldSpec, Poly
from .linalg import MatrixFq, solve

Pair = tuple[int, int]


@dataclass(frozen=True)
class RSInstance:
    field: FieldSpec
    ell: int
    points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(self.field.check(int(g)) for g in self.points)
        if len(set(pts)) != len(pts):
            raise ParameterError("evaluation points must be distinct")
        if 0 in pts:
            raise ParameterError("evaluation points must be nonzero")
        if len(pts) < self.ell:
            raise ParameterError(f"z={len(pts)} < l={self.ell}")
        object.__setattr__(self, "points", pts)

    @property
    def z(self) -> int:
        return len(self.points)

    @property
    def min_distance(self) -> int:
        return self.z - self.ell + 1


def rs_encode(f: Poly, inst: RSInstance) -> tuple[int, ...]:
    if f.field != inst.field:
        raise ParameterError("polynomial and code live over different fields")
    if f.degree >= inst.ell:
        raise ParameterError(f"degree {f.degree} >= l={inst.ell}")
    return tuple(f(g) for g in inst.points)


def _check_pairs(field: FieldSpec, pairs: Sequence[Pair], ell: int) -> list[Pair]:
    pairs = [(field.check(int(g)), field.check(int(y))) for g, y in pairs]
    if len({g for g, _ in pairs}) != len(pairs):
        raise ParameterError("duplicate evaluation point")
    if ell < 1:
        raise ParameterError("message length must be >= 1")
    if len(pairs) < ell:
        raise ParameterError(f"need at least l={ell} pairs, got {len(pairs)}")
    return pairs


def agreement(f: Poly, pairs: Sequence[Pair]) -> int:
    return sum(1 for g, y in pairs if f(g) == y)


def _within_radius(f: Poly, pairs: Sequence[Pair], ell: int) -> bool:
    return 2 * agreement(f, pairs) >= len(pairs) + ell


def interpolate(field: FieldSpec, pairs: Sequence[Pair]) -> Poly:
    """Lagrange interpolation through distinct points."""
    result = Poly(field)
    for i, (gi, yi) in enumerate(pairs):
        if not yi:
            continue
        basis = Poly(field, (1,))
        denom = 1
        for j, (gj, _) in enumerate(pairs):
            if j != i:
                basis = basis * Poly(field, (field.neg(gj), 1))
                denom = field.mul(denom, field.sub(gi, gj))
        result = result + basis * field.mul(yi, field.inv(denom))
    return result


def rs_decode(pairs: Sequence[Pair], ell: int, field: FieldSpec) -> Poly:
    """The unique ``f`` with ``deg f < ell`` agreeing with at least ``(z + ell)/2`` pairs."""
    pairs = _check_pairs(field, pairs, ell)
    z = len(pairs)
    e = (z - ell) // 2
    # unknowns: E_0..E_{e-1} then Q_0..Q_{e+ell-1}
    rows, rhs = [], []
    for g, y in pairs:
        gp = [field.pow(g, j) for j in range(e + ell)]
        rows.append(tuple(field.neg(field.mul(y, gp[j])) for j in range(e)) + tuple(gp))
        rhs.append(field.mul(y, field.pow(g, e)))
    sol = solve(MatrixFq(field, tuple(rows), 2 * e + ell), rhs)
    if sol is None:
        raise DecodingFailure("no error locator of the required degree")
    E = Poly(field, tuple(sol[:e]) + (1,))
    Q = Poly(field, sol[e:])
    f, rem = divmod(Q, E)
    if not rem.is_zero() or f.degree >= ell or not _within_radius(f, pairs, ell):
        raise DecodingFailure(f"more than {e} errors")
    return f


def rs_decode_oracle(pairs: Sequence[Pair], ell: int, field: FieldSpec) -> Poly:
    """Interpolate every ``ell``-subset and keep the candidate within the radius."""
    pairs = _check_pairs(field, pairs, ell)
    found: set[Poly] = set()
    for subset in itertools.combinations(pairs, ell):
        f = interpolate(field, subset)
        if _within_radius(f, pairs, ell):
            found.add(f)
    if len(found) != 1:
        raise DecodingFailure("no polynomial within the unique decoding radius")
    return found.pop()
