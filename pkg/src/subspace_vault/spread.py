"""Spread codes in the Grassmannian G_q(n, k) with n = k*s.

A codeword is ``rowsp(A_1 | ... | A_s)`` with every ``A_i`` in F_q[P].  It is
identified by the projective point ``(a_1 : ... : a_s)`` over
F_{q^k} = F_q[x]/(p), normalised so the first nonzero coordinate is 1.  In
that normal form the generator matrix ``(0 | ... | I | A_{j+1} | ...)`` is
already in reduced row echelon form.

Every nonzero vector of F_q^n lies in exactly one codeword; reading its k-blocks
as field elements and normalising gives that codeword directly, which is
what the vote decoder builds on.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .companion import ResidueField, companion_matrix
from .errors import DecodingFailure, EnumerationCapError, FieldMismatchError, ParameterError
from .field import FieldSpec, Poly, first_irreducible, is_irreducible
from .linalg import MatrixFq, Subspace, intersection_dim, subspace_distance, vec_add, vec_scale

DEFAULT_ENUMERATION_CAP = 1 << 16

Coordinates = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Codeword:
    coordinates: Coordinates
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


@dataclass(frozen=True)
class SpreadCode:
    field: FieldSpec
    k: int
    s: int
    poly: Poly
    P: MatrixFq
    _ring: ResidueField = dc_field(compare=False, hash=False, repr=False, default=None)

    def __post_init__(self):
        if self._ring is None:
            object.__setattr__(self, "_ring", ResidueField(self.poly))

    @property
    def n(self) -> int:
        return self.k * self.s

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def cardinality(self) -> int:
        return (self.q**self.n - 1) // (self.q**self.k - 1)

    @property
    def min_distance(self) -> int:
        return 2 * self.k

    @property
    def radius(self) -> int:
        # (d_min - 1)/2 = k - 1/2; distances between k-dim spaces and a
        # witness of fixed dimension share parity, so k - 1 is the bound
        return self.k - 1

    # -- codewords ---------------------------------------------------------
    def codeword(self, coordinates: Sequence[Sequence[int]]) -> Codeword:
        """Codeword with the given (not necessarily normalised) projective coordinates."""
        coords = self._normalise([tuple(c) for c in coordinates])
        return Codeword(coords, self._subspace_of(coords))

    def _normalise(self, blocks: Sequence[Sequence[int]]) -> Coordinates:
        if len(blocks) != self.s:
            raise ParameterError(f"expected {self.s} coordinates, got {len(blocks)}")
        ring = self._ring
        blocks = [ring.tup(ring.poly(b)) for b in blocks]
        j = next((i for i, b in enumerate(blocks) if any(b)), None)
        if j is None:
            raise ParameterError("the all-zero tuple is not a projective point")
        inv = ring.inv(blocks[j])
        if inv == ring.one():
            return tuple(blocks)
        return tuple(ring.mul(b, inv) if any(b) else b for b in blocks)

    def _subspace_of(self, coords: Coordinates) -> Subspace:
        blocks = [self._ring.embed_rows(a) for a in coords]
        rows = tuple(tuple(itertools.chain.from_iterable(b[j] for b in blocks)) for j in range(self.k))
        return Subspace(self.field, self.n, rows)

    def coordinates_of(self, v: Sequence[int]) -> Coordinates:
        if len(v) != self.n:
            raise ParameterError(f"vector of length {len(v)} for a code with n={self.n}")
        k = self.k
        blocks = [tuple(v[i * k : (i + 1) * k]) for i in range(self.s)]
        j = next((i for i, b in enumerate(blocks) if any(b)), None)
        if j is None:
            raise ParameterError("the zero vector lies in every codeword")
        ring = self._ring
        inv = ring.inv(blocks[j])
        return tuple(ring.mul(b, inv) if any(b) else b for b in blocks)

    def containing_codeword(self, v: Sequence[int]) -> Codeword:
        coords = self.coordinates_of(v)
        return Codeword(coords, self._subspace_of(coords))

    def is_codeword(self, U: Subspace) -> bool:
        if U.field != self.field or U.n != self.n or U.dim != self.k:
            return False
        return self.containing_codeword(U.basis[0]).subspace == U

    def coordinate_tuples(self) -> Iterator[Coordinates]:
        """Normalised projective coordinates of every codeword."""
        elems = list(self.field.vectors(self.k))
        zero, one = self._ring.zero(), self._ring.one()
        for j in range(self.s):
            for tail in itertools.product(elems, repeat=self.s - 1 - j):
                yield (zero,) * j + (one,) + tail

    def enumerate(self, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Codeword]:
        if self.cardinality > cap:
            raise EnumerationCapError(
                f"{self.cardinality} codewords exceed the cap of {cap}; "
                "use containing_codeword or vote decoding instead"
            )
        return [Codeword(c, self._subspace_of(c)) for c in self.coordinate_tuples()]

    # -- decoding ----------------------------------------------------------
    def decode(self, W: Subspace, algorithm: str = "vote", cap: int = DEFAULT_ENUMERATION_CAP) -> Codeword:
        """Unique nearest codeword within distance k-1 of ``W``.

        Raises :class:`DecodingFailure` when the closest codeword is farther
        than the radius (that also covers ties, which only occur beyond it).
        """
        if W.field != self.field:
            raise FieldMismatchError(f"{W.field!r} vs {self.field!r}")
        if W.n != self.n:
            raise ParameterError(f"witness space has ambient dimension {W.n}, code has {self.n}")
        if W.dim == 0:
            raise ParameterError("cannot decode the zero subspace")
        if algorithm == "vote":
            return self._decode_vote(W)
        if algorithm == "exhaustive":
            return self._decode_exhaustive(W, cap)
        raise ParameterError(f"unknown decoding algorithm {algorithm!r}")

    def _decode_vote(self, W: Subspace) -> Codeword:
        f = self.field
        votes: Counter[Coordinates] = Counter()
        # one representative per projective point: leading coefficient 1
        for lead in range(W.dim):
            for tail in itertools.product(range(f.q), repeat=W.dim - 1 - lead):
                v = W.basis[lead]
                for c, row in zip(tail, W.basis[lead + 1 :]):
                    if c:
                        v = vec_add(f, v, vec_scale(f, c, row))
                votes[self.coordinates_of(v)] += 1
        ranked = votes.most_common(2)
        best, count = ranked[0]
        # count = (q^d - 1)/(q - 1) with d = dim(W ∩ C)
        d, total = 0, 0
        while total < count:
            total += f.q**d
            d += 1
        dist = W.dim + self.k - 2 * d
        if dist > self.radius or (len(ranked) > 1 and ranked[1][1] == count):
            raise DecodingFailure(f"nearest codeword at distance {dist} > {self.radius}", dist)
        return Codeword(best, self._subspace_of(best))

    def _decode_exhaustive(self, W: Subspace, cap: int) -> Codeword:
        best: list[Codeword] = []
        best_dist = None
        for c in self.enumerate(cap):
            d = subspace_distance(W, c.subspace)
            if best_dist is None or d < best_dist:
                best, best_dist = [c], d
            elif d == best_dist:
                best.append(c)
        if best_dist > self.radius or len(best) > 1:
            raise DecodingFailure(f"nearest codeword at distance {best_dist} > {self.radius}", best_dist)
        return best[0]

    def intersection_dim(self, W: Subspace, c: Codeword) -> int:
        return intersection_dim(W, c.subspace)


def spread_new(q: int | FieldSpec, k: int, s: int, p: Poly | Sequence[int] | None = None) -> SpreadCode:
    """Build the (k, ks)-spread code over F_q from the monic irreducible ``p``."""
    field = q if isinstance(q, FieldSpec) else FieldSpec.of_order(q)
    if k < 1 or s < 1:
        raise ParameterError("k and s must be positive")
    if p is None:
        poly = first_irreducible(field, k)
    else:
        poly = p if isinstance(p, Poly) else Poly(field, tuple(p))
        if poly.field != field:
            raise FieldMismatchError(f"{poly.field!r} vs {field!r}")
        if poly.degree != k:
            raise ParameterError(f"polynomial has degree {poly.degree}, expected {k}")
        if not poly.is_monic():
            raise ParameterError("polynomial must be monic")
        if not is_irreducible(poly):
            raise ParameterError(f"{poly!r} is reducible")
    return SpreadCode(field, k, s, poly, companion_matrix(poly))
