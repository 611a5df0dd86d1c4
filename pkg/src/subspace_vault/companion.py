"""Companion matrices and the ring isomorphism F_q[x]/(p) ≅ F_q[P].

The companion matrix uses the layout with ones on the superdiagonal and
``-c_0, ..., -c_{k-1}`` on the last row.  With it, ``e_j P = e_{j+1}`` for
``j < k-1``, so identifying the row vector ``e_j`` with ``x^j`` turns
right-multiplication by ``P`` into multiplication by ``x``.  Row ``j`` of
``ext_embed(a)`` is therefore the coefficient vector of ``x^j * a mod p``,
which is what :mod:`subspace_vault.spread` uses to build codewords without
forming matrix powers.
"""

from __future__ import annotations

from typing import Sequence

from .errors import FieldMismatchError, ParameterError
from .field import FieldElem, FieldSpec, Poly, poly_xgcd
from .linalg import MatrixFq


def companion_matrix(p: Poly) -> MatrixFq:
    if not p.is_monic():
        raise ParameterError("companion matrix needs a monic polynomial")
    k = p.degree
    if k < 1:
        raise ParameterError("companion matrix needs degree >= 1")
    f = p.field
    rows = [tuple(int(j == i + 1) for j in range(k)) for i in range(k - 1)]
    rows.append(tuple(f.neg(c) for c in p.coeffs[:k]))
    return MatrixFq(f, tuple(rows), k)


def poly_of_companion(P: MatrixFq) -> Poly:
    """Recover ``p`` from a companion matrix in the layout above."""
    f = P.field
    return Poly(f, tuple(f.neg(c) for c in P.rows[-1]) + (1,))


def ext_embed(a: FieldElem | Poly, P: MatrixFq) -> MatrixFq:
    """Map ``a = sum a_i α^i`` to ``sum a_i P^i``.

    ``a`` is either an element of F_{q^k} built on the same polynomial as
    ``P`` (only possible when q is prime) or a residue polynomial over the
    base field of ``P``.
    """
    base = P.field
    k = P.nrows
    p = poly_of_companion(P)
    if isinstance(a, FieldElem):
        ext = a.field
        if not (base.m == 1 and ext.p == base.p and ext.m == k and ext.modulus == p.coeffs):
            raise FieldMismatchError(f"{ext!r} is not F_q[x]/({p!r})")
        coeffs: Sequence[int] = a.coeffs
    else:
        if a.field != base:
            raise FieldMismatchError(f"{a.field!r} vs {base!r}")
        coeffs = (a % p).padded(k)
    acc = MatrixFq.zeros(base, k, k)
    power = MatrixFq.identity(base, k)
    for c in coeffs:
        if c:
            acc = acc + power.scale(c)
        power = power @ P
    return acc


class ResidueField:
    """F_q[x]/(p) with elements as length-k coefficient tuples over the base field."""

    def __init__(self, p: Poly):
        self.p = p
        self.base: FieldSpec = p.field
        self.k = p.degree
        self._inv_cache: dict[tuple[int, ...], tuple[int, ...]] = {}

    def poly(self, a: Sequence[int]) -> Poly:
        return Poly(self.base, tuple(a))

    def tup(self, a: Poly) -> tuple[int, ...]:
        return (a % self.p).padded(self.k)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.tup(self.poly(a) * self.poly(b))

    def inv(self, a: Sequence[int]) -> tuple[int, ...]:
        key = tuple(a)
        hit = self._inv_cache.get(key)
        if hit is None:
            g, s, _ = poly_xgcd(self.poly(a), self.p)
            if g.degree != 0:
                raise ZeroDivisionError("zero has no inverse")
            hit = self._inv_cache[key] = self.tup(s)
        return hit

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.k - 1)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    def embed_rows(self, a: Sequence[int]) -> list[tuple[int, ...]]:
        """Rows of the k x k matrix representing multiplication by ``a``."""
        rows = []
        cur = self.poly(a) % self.p
        x = Poly.x(self.base)
        for _ in range(self.k):
            rows.append(cur.padded(self.k))
            cur = (cur * x) % self.p
        return rows
