"""Dense matrices and subspaces over F_q.

Subspaces are kept in their canonical form, the reduced row echelon basis
with zero rows dropped, so equality and hashing are plain tuple comparisons.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatchError, ParameterError
from .field import FieldSpec

Vector = tuple[int, ...]


@dataclass(frozen=True)
class MatrixFq:
    """Row-major matrix with entries stored as packed field ints."""

    field: FieldSpec
    rows: tuple[Vector, ...]
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        q = self.field.q
        for r in rows:
            if len(r) != self.ncols:
                raise ParameterError(f"row of length {len(r)} in a matrix with {self.ncols} columns")
            if any(not 0 <= a < q for a in r):
                raise ParameterError(f"entry outside {self.field!r}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "MatrixFq":
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ParameterError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, tuple(rows), ncols)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "MatrixFq":
        return cls(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "MatrixFq":
        return cls(field, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), size)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.rows[i][j]

    def _same(self, other: "MatrixFq") -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "MatrixFq") -> "MatrixFq":
        self._same(other)
        if other.shape != self.shape:
            raise ParameterError(f"shape {self.shape} vs {other.shape}")
        f = self.field
        return MatrixFq(f, tuple(tuple(f.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c: int) -> "MatrixFq":
        f = self.field
        return MatrixFq(f, tuple(tuple(f.mul(c, a) for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        self._same(other)
        if self.ncols != other.nrows:
            raise ParameterError(f"cannot multiply {self.shape} by {other.shape}")
        return MatrixFq(self.field, tuple(vec_mat(self.field, r, other) for r in self.rows), other.ncols)

    def transpose(self) -> "MatrixFq":
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols))
        return MatrixFq(self.field, cols, self.nrows)

    def hstack(self, *others: "MatrixFq") -> "MatrixFq":
        rows = [list(r) for r in self.rows]
        ncols = self.ncols
        for o in others:
            self._same(o)
            if o.nrows != self.nrows:
                raise ParameterError("hstack needs equal row counts")
            for r, extra in zip(rows, o.rows):
                r.extend(extra)
            ncols += o.ncols
        return MatrixFq(self.field, tuple(map(tuple, rows)), ncols)

    def vstack(self, *others: "MatrixFq") -> "MatrixFq":
        rows = list(self.rows)
        for o in others:
            self._same(o)
            if o.ncols != self.ncols:
                raise ParameterError("vstack needs equal column counts")
            rows.extend(o.rows)
        return MatrixFq(self.field, tuple(rows), self.ncols)

    def rank(self) -> int:
        return rref(self)[1]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def vec_add(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Vector:
    if field.m == 1:
        p = field.p
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_scale(field: FieldSpec, c: int, v: Sequence[int]) -> Vector:
    if field.m == 1:
        p = field.p
        return tuple(c * a % p for a in v)
    return tuple(field.mul(c, a) for a in v)


def vec_mat(field: FieldSpec, v: Sequence[int], M: MatrixFq) -> Vector:
    """Row vector times matrix."""
    if len(v) != M.nrows:
        raise ParameterError(f"vector of length {len(v)} against {M.nrows} rows")
    acc = [0] * M.ncols
    if field.m == 1:
        p = field.p
        for c, row in zip(v, M.rows):
            if c:
                for j, a in enumerate(row):
                    acc[j] += c * a
        return tuple(a % p for a in acc)
    for c, row in zip(v, M.rows):
        if c:
            for j, a in enumerate(row):
                acc[j] = field.add(acc[j], field.mul(c, a))
    return tuple(acc)


def _rref_rows(field: FieldSpec, rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan elimination; returns (all rows in RREF order, pivot columns)."""
    R = [list(r) for r in rows]
    nrows = len(R)
    pivots: list[int] = []
    prime = field.m == 1
    p = field.p
    top = 0
    for col in range(ncols):
        if top == nrows:
            break
        piv = next((i for i in range(top, nrows) if R[i][col]), None)
        if piv is None:
            continue
        R[top], R[piv] = R[piv], R[top]
        row = R[top]
        lead = row[col]
        if lead != 1:
            inv = field.inv(lead)
            row = R[top] = [a * inv % p for a in row] if prime else [field.mul(a, inv) for a in row]
        for i in range(nrows):
            if i != top:
                c = R[i][col]
                if c:
                    if prime:
                        R[i] = [(a - c * b) % p for a, b in zip(R[i], row)]
                    else:
                        R[i] = [field.sub(a, field.mul(c, b)) for a, b in zip(R[i], row)]
        pivots.append(col)
        top += 1
    return R, pivots


def rref(M: MatrixFq) -> tuple[MatrixFq, int]:
    """Reduced row echelon form of ``M`` (same shape, zero rows last) and its rank."""
    R, pivots = _rref_rows(M.field, M.rows, M.ncols)
    return MatrixFq(M.field, tuple(map(tuple, R)), M.ncols), len(pivots)


def rank_of(field: FieldSpec, vectors: Iterable[Sequence[int]], n: int) -> int:
    return len(_rref_rows(field, vectors, n)[1])


def solve(A: MatrixFq, b: Sequence[int]) -> Vector | None:
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    f = A.field
    if len(b) != A.nrows:
        raise ParameterError("right-hand side length differs from row count")
    aug = [list(r) + [bi] for r, bi in zip(A.rows, b)]
    R, pivots = _rref_rows(f, aug, A.ncols + 1)
    if pivots and pivots[-1] == A.ncols:
        return None
    x = [0] * A.ncols
    for i, col in enumerate(pivots):
        x[col] = R[i][-1]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n given by its RREF basis (``dim`` x ``n``, no zero rows)."""

    field: FieldSpec
    n: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, a in enumerate(r) if a) for r in self.basis)

    def matrix(self) -> MatrixFq:
        return MatrixFq(self.field, self.basis, self.n)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v + self``: zero in every pivot column."""
        f = self.field
        v = list(v)
        for piv, row in zip(self.pivots, self.basis):
            c = v[piv]
            if c:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def __contains__(self, v: Sequence[int]) -> bool:
        return span_contains(self, v)

    def vectors(self, nonzero: bool = False) -> Iterator[Vector]:
        f = self.field
        for coeffs in itertools.product(range(f.q), repeat=self.dim):
            if nonzero and not any(coeffs):
                continue
            acc = (0,) * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    acc = vec_add(f, acc, vec_scale(f, c, row))
            yield acc

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, basis={[list(r) for r in self.basis]})"


def subspace_from_rows(M: MatrixFq) -> Subspace:
    R, pivots = _rref_rows(M.field, M.rows, M.ncols)
    return Subspace(M.field, M.ncols, tuple(tuple(r) for r in R[: len(pivots)]))


def span(field: FieldSpec, vectors: Iterable[Sequence[int]], n: int) -> Subspace:
    return subspace_from_rows(MatrixFq.from_rows(field, vectors, n))


def _check_pair(U: Subspace, V: Subspace) -> None:
    if U.field != V.field:
        raise FieldMismatchError(f"{U.field!r} vs {V.field!r}")
    if U.n != V.n:
        raise ParameterError(f"ambient dimensions differ: {U.n} vs {V.n}")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_pair(U, V)
    return span(U.field, U.basis + V.basis, U.n)


def intersection_dim(U: Subspace, V: Subspace) -> int:
    _check_pair(U, V)
    return U.dim + V.dim - rank_of(U.field, U.basis + V.basis, U.n)


def intersection(U: Subspace, V: Subspace) -> Subspace:
    """Explicit basis of U ∩ V by the Zassenhaus method; diagnostics only."""
    _check_pair(U, V)
    n = U.n
    rows = [r + r for r in U.basis] + [r + (0,) * n for r in V.basis]
    R, pivots = _rref_rows(U.field, rows, 2 * n)
    inter = [r[n:] for r, piv in zip(R, pivots) if piv >= n]
    return span(U.field, inter, n)


def subspace_distance(U: Subspace, V: Subspace) -> int:
    """d_S(U, V) = dim(U + V) - dim(U ∩ V)."""
    _check_pair(U, V)
    s = rank_of(U.field, U.basis + V.basis, U.n)
    return s - (U.dim + V.dim - s)


def span_contains(U: Subspace, v: Sequence[int]) -> bool:
    if len(v) != U.n:
        raise ParameterError(f"vector of length {len(v)} in ambient dimension {U.n}")
    return not any(U.reduce(v))


def random_matrix(rows: int, cols: int, field: FieldSpec, rng: random.Random) -> MatrixFq:
    q = field.q
    return MatrixFq(field, tuple(tuple(rng.randrange(q) for _ in range(cols)) for _ in range(rows)), cols)


def random_full_rank(rows: int, cols: int, field: FieldSpec, rng: random.Random) -> MatrixFq:
    """Uniform among ``rows`` x ``cols`` matrices of rank ``rows`` (rejection sampling)."""
    if rows > cols:
        raise ParameterError(f"a {rows}x{cols} matrix cannot have rank {rows}")
    while True:
        M = random_matrix(rows, cols, field, rng)
        if rank_of(field, M.rows, cols) == rows:
            return M


def random_vector_outside(U: Subspace, rng: random.Random) -> Vector:
    """Uniform over F_q^n minus U."""
    if U.dim == U.n:
        raise ParameterError("the subspace is the whole space")
    q = U.field.q
    while True:
        v = tuple(rng.randrange(q) for _ in range(U.n))
        if not span_contains(U, v):
            return v


class Echelon:
    """Incrementally grown echelon basis for fast independence checks."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FieldSpec, rows: Sequence[tuple[int, Vector]] = ()):
        self.field = field
        self.rows = list(rows)  # (pivot, row with 1 at pivot)

    def reduce(self, v: Sequence[int]) -> list[int]:
        f = self.field
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return v

    def extended(self, v: Sequence[int]) -> "Echelon | None":
        """A copy with ``v`` added, or None when ``v`` is already in the span."""
        r = self.reduce(v)
        piv = next((j for j, a in enumerate(r) if a), None)
        if piv is None:
            return None
        inv = self.field.inv(r[piv])
        r = tuple(self.field.mul(a, inv) for a in r)
        return Echelon(self.field, self.rows + [(piv, r)])

    def __len__(self) -> int:
        return len(self.rows)
