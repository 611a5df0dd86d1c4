"""Exact arithmetic in F_q, q = p^m, and univariate polynomials over it.

Elements are stored as plain ints in ``range(q)``: the coefficient vector
``(c_0, ..., c_{m-1})`` of an element of F_p[x]/(f) is packed as
``sum(c_i * p**i)``.  For prime fields this is just the residue.  Matrices
and vectors throughout the package hold these ints; :class:`FieldElem` is a
thin wrapper for scalar work with operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatchError, ParameterError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if impossible."""
    if q < 2:
        raise ParameterError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ParameterError(f"q={q} is not a prime power")
    return p, m


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        a, c = divmod(a, p)
        out.append(c)
    return out


def _pack(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


@lru_cache(maxsize=1 << 16)
def _ext_add(p: int, m: int, a: int, b: int) -> int:
    da, db = _digits(a, p, m), _digits(b, p, m)
    return _pack([(x + y) % p for x, y in zip(da, db)], p)


@lru_cache(maxsize=1 << 16)
def _ext_neg(p: int, m: int, a: int) -> int:
    return _pack([(-x) % p for x in _digits(a, p, m)], p)


@lru_cache(maxsize=1 << 18)
def _ext_mul(p: int, modulus: tuple[int, ...], a: int, b: int) -> int:
    m = len(modulus) - 1
    da, db = _digits(a, p, m), _digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic: x^m = -sum(modulus[i] x^i)
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for i in range(m):
                prod[deg - m + i] = (prod[deg - m + i] - c * modulus[i]) % p
    return _pack(prod[:m], p)


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_{p^m} = F_p[x]/(modulus).

    ``modulus`` lists the coefficients of the monic reduction polynomial from
    low to high degree (length ``m + 1``).  It is ``None`` for prime fields;
    for ``m > 1`` it defaults to the first irreducible monic polynomial of
    degree ``m`` when the lower coefficients are read as a base-p number.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ParameterError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ParameterError("extension degree must be >= 1")
        if self.m == 1:
            if self.modulus is not None:
                if len(self.modulus) != 2 or self.modulus[1] % self.p != 1:
                    raise ParameterError("prime field modulus must be monic of degree 1")
                object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            object.__setattr__(self, "modulus", first_irreducible(FieldSpec(self.p), self.m).coeffs)
            return
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ParameterError(f"reduction polynomial must be monic of degree {self.m}")
        if not is_irreducible(Poly(FieldSpec(self.p), mod)):
            raise ParameterError(f"reduction polynomial {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        p, m = prime_power(q)
        return cls(p, m, tuple(modulus) if modulus is not None else None)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # -- raw int arithmetic ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return _ext_add(self.p, self.m, a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return _ext_neg(self.p, self.m, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return _ext_mul(self.p, self.modulus, a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- conversions -------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector over F_p, low to high, length ``m``."""
        return tuple(_digits(a, self.p, self.m))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ParameterError(f"too many coefficients for {self!r}")
        return _pack([int(c) % self.p for c in coeffs], self.p)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ParameterError(f"{a!r} is not an element of {self!r}")
        return a

    def elements(self) -> range:
        return range(self.q)

    def vectors(self, length: int) -> Iterator[tuple[int, ...]]:
        """All of F_q^length in lexicographic order."""
        return itertools.product(range(self.q), repeat=length)

    def __call__(self, value: int | Sequence[int]) -> "FieldElem":
        if isinstance(value, int):
            return FieldElem(self, value % self.q if self.m == 1 else self.check(value))
        return FieldElem(self, self.from_coeffs(value))


@dataclass(frozen=True)
class FieldElem:
    """An element of ``field``; ``value`` is the packed coefficient int."""

    field: FieldSpec
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElem(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __repr__(self) -> str:
        return f"{self.value}" if self.field.m == 1 else f"{list(self.coeffs)}"


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    try:
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)
    except KeyError:
        raise ParameterError(f"unknown operation {op!r}") from None


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Polynomial over ``field`` with coefficients low to high, no trailing zeros."""

    field: FieldSpec
    coeffs: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        f = self.field
        if f.m == 1:
            coeffs = (int(c) % f.p for c in self.coeffs)
        else:
            coeffs = (f.check(int(c)) for c in self.coeffs)
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> "Poly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _same(self, other: "Poly") -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(f, tuple(f.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)))

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        f = self.field
        if isinstance(other, int):
            return Poly(f, tuple(f.mul(c, other) for c in self.coeffs))
        self._same(other)
        if not self.coeffs or not other.coeffs:
            return Poly(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dd = other.degree
        inv_lead = f.inv(other.lead)
        quot = [0] * max(len(rem) - dd, 0)
        for deg in range(len(rem) - 1, dd - 1, -1):
            c = rem[deg]
            if c:
                factor = f.mul(c, inv_lead)
                quot[deg - dd] = factor
                for i, b in enumerate(other.coeffs):
                    rem[deg - dd + i] = f.sub(rem[deg - dd + i], f.mul(factor, b))
        return Poly(f, quot), Poly(f, rem[:dd] if dd > 0 else ())

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.field.inv(self.lead)

    def __call__(self, x: int | FieldElem) -> int:
        """Horner evaluation; returns the packed element int."""
        f = self.field
        if isinstance(x, FieldElem):
            if x.field != f:
                raise FieldMismatchError(f"{x.field!r} vs {f!r}")
            x = x.value
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly(self.field, (1,)) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def padded(self, length: int) -> tuple[int, ...]:
        if len(self.coeffs) > length:
            raise ParameterError(f"degree {self.degree} does not fit in {length} coefficients")
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                cs = repr(FieldElem(self.field, c))
                terms.append(cs if i == 0 else (f"{cs}*x^{i}" if c != 1 else f"x^{i}"))
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly(f, (1,)), Poly(f)
    t0, t1 = Poly(f), Poly(f, (1,))
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = f.inv(r0.lead)
    return r0 * inv, s0 * inv, t0 * inv


def poly_eval(f: Poly, x: FieldElem) -> FieldElem:
    if x.field != f.field:
        raise FieldMismatchError(f"{x.field!r} vs {f.field!r}")
    return FieldElem(f.field, f(x.value))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over the coefficient field."""
    if not f.is_monic():
        raise ParameterError("irreducibility test needs a monic polynomial")
    d = f.degree
    if d < 1:
        raise ParameterError("irreducibility test needs degree >= 1")
    if d == 1:
        return True
    q = f.field.q
    x = Poly.x(f.field)
    for r in _prime_factors(d):
        h = x.powmod(q ** (d // r), f) - x
        if poly_gcd(f, h).degree > 0:
            return False
    return (x.powmod(q**d, f) - x % f).is_zero()


def first_irreducible(field: FieldSpec, degree: int) -> Poly:
    """First monic irreducible of ``degree``, lower coefficients read as a base-q number."""
    for code in range(field.q**degree):
        low = [0] * degree
        c = code
        for i in range(degree):
            c, low[i] = divmod(c, field.q)
        f = Poly(field, tuple(low) + (1,))
        if is_irreducible(f):
            return f
    raise AssertionError("every degree has an irreducible polynomial")
