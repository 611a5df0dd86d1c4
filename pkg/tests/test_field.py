from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from subspace_vault.errors import FieldMismatchError, ParameterError
from subspace_vault.field import (
    FieldSpec,
    Poly,
    field_arith,
    first_irreducible,
    is_irreducible,
    poly_eval,
    poly_gcd,
    poly_xgcd,
    prime_power,
)

SMALL_FIELDS = [FieldSpec(2), FieldSpec(3), FieldSpec(2, 2), FieldSpec(5), FieldSpec(7), FieldSpec(2, 3), FieldSpec(3, 2)]


# -- oracle: list polynomials over F_p ---------------------------------------


def _lmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _lmul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _oracle_mul(f: FieldSpec, a: int, b: int) -> int:
    if f.m == 1:
        return a * b % f.p
    prod = _lmod(_lmul(list(f.coeffs(a)), list(f.coeffs(b)), f.p), list(f.modulus), f.p)
    return f.from_coeffs(prod)


def _reducible_by_trial_division(coeffs: list[int], p: int) -> bool:
    d = len(coeffs) - 1
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _lmod(coeffs, list(low) + [1], p):
                return True
    return False


# -- tests --------------------------------------------------------------------


def test_spec_examples():
    f2, f7 = FieldSpec(2), FieldSpec(7)
    assert f2(1) + f2(1) == f2(0)
    assert f7(3) * f7(5) == f7(1)
    f4 = FieldSpec(2, 2, (1, 1, 1))
    x = f4((0, 1))
    assert (x * x).coeffs == (1, 1)


@pytest.mark.parametrize("f", SMALL_FIELDS, ids=repr)
def test_field_axioms_exhaustive(f: FieldSpec):
    els = list(f.elements())
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a) == _oracle_mul(f, a, b)
        assert f.add(f.sub(a, b), b) == a
        if b:
            assert f.mul(f.div(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)


def test_multiplication_table_f7():
    f = FieldSpec(7)
    for a, b in itertools.product(range(7), repeat=2):
        assert f.mul(a, b) == a * b % 7


@pytest.mark.parametrize("f", [FieldSpec(2, 8), FieldSpec(13), FieldSpec(5, 3), FieldSpec(251)], ids=repr)
def test_field_axioms_random(f: FieldSpec):
    rng = random.Random(7)
    for _ in range(10_000):
        a, b, c = (rng.randrange(f.q) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a in range(1, min(f.q, 400)):
        assert f.mul(a, _oracle_inv(f, a)) == 1


def _oracle_inv(f: FieldSpec, a: int) -> int:
    # a^(q-2) through the oracle multiplication
    r, e, base = 1, f.q - 2, a
    while e:
        if e & 1:
            r = _oracle_mul(f, r, base)
        base = _oracle_mul(f, base, base)
        e >>= 1
    return r


def test_division_errors():
    f = FieldSpec(5)
    with pytest.raises(ZeroDivisionError):
        f(3) / f(0)
    with pytest.raises(ZeroDivisionError):
        field_arith(f(1), f(0), "div")
    with pytest.raises(FieldMismatchError):
        field_arith(f(1), FieldSpec(7)(1), "add")
    with pytest.raises(ParameterError):
        field_arith(f(1), f(1), "pow")


def test_field_arith_ops():
    f = FieldSpec(7)
    assert field_arith(f(3), f(5), "add") == f(1)
    assert field_arith(f(3), f(5), "sub") == f(5)
    assert field_arith(f(3), f(5), "mul") == f(1)
    assert field_arith(f(1), f(3), "div") == f(5)


def test_fieldspec_validation():
    with pytest.raises(ParameterError):
        FieldSpec(4)
    with pytest.raises(ParameterError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(ParameterError):
        FieldSpec(2, 0)
    assert prime_power(81) == (3, 4)
    with pytest.raises(ParameterError):
        prime_power(12)
    assert FieldSpec.of_order(9) == FieldSpec(3, 2)


def test_default_modulus_is_first_irreducible():
    assert FieldSpec(2, 2).modulus == (1, 1, 1)
    assert FieldSpec(2, 3).modulus == (1, 1, 0, 1)
    assert FieldSpec(3, 2).modulus == (1, 0, 1)


def test_poly_eval_examples():
    f = FieldSpec(7)
    poly = Poly(f, (3, 2))
    assert poly_eval(Poly(f), f(4)) == f(0)
    assert poly_eval(poly, f(1)) == f(5)
    assert poly_eval(poly, f(2)) == f(0)
    with pytest.raises(FieldMismatchError):
        poly_eval(poly, FieldSpec(5)(1))


def test_poly_representation():
    f = FieldSpec(7)
    assert Poly(f, (1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly(f).degree == -1 and Poly(f).coeffs == ()
    assert Poly(f, (8, 9)).coeffs == (1, 2)


@given(
    a=st.lists(st.integers(0, 4), max_size=6),
    b=st.lists(st.integers(0, 4), min_size=1, max_size=5),
)
def test_poly_divmod_property(a, b):
    f = FieldSpec(5)
    A, B = Poly(f, tuple(a)), Poly(f, tuple(b))
    if B.is_zero():
        return
    qt, r = divmod(A, B)
    assert qt * B + r == A
    assert r.degree < B.degree


@given(a=st.lists(st.integers(0, 2), max_size=5), b=st.lists(st.integers(0, 2), max_size=5))
def test_xgcd_bezout(a, b):
    f = FieldSpec(3)
    A, B = Poly(f, tuple(a)), Poly(f, tuple(b))
    g, s, t = poly_xgcd(A, B)
    assert s * A + t * B == g
    if not (A.is_zero() and B.is_zero()):
        assert g == poly_gcd(A, B)
        assert (A % g).is_zero() and (B % g).is_zero()


def test_irreducible_examples():
    f2 = FieldSpec(2)
    assert is_irreducible(Poly(f2, (1, 1, 1)))
    assert not is_irreducible(Poly(f2, (1, 0, 1)))
    for q in (2, 3, 4, 5):
        assert is_irreducible(Poly.x(FieldSpec.of_order(q)))
    with pytest.raises(ParameterError):
        is_irreducible(Poly(FieldSpec(3), (1, 2)))


@pytest.mark.parametrize("p", [2, 3])
def test_irreducible_matches_trial_division(p: int):
    f = FieldSpec(p)
    for d in range(1, 5):
        for low in itertools.product(range(p), repeat=d):
            coeffs = list(low) + [1]
            assert is_irreducible(Poly(f, tuple(coeffs))) == (not _reducible_by_trial_division(coeffs, p)), coeffs


def test_irreducible_count_over_f4():
    # number of monic irreducibles of degree 2 over F_q is (q^2 - q)/2
    f4 = FieldSpec(2, 2)
    count = sum(is_irreducible(Poly(f4, (a, b, 1))) for a in range(4) for b in range(4))
    assert count == 6


def test_first_irreducible():
    assert first_irreducible(FieldSpec(2), 4).coeffs == (1, 1, 0, 0, 1)
    assert is_irreducible(first_irreducible(FieldSpec(2, 2), 3))


@settings(max_examples=50)
@given(st.integers(0, 255), st.integers(0, 255))
def test_gf256_against_oracle(a, b):
    f = FieldSpec(2, 8)
    assert f.mul(a, b) == _oracle_mul(f, a, b)


def test_element_coefficients_roundtrip():
    f = FieldSpec(3, 2)
    for a in f.elements():
        c = f.coeffs(a)
        assert len(c) == 2 and all(0 <= x < 3 for x in c)
        assert f.from_coeffs(c) == a
        assert f(list(c)).value == a
