from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from subspace_vault.errors import DecodingFailure, ParameterError
from subspace_vault.field import FieldSpec, Poly
from subspace_vault.rs import RSInstance, interpolate, rs_decode, rs_decode_oracle, rs_encode

F7, F13 = FieldSpec(7), FieldSpec(13)


def _all_polys(field: FieldSpec, ell: int):
    for coeffs in itertools.product(range(field.q), repeat=ell):
        yield Poly(field, coeffs)


def _brute_decode(field, pairs, ell):
    """Scan every polynomial of degree < ell."""
    z = len(pairs)
    hits = [f for f in _all_polys(field, ell) if 2 * sum(f(g) == y for g, y in pairs) >= z + ell]
    return hits[0] if len(hits) == 1 else None


def test_encode_examples():
    inst = RSInstance(F7, 2, (1, 2, 3, 4, 5))
    assert rs_encode(Poly(F7), inst) == (0,) * 5
    assert rs_encode(Poly(F7, (3, 2)), inst) == (5, 0, 2, 4, 6)
    with pytest.raises(ParameterError):
        rs_encode(Poly(F7, (1, 1, 1)), inst)


def test_instance_validation():
    with pytest.raises(ParameterError):
        RSInstance(F7, 2, (1, 1, 2))
    with pytest.raises(ParameterError):
        RSInstance(F7, 2, (0, 1, 2))
    with pytest.raises(ParameterError):
        RSInstance(F7, 3, (1, 2))


def test_minimum_distance_exhaustive_q5():
    f5 = FieldSpec(5)
    inst = RSInstance(f5, 2, (1, 2, 3, 4))
    words = [rs_encode(f, inst) for f in _all_polys(f5, 2)]
    dmin = min(sum(a != b for a, b in zip(u, v)) for u, v in itertools.combinations(words, 2))
    assert dmin == inst.min_distance == 3


def test_decode_examples():
    f = Poly(F7, (3, 2))
    pts = (1, 2, 3, 4, 5)
    clean = list(zip(pts, rs_encode(f, RSInstance(F7, 2, pts))))
    assert rs_decode(clean, 2, F7) == f
    one = clean[:]
    one[2] = (3, 1)
    assert rs_decode(one, 2, F7) == f
    two = one[:]
    two[0] = (1, 6)
    assert _brute_decode(F7, two, 2) is None
    with pytest.raises(DecodingFailure):
        rs_decode(two, 2, F7)
    with pytest.raises(ParameterError):
        rs_decode([(1, 2), (1, 3), (2, 0)], 2, F7)


def test_decode_all_correctable_patterns_q7():
    pts = (1, 2, 3, 4, 5)
    inst = RSInstance(F7, 2, pts)
    for f in _all_polys(F7, 2):
        word = rs_encode(f, inst)
        for pos in [()] + [(i,) for i in range(5)]:
            for delta in range(1, 7) if pos else [0]:
                y = list(word)
                for i in pos:
                    y[i] = (y[i] + delta) % 7
                assert rs_decode(list(zip(pts, y)), 2, F7) == f


def test_oracle_trivial_cases():
    pairs = [(1, 4), (5, 2)]
    assert rs_decode_oracle(pairs, 2, F7) == interpolate(F7, pairs)
    assert rs_decode_oracle([(g, 3) for g in range(1, 6)], 2, F7) == Poly(F7, (3,))


def test_decode_matches_oracle_f13():
    rng = random.Random(13)
    for _ in range(1000):
        z = rng.randrange(3, 10)
        ell = rng.randrange(1, z + 1)
        pts = rng.sample(range(13), z)
        f = Poly(F13, tuple(rng.randrange(13) for _ in range(ell)))
        ys = [f(g) for g in pts]
        for i in rng.sample(range(z), rng.randrange(0, z - ell + 2)):
            ys[i] = rng.randrange(13)
        pairs = list(zip(pts, ys))
        try:
            got = rs_decode(pairs, ell, F13)
        except DecodingFailure:
            got = None
        try:
            want = rs_decode_oracle(pairs, ell, F13)
        except DecodingFailure:
            want = None
        assert got == want, pairs


@settings(max_examples=200)
@given(
    coeffs=st.lists(st.integers(0, 6), min_size=1, max_size=3),
    errors=st.sets(st.integers(0, 5), max_size=1),
    shift=st.integers(1, 6),
)
def test_roundtrip_within_radius(coeffs, errors, shift):
    ell = 3
    pts = (1, 2, 3, 4, 5, 6)
    f = Poly(F7, tuple(coeffs))
    ys = list(rs_encode(f, RSInstance(F7, ell, pts)))
    for i in errors:
        ys[i] = (ys[i] + shift) % 7
    assert rs_decode(list(zip(pts, ys)), ell, F7) == f


def test_decode_accepts_zero_evaluation_point():
    f = Poly(F13, (4, 9))
    pairs = [(g, f(g)) for g in (0, 3, 8, 11)]
    pairs[1] = (3, 0)
    assert rs_decode(pairs, 2, F13) == f
