from __future__ import annotations

import itertools
from collections import Counter

import pytest

from subspace_vault.errors import DecodingFailure, ParameterError
from subspace_vault.field import FieldSpec, Poly
from subspace_vault.pfv import PfvVault, pfv_lock, pfv_unlock
from subspace_vault.vaultfile import vault_serialize

F7, F13 = FieldSpec(7), FieldSpec(13)


def _recovers(vault, W, key) -> bool:
    try:
        return pfv_unlock(vault, W) == key
    except DecodingFailure:
        return False


def test_lock_example_f7():
    key = Poly(F7, (3, 2))
    vault = pfv_lock(key, [1, 2, 3], r=7, ell=2, seed=1)
    assert len(vault.points) == 7 and vault.simplified
    auth = [(x, y) for x, y in vault.points if x in (1, 2, 3)]
    chaff = [(x, y) for x, y in vault.points if x not in (1, 2, 3)]
    assert all(key(x) == y for x, y in auth)
    assert len(chaff) == 4 and all(key(x) != y for x, y in chaff)


def test_lock_rejections():
    key = Poly(F7, (3, 2))
    with pytest.raises(ParameterError):
        pfv_lock(key, [1, 2], r=7, ell=2, seed=0)
    with pytest.raises(ParameterError):
        pfv_lock(key, [1, 1, 2], r=7, ell=2, seed=0)
    with pytest.raises(ParameterError):
        pfv_lock(key, [1, 2, 3], r=8, ell=2, seed=0)
    with pytest.raises(ParameterError):
        pfv_lock(Poly(F7, (1, 1, 1)), [1, 2, 3], r=7, ell=2, seed=0)
    with pytest.raises(ParameterError):
        PfvVault(F7, 2, 3, 4, ((1, 1), (1, 2), (2, 0), (3, 3)))


def test_same_seed_same_bytes():
    key = Poly(F13, (4, 9))
    a = pfv_lock(key, [1, 5, 7, 9], 13, 2, seed=99)
    b = pfv_lock(key, [1, 5, 7, 9], 13, 2, seed=99)
    assert vault_serialize(a) == vault_serialize(b)
    assert vault_serialize(a) != vault_serialize(pfv_lock(key, [1, 5, 7, 9], 13, 2, seed=100))


def test_only_exact_witness_opens_small_vault():
    key = Poly(F7, (3, 2))
    A = {1, 2, 3}
    vault = pfv_lock(key, A, 7, 2, seed=4)
    for W in itertools.combinations(range(7), 3):
        d = len(A ^ set(W))
        assert d % 2 == 0
        assert _recovers(vault, W, key) == (d <= 1)


def test_one_substitution_at_q13():
    key = Poly(F13, (4, 9))
    vault = pfv_lock(key, [1, 2, 3, 4], 13, 2, seed=5)
    assert pfv_unlock(vault, [1, 2, 3, 10]) == key
    assert not _recovers(vault, [1, 2, 11, 10], key)


def test_witness_size_enforced():
    vault = pfv_lock(Poly(F13, (4, 9)), [1, 2, 3, 4], 13, 2, seed=5)
    with pytest.raises(ParameterError):
        pfv_unlock(vault, [1, 2, 3])
    assert pfv_unlock(vault, [1, 2, 3], enforce_size=False) == Poly(F13, (4, 9))


def test_general_mode_r_below_q():
    key = Poly(F13, (2, 0, 5))
    A = [1, 2, 3, 4, 5, 6]
    vault = pfv_lock(key, A, 9, 3, seed=8)
    assert not vault.simplified
    assert pfv_unlock(vault, A) == key


def test_authentic_positions_are_shuffled():
    key = Poly(F13, (4, 9))
    A = [1, 2, 3, 4]
    pos = Counter()
    for seed in range(2000):
        vault = pfv_lock(key, A, 13, 2, seed=seed)
        pos.update(i for i, (x, _) in enumerate(vault.points) if x in A)
    # each of 13 slots expects 2000 * 4 / 13 hits
    expected = 2000 * 4 / 13
    sigma = (2000 * (4 / 13) * (9 / 13)) ** 0.5
    assert all(abs(pos[i] - expected) < 5 * sigma for i in range(13))
