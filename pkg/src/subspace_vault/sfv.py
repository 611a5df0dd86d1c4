"""Subspace fuzzy vault over a spread code.

A secret codeword ``K`` of dimension k in F_q^n is hidden by features
``x in F_q^k``: each authentic point is ``(x, x @ kappa)`` for a random basis
``kappa`` of ``K`` that is thrown away after locking.  Chaff points pair the
remaining first coordinates with second coordinates outside ``K``.  A witness
``W`` selects points, their second coordinates span ``W'``, and decoding
``W'`` in the spread code yields the key.

Modes:

``strict``
    ``|A| = k`` linearly independent features, chaff first coordinates are
    all of F_q^k minus A.  Unlock succeeds iff ``d(A, W) <= k - 1``.
``relaxed``
    ``t`` arbitrary distinct features, ``r - t`` chaff points whose first
    coordinates come from the complement of A (``complement``) or are drawn
    uniformly from F_q^k with repeats allowed (``ambient``).

Either mode can store SHA-256 digests of first coordinates instead of the
features themselves (``hashed=True``).

Chaff policy.  The exact equality between set difference and subspace
distance needs more than "every chaff y lies outside K": the chaff second
coordinates reachable by one witness must also be independent modulo K,
otherwise two chaff points can jointly add a vector of K to ``W'``.  With
``chaff="independent"`` locking enforces this (in strict mode for every set
of chaff points with independent first coordinates, in relaxed mode for all
chaff points at once).  ``"uniform"`` draws each chaff y uniformly outside K
with no joint condition, and ``"auto"`` picks ``independent`` whenever it is
feasible and cheap to verify.
"""

from __future__ import annotations

import hashlib
import logging
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ChaffSamplingError, DecodingFailure, ParameterError
from .field import FieldSpec
from .linalg import (
    Echelon,
    Subspace,
    Vector,
    random_full_rank,
    random_vector_outside,
    rank_of,
    span,
    subspace_distance,
    vec_mat,
)
from .rng import as_seed, stream
from .spread import Codeword, SpreadCode

log = logging.getLogger(__name__)

MODES = ("strict", "relaxed")
CHAFF_POLICIES = ("auto", "independent", "uniform")
CHAFF_DOMAINS = ("complement", "ambient")

# DFS steps allowed when verifying strict-mode chaff independence
INDEPENDENCE_CHECK_BUDGET = 1_000_000

@dataclass(frozen=True)
class SfvParams:
    code: SpreadCode
    mode: str
    t: int
    r: int
    hashed: bool = False
    chaff: str = "auto"
    chaff_domain: str = "complement"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.chaff not in CHAFF_POLICIES:
            raise ParameterError(f"chaff policy must be one of {CHAFF_POLICIES}")
        if self.chaff_domain not in CHAFF_DOMAINS:
            raise ParameterError(f"chaff domain must be one of {CHAFF_DOMAINS}")
        qk = self.code.q**self.k
        if self.mode == "strict":
            if self.t != self.k or self.r != qk or self.chaff_domain != "complement":
                raise ParameterError("strict mode fixes t = k, r = q^k and B = F_q^k minus A")
        else:
            if self.t < 1 or self.r < self.t:
                raise ParameterError(f"need 1 <= t <= r, got t={self.t}, r={self.r}")
            if self.chaff_domain == "complement" and self.r > qk:
                raise ParameterError(f"r={self.r} points cannot have distinct first coordinates in F_q^{self.k}")

    @classmethod
    def strict(cls, code: SpreadCode, hashed: bool = False, chaff: str = "auto") -> "SfvParams":
        return cls(code, "strict", code.k, code.q**code.k, hashed, chaff)

    @classmethod
    def relaxed(
        cls,
        code: SpreadCode,
        t: int,
        r: int,
        hashed: bool = False,
        chaff: str = "auto",
        chaff_domain: str = "complement",
    ) -> "SfvParams":
        return cls(code, "relaxed", t, r, hashed, chaff, chaff_domain)

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def field(self) -> FieldSpec:
        return self.code.field


@dataclass(frozen=True)
class SfvVault:
    """Public vault: parameters plus shuffled ``(first, y)`` points.

    ``first`` is a feature vector, or a hex SHA-256 digest in hashed vaults.
    ``params.chaff`` records the chaff policy actually applied.
    """

    params: SfvParams
    points: tuple[tuple, ...]

    def __post_init__(self):
        p = self.params
        if len(self.points) != p.r:
            raise ParameterError(f"vault holds {len(self.points)} points, r={p.r}")
        firsts = [x for x, _ in self.points]
        if p.chaff_domain == "complement" and len(set(firsts)) != len(firsts):
            raise ParameterError("vault first coordinates must be distinct")
        for x, y in self.points:
            if len(y) != p.n:
                raise ParameterError(f"second coordinate of length {len(y)}, expected n={p.n}")
            if not p.hashed and len(x) != p.k:
                raise ParameterError(f"first coordinate of length {len(x)}, expected k={p.k}")


@dataclass(frozen=True)
class SfvKey:
    codeword: Codeword

    @property
    def subspace(self) -> Subspace:
        return self.codeword.subspace


@dataclass(frozen=True)
class GroundTruth:
    """What only the locker knows.  The basis ``kappa`` is not kept."""

    features: tuple[Vector, ...]
    key: SfvKey
    authentic: frozenset[int]


@dataclass(frozen=True)
class WitnessSpan:
    subspace: Subspace
    witness_size: int
    matched: int

    @property
    def rank_deficit(self) -> int:
        """``|W| - dim W'``; zero in the regime the distance identity assumes."""
        return self.witness_size - self.subspace.dim


@dataclass(frozen=True)
class DistanceReport:
    set_difference: int
    subspace_distance: int
    t: int
    k: int
    x: int
    y: int

    @property
    def lower(self) -> int:
        return self.set_difference - (self.t - self.k) - self.x

    @property
    def upper(self) -> int:
        return self.set_difference - (self.t - self.k) + 2 * self.y

    @property
    def sandwiched(self) -> bool:
        return self.lower <= self.subspace_distance <= self.upper


def feature_hash(x: Sequence[int], field: FieldSpec) -> str:
    """SHA-256 of the fixed-width big-endian coefficient encoding of ``x``."""
    width = max(1, ((field.p - 1).bit_length() + 7) // 8)
    data = b"".join(c.to_bytes(width, "big") for a in x for c in field.coeffs(a))
    return hashlib.sha256(data).hexdigest()


def _as_vectors(field: FieldSpec, items: Iterable[Sequence[int]], length: int, what: str) -> list[Vector]:
    out = []
    for v in items:
        v = tuple(int(a) for a in v)
        if len(v) != length:
            raise ParameterError(f"{what} {v} has length {len(v)}, expected {length}")
        for a in v:
            field.check(a)
        out.append(v)
    return out


def _key_of(code: SpreadCode, key) -> SfvKey:
    if isinstance(key, SfvKey):
        cw = key.codeword
    elif isinstance(key, Codeword):
        cw = key
    elif isinstance(key, Subspace):
        if not code.is_codeword(key):
            raise ParameterError("key subspace is not a codeword")
        cw = code.containing_codeword(key.basis[0])
    else:
        raise ParameterError(f"cannot use {type(key).__name__} as a key")
    if not code.is_codeword(cw.subspace):
        raise ParameterError("key is not a codeword of the configured code")
    return SfvKey(cw)


def random_key(code: SpreadCode, seed: int | random.Random) -> SfvKey:
    """Uniform codeword: the span of a uniform nonzero vector's codeword."""
    rng = stream(as_seed(seed), "key")
    q, n = code.q, code.n
    while True:
        v = tuple(rng.randrange(q) for _ in range(n))
        if any(v):
            return SfvKey(code.containing_codeword(v))


# -- chaff sampling -----------------------------------------------------------


def _independence_work(n_points: int, k: int) -> int:
    return n_points * sum(math.comb(n_points, j) for j in range(k))


def _compatible(field: FieldSpec, x: Vector, res: Vector, assigned: list[tuple[Vector, Vector]], k: int) -> bool:
    """Every independent set of first coordinates through ``x`` keeps independent residues."""

    def dfs(start: int, ex: Echelon, er: Echelon) -> bool:
        if len(ex) == k:
            return True
        for j in range(start, len(assigned)):
            xj, rj = assigned[j]
            ex2 = ex.extended(xj)
            if ex2 is None:
                continue
            er2 = er.extended(rj)
            if er2 is None or not dfs(j + 1, ex2, er2):
                return False
        return True

    ex = Echelon(field).extended(x)
    er = Echelon(field).extended(res)
    return dfs(0, ex, er)


def _chaff_strict_independent(
    key: Subspace, xs: list[Vector], k: int, rng: random.Random, restarts: int = 200, tries: int = 64
) -> dict[Vector, Vector]:
    field = key.field
    nonzero = [x for x in xs if any(x)]
    for _ in range(restarts):
        order = nonzero[:]
        rng.shuffle(order)
        assigned: list[tuple[Vector, Vector]] = []
        ys: dict[Vector, Vector] = {}
        for x in order:
            for _ in range(tries):
                y = random_vector_outside(key, rng)
                res = key.reduce(y)
                if _compatible(field, x, res, assigned, k):
                    assigned.append((x, res))
                    ys[x] = y
                    break
            else:
                break
        else:
            for x in xs:
                if not any(x):
                    ys[x] = random_vector_outside(key, rng)
            return ys
    raise ChaffSamplingError("could not place chaff in general position; use chaff='uniform'")


def _chaff_all_independent(key: Subspace, count: int, rng: random.Random) -> list[Vector]:
    field = key.field
    ech = Echelon(field, list(zip(key.pivots, key.basis)))
    ys = []
    while len(ys) < count:
        y = tuple(rng.randrange(field.q) for _ in range(key.n))
        grown = ech.extended(y)
        if grown is not None:
            ech = grown
            ys.append(y)
    return ys


def _resolve_policy(params: SfvParams, n_chaff: int) -> str:
    policy = params.chaff
    if params.mode == "strict":
        feasible = params.n > params.k
        cheap = _independence_work(n_chaff, params.k) <= INDEPENDENCE_CHECK_BUDGET
        ok, why = feasible and cheap, "the independence check is too expensive at these parameters"
    else:
        ok = n_chaff <= params.n - params.k
        why = f"{n_chaff} chaff points cannot be independent modulo a {params.k}-dim key in F_q^{params.n}"
    if policy == "auto":
        return "independent" if ok else "uniform"
    if policy == "independent" and not ok:
        raise ChaffSamplingError(why)
    return policy


# -- lock / unlock ------------------------------------------------------------


def _lock(key, features: Iterable[Sequence[int]], params: SfvParams, seed: int | random.Random) -> tuple[SfvVault, GroundTruth]:
    code, field, k, n = params.code, params.field, params.k, params.n
    skey = _key_of(code, key)
    K = skey.subspace
    A = _as_vectors(field, features, k, "feature")
    if len(set(A)) != len(A):
        raise ParameterError("duplicate feature")
    if len(A) != params.t:
        raise ParameterError(f"got {len(A)} features, params expect t={params.t}")
    if params.mode == "strict" and rank_of(field, A, k) != k:
        raise ParameterError("strict mode needs k linearly independent features")

    master = as_seed(seed)
    basis_rng, chaff_rng, shuffle_rng = (stream(master, s) for s in ("basis", "chaff", "shuffle"))

    kappa = random_full_rank(k, k, field, basis_rng) @ K.matrix()
    points: list[tuple[Vector, Vector]] = [(x, vec_mat(field, x, kappa)) for x in A]
    del kappa

    n_chaff = params.r - params.t
    if n_chaff and n == k:
        raise ParameterError("with n = k every vector lies in the key; chaff is impossible")
    taken = set(A)
    if params.mode == "strict":
        xs = [x for x in field.vectors(k) if x not in taken]
    elif params.chaff_domain == "complement":
        free = [x for x in field.vectors(k) if x not in taken]
        xs = sorted(chaff_rng.sample(free, n_chaff))
    else:
        xs = [tuple(chaff_rng.randrange(field.q) for _ in range(k)) for _ in range(n_chaff)]

    policy = _resolve_policy(params, n_chaff)
    if policy == "uniform":
        ys = [random_vector_outside(K, chaff_rng) for _ in xs]
    elif params.mode == "strict":
        placed = _chaff_strict_independent(K, xs, k, chaff_rng)
        ys = [placed[x] for x in xs]
    else:
        ys = _chaff_all_independent(K, n_chaff, chaff_rng)
    points.extend(zip(xs, ys))

    order = list(range(len(points)))
    shuffle_rng.shuffle(order)
    if params.hashed:
        points = [(feature_hash(x, field), y) for x, y in points]
    shuffled = tuple(points[i] for i in order)
    authentic = frozenset(pos for pos, i in enumerate(order) if i < len(A))

    applied = SfvParams(code, params.mode, params.t, params.r, params.hashed, policy, params.chaff_domain)
    return SfvVault(applied, shuffled), GroundTruth(tuple(A), skey, authentic)


def sfv_lock(key, features: Iterable[Sequence[int]], params: SfvParams, seed: int | random.Random) -> SfvVault:
    """Hide ``key`` (a codeword) under ``features``; the sampled basis is discarded."""
    return _lock(key, features, params, seed)[0]


def _witness(params: SfvParams, W: Iterable[Sequence[int]]) -> list[Vector]:
    out: list[Vector] = []
    for w in _as_vectors(params.field, W, params.k, "witness feature"):
        if w not in out:
            out.append(w)
    return out


def build_witness_subspace(vault: SfvVault, W: Iterable[Sequence[int]]) -> WitnessSpan:
    params = vault.params
    Wl = _witness(params, W)
    keys = {feature_hash(w, params.field) for w in Wl} if params.hashed else set(Wl)
    ys = [y for x, y in vault.points if x in keys]
    if not ys:
        raise DecodingFailure("no vault point matches the witness")
    return WitnessSpan(span(params.field, ys, params.n), len(Wl), len(ys))


def sfv_unlock(vault: SfvVault, W: Iterable[Sequence[int]], algorithm: str = "vote") -> SfvKey:
    params = vault.params
    Wl = _witness(params, W)
    if params.mode == "strict":
        if len(Wl) > params.k:
            raise ParameterError(f"strict witnesses have at most k={params.k} features")
        if rank_of(params.field, Wl, params.k) != len(Wl):
            raise ParameterError("strict witnesses must be linearly independent")
    ws = build_witness_subspace(vault, Wl)
    if ws.rank_deficit:
        log.info("witness span has dimension %d for %d features", ws.subspace.dim, ws.witness_size)
    return SfvKey(params.code.decode(ws.subspace, algorithm))


def set_difference(A: Iterable[Sequence[int]], W: Iterable[Sequence[int]]) -> int:
    return len({tuple(a) for a in A} ^ {tuple(w) for w in W})


def sfv_distance_report(vault: SfvVault, truth: GroundTruth, W: Iterable[Sequence[int]]) -> DistanceReport:
    """Set difference, subspace distance and the slack terms of the relaxed bounds.

    ``y = |A ∩ W| - rank(A ∩ W)`` and ``x = |W| - dim W'``.
    """
    params = vault.params
    Wl = _witness(params, W)
    A = set(truth.features)
    common = [w for w in Wl if w in A]
    y = len(common) - rank_of(params.field, common, params.k)
    try:
        Wp = build_witness_subspace(vault, Wl).subspace
    except DecodingFailure:
        Wp = Subspace(params.field, params.n, ())
    return DistanceReport(
        set_difference=set_difference(A, Wl),
        subspace_distance=subspace_distance(Wp, truth.key.subspace),
        t=params.t,
        k=params.k,
        x=len(Wl) - Wp.dim,
        y=y,
    )
