"""Independent reference implementations used by the tests.

Nothing here imports the package: ranks are computed with a plain
Gaussian elimination over a prime field and counts by enumeration.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict


def rank_mod_p(rows, p: int) -> int:
    M = [list(r) for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], p - 2, p)
        M[rank] = [a * inv % p for a in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col] % p:
                c = M[i][col]
                M[i] = [(a - c * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def rank_histogram_literal(p: int, delta: int, n: int) -> Counter:
    """Rank of every delta x n matrix over F_p, one by one."""
    hist: Counter = Counter()
    vecs = list(itertools.product(range(p), repeat=n))
    for rows in itertools.product(vecs, repeat=delta):
        hist[rank_mod_p(rows, p)] += 1
    return hist


def _canonical_span(rows, p: int, n: int) -> tuple:
    """Sorted tuple of all vectors in the span: a canonical key without RREF."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(n)))
    return tuple(sorted(out))


def rank_histogram_grouped(p: int, delta: int, n: int) -> Counter:
    """Same counts, with matrices grouped by the row space of their prefix.

    Every one of the p^(delta*n) matrices is still accounted for: each state
    carries the number of prefixes reaching it and each step tries all p^n
    next rows.
    """
    vecs = list(itertools.product(range(p), repeat=n))
    zero = (tuple([0] * n),)
    states: dict[tuple, int] = {zero: 1}
    gens: dict[tuple, list] = {zero: []}
    for _ in range(delta):
        nxt: dict[tuple, int] = defaultdict(int)
        for S, count in states.items():
            members = set(S)
            for v in vecs:
                if v in members:
                    nxt[S] += count
                else:
                    rows = gens[S] + [v]
                    T = _canonical_span(rows, p, n)
                    gens.setdefault(T, rows)
                    nxt[T] += count
        states = nxt
    hist: Counter = Counter()
    for S, count in states.items():
        d = 0
        while p**d < len(S):
            d += 1
        hist[d] += count
    return hist


def rank_histogram(p: int, delta: int, n: int, literal_limit: int = 1 << 16) -> Counter:
    if p ** (delta * n) <= literal_limit:
        return rank_histogram_literal(p, delta, n)
    return rank_histogram_grouped(p, delta, n)
