"""Labelled random streams derived from one master seed.

Each consumer (key sampling, chaff, shuffling, attacks) draws from its own
stream, so adding a consumer never shifts the numbers another one sees.
"""

from __future__ import annotations

import hashlib
import random

MASK64 = (1 << 64) - 1


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed & MASK64}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def stream(seed: int, label: str) -> random.Random:
    return random.Random(derive_seed(seed, label))


def as_seed(seed: int | random.Random) -> int:
    """Accept a master seed or a caller-owned generator (consumed once)."""
    if isinstance(seed, random.Random):
        return seed.getrandbits(64)
    return int(seed) & MASK64
