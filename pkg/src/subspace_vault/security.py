"""Counting formulas, brute-force cost estimates and attack simulations.

Every formula is evaluated with Python ints and :class:`fractions.Fraction`;
floats only appear in the rendered report.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import ParameterError
from .linalg import rank_of, span, vec_add, vec_scale
from .rng import as_seed, stream
from .sfv import GroundTruth, SfvVault
from .spread import SpreadCode


def count_rank_matrices(q: int, k: int, delta: int, n: int) -> int:
    """Number of ``delta`` x ``n`` matrices over F_q of rank ``k``."""
    if k < 0 or k > min(delta, n):
        raise ParameterError(f"rank {k} impossible for a {delta}x{n} matrix")
    num = 1
    den = 1
    for i in range(k):
        num *= (q**n - q**i) * (q**delta - q**i)
        den *= q**k - q**i
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def rank_full_probability(q: int, k: int, t: int) -> Fraction:
    """Probability that ``t`` uniform vectors of F_q^k have rank ``k``."""
    if t < k:
        raise ParameterError(f"t={t} < k={k}: rank k is impossible")
    return Fraction(count_rank_matrices(q, k, t, k), q ** (k * t))


def expected_spanning_subsets(q: int, k: int, delta: int, n: int, r: int) -> Fraction:
    """Expected number of ``delta``-subsets of ``r`` random points of F_q^n spanning dimension ``k``."""
    if not r > delta >= k:
        raise ParameterError(f"need r > delta >= k, got r={r}, delta={delta}, k={k}")
    return Fraction(math.comb(r, delta) * count_rank_matrices(q, k, delta, n), q ** (delta * n))


def find_delta0(q: int, k: int, n: int, r: int, t: int) -> int | None:
    """Smallest ``delta`` in ``[k, t]`` whose expected spanning count drops below 1.

    ``r = t`` (no chaff) is allowed; deltas are then capped at ``r - 1``.
    """
    if not r >= t >= k:
        raise ParameterError(f"need r >= t >= k, got r={r}, t={t}, k={k}")
    for delta in range(k, min(t, r - 1) + 1):
        if expected_spanning_subsets(q, k, delta, n, r) < 1:
            return delta
    return None


def guess_ratio(r: int, t: int, delta: int) -> Fraction:
    """Average number of ``delta``-subsets drawn before all members are authentic."""
    return Fraction(math.comb(r, delta), math.comb(t, delta))


def guess_ratio_bound(r: int, t: int, delta: int) -> Fraction:
    return Fraction(11, 10) * Fraction(r, t) ** delta


def guess_bound_counterexamples(r_max: int = 40) -> list[tuple[int, int, int, float, float]]:
    """``(r, t, delta, ratio, bound)`` for ``r > t > 5`` where the 1.1 (r/t)^delta heuristic fails."""
    out = []
    for r in range(7, r_max + 1):
        for t in range(6, r):
            for delta in range(1, t + 1):
                ratio, bound = guess_ratio(r, t, delta), guess_ratio_bound(r, t, delta)
                if ratio >= bound:
                    out.append((r, t, delta, float(ratio), float(bound)))
    return out


def naive_rank_ops(q: int, k: int, n: int) -> Fraction:
    """Operation count for row-reducing a k x n matrix, halved over F_2."""
    ops = Fraction(n * (k * k - k))
    return ops / 2 if q == 2 else ops


@dataclass(frozen=True)
class BruteForceCost:
    delta0: int
    per_trial: Fraction
    cost: Fraction


def brute_force_cost(q: int, k: int, n: int, r: int, t: int) -> BruteForceCost:
    """Expected work ``C * (r/t)^delta0`` with ``C = 0.55 n (delta0^2 - delta0)`` (binary fields only)."""
    if q != 2:
        raise ParameterError("the cost bound counts binary row reductions; q must be 2")
    delta0 = find_delta0(q, k, n, r, t)
    if delta0 is None:
        raise ParameterError("no delta0 with expected spanning count below 1")
    C = Fraction(55, 100) * n * (delta0 * delta0 - delta0)
    return BruteForceCost(delta0, C, C * Fraction(r, t) ** delta0)


def spread_size(q: int, k: int, n: int) -> int | None:
    if n % k:
        return None
    return (q**n - 1) // (q**k - 1)


@dataclass
class SecurityReport:
    q: int
    k: int
    n: int
    t: int
    r: int
    key_space: int | None
    key_space_log2: float | None
    rank_full_probability: float
    delta0: int | None
    alpha_at_delta0: float | None
    guess_ratio: float | None
    guess_ratio_bound: float | None
    brute_force_cost: float | None
    per_trial_cost: float | None
    naive_rank_ops: float
    counts: dict[str, int] = dc_field(default_factory=dict)
    sweep: list[dict] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def security_report(q: int, k: int, n: int, r: int, t: int, sweep: bool = False) -> SecurityReport:
    size = spread_size(q, k, n)
    delta0 = find_delta0(q, k, n, r, t)
    alpha0 = gr = grb = cost = per = None
    if delta0 is not None:
        alpha0 = float(expected_spanning_subsets(q, k, delta0, n, r))
        gr, grb = float(guess_ratio(r, t, delta0)), float(guess_ratio_bound(r, t, delta0))
        if q == 2:
            bf = brute_force_cost(q, k, n, r, t)
            cost, per = float(bf.cost), float(bf.per_trial)
    report = SecurityReport(
        q=q,
        k=k,
        n=n,
        t=t,
        r=r,
        key_space=size,
        key_space_log2=math.log2(size) if size else None,
        rank_full_probability=float(rank_full_probability(q, k, t)),
        delta0=delta0,
        alpha_at_delta0=alpha0,
        guess_ratio=gr,
        guess_ratio_bound=grb,
        brute_force_cost=cost,
        per_trial_cost=per,
        naive_rank_ops=float(naive_rank_ops(q, k, n)),
    )
    report.counts[f"N_{q}({k},{k},{t})"] = count_rank_matrices(q, k, t, k)
    if delta0 is not None:
        report.counts[f"N_{q}({k},{delta0},{n})"] = count_rank_matrices(q, k, delta0, n)
    if sweep:
        for delta in range(k, min(t, r - 1) + 1):
            alpha = expected_spanning_subsets(q, k, delta, n, r)
            report.sweep.append(
                {
                    "delta": delta,
                    "N": count_rank_matrices(q, k, delta, n),
                    "alpha": float(alpha),
                    "guess_ratio": float(guess_ratio(r, t, delta)),
                    "guess_ratio_bound": float(guess_ratio_bound(r, t, delta)),
                }
            )
    return report


# -- attacks ------------------------------------------------------------------


@dataclass
class AttackStats:
    delta: int
    trials: int
    successes: int
    mean_trials_to_success: float | None
    predicted: float
    ratio: float | None
    rank_k_samples: int
    rank_k_with_chaff: int
    chaff_only_samples: int
    chaff_only_rank_k: int
    chaff_only_predicted: float
    budget_exhausted: bool
    accept: str

    def to_dict(self) -> dict:
        return asdict(self)


def simulate_subset_attack(
    vault: SfvVault,
    delta: int,
    max_trials: int,
    seed: int | random.Random,
    truth: GroundTruth | None = None,
    target_successes: int | None = None,
    accept: str = "span",
) -> AttackStats:
    """Sample ``delta`` vault points at a time until their second coordinates reveal the key.

    A sample is a candidate when its second coordinates have rank exactly k.
    With ``accept="span"`` the candidate key is the span itself and must be a
    codeword; with ``accept="decode"`` the span is decoded instead.  Ground
    truth, when given, scores candidates and classifies samples; without it
    every candidate counts as a success.
    """
    params = vault.params
    code: SpreadCode = params.code
    field, k, n = params.field, params.k, params.n
    r = len(vault.points)
    if not 1 <= delta <= r:
        raise ParameterError(f"delta={delta} outside [1, {r}]")
    if accept not in ("span", "decode"):
        raise ParameterError(f"unknown acceptance rule {accept!r}")
    t = params.t if truth is None else len(truth.authentic)
    rng = stream(as_seed(seed), "attack:subset")
    ys = [y for _, y in vault.points]
    authentic = truth.authentic if truth is not None else frozenset()

    runs: list[int] = []
    since = 0
    rank_k = rank_k_chaff = chaff_only = chaff_only_rank_k = 0
    trials = 0
    while trials < max_trials and (target_successes is None or len(runs) < target_successes):
        trials += 1
        since += 1
        idx = rng.sample(range(r), delta)
        n_auth = sum(1 for i in idx if i in authentic)
        sample = [ys[i] for i in idx]
        rk = rank_of(field, sample, n)
        if truth is not None and n_auth == 0:
            chaff_only += 1
            chaff_only_rank_k += rk == k
        if rk != k:
            continue
        rank_k += 1
        if truth is not None and n_auth < delta:
            rank_k_chaff += 1
        U = span(field, sample, n)
        if accept == "span":
            if not code.is_codeword(U):
                continue
            found = U
        else:
            try:
                found = code.decode(U).subspace
            except Exception:
                continue
        if truth is None or found == truth.key.subspace:
            runs.append(since)
            since = 0

    q = field.q
    predicted = float(guess_ratio(r, t, delta)) if t >= delta else math.inf
    mean = sum(runs) / len(runs) if runs else None
    chaff_pred = count_rank_matrices(q, k, delta, n) / q ** (delta * n) if delta >= k else 0.0
    return AttackStats(
        delta=delta,
        trials=trials,
        successes=len(runs),
        mean_trials_to_success=mean,
        predicted=predicted,
        ratio=mean / predicted if mean is not None and math.isfinite(predicted) else None,
        rank_k_samples=rank_k,
        rank_k_with_chaff=rank_k_chaff,
        chaff_only_samples=chaff_only,
        chaff_only_rank_k=chaff_only_rank_k,
        chaff_only_predicted=chaff_pred,
        budget_exhausted=target_successes is not None and len(runs) < target_successes,
        accept=accept,
    )


@dataclass
class LinearDependencyResult:
    applicable: bool
    flagged: list[tuple[int, dict]]

    @property
    def indices(self) -> set[int]:
        return {i for i, _ in self.flagged}

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "flagged": [{"index": i, **ev} for i, ev in self.flagged]}


def linear_dependency_attack(vault: SfvVault, max_terms: int = 2) -> LinearDependencyResult:
    """Flag points whose first coordinate is a combination of others with a matching second coordinate.

    Authentic points satisfy ``y = x kappa`` with ``kappa`` linear, so any
    relation ``x_0 = sum c_i x_i`` among authentic points carries over to the
    second coordinates.  A relation with zero terms covers the point
    ``(0, 0)``.  Hashed vaults hide the first coordinates and are reported as
    not applicable.
    """
    params = vault.params
    if params.hashed:
        return LinearDependencyResult(False, [])
    field = params.field
    pts = vault.points
    by_x: dict[tuple, list[int]] = defaultdict(list)
    for i, (x, _) in enumerate(pts):
        by_x[tuple(x)].append(i)
    evidence: dict[int, dict] = {}

    def flag(i0: int, terms: Sequence[tuple[int, int]]) -> None:
        rel = {"target": i0, "terms": [[j, c] for j, c in terms]}
        for i in [i0] + [j for j, _ in terms]:
            evidence.setdefault(i, rel)

    zero_x = (0,) * params.k
    for i in by_x.get(zero_x, []):
        if not any(pts[i][1]):
            flag(i, [])
    nonzero = [c for c in range(1, field.q)]
    for m in range(1, max_terms + 1):
        for combo in itertools.combinations(range(len(pts)), m):
            xs = [pts[j][0] for j in combo]
            if rank_of(field, xs, params.k) != m:
                continue
            for coeffs in itertools.product(nonzero, repeat=m):
                vx = (0,) * params.k
                vy = (0,) * params.n
                for j, c in zip(combo, coeffs):
                    vx = vec_add(field, vx, vec_scale(field, c, pts[j][0]))
                    vy = vec_add(field, vy, vec_scale(field, c, pts[j][1]))
                for i0 in by_x.get(vx, []):
                    if i0 not in combo and pts[i0][1] == vy:
                        flag(i0, list(zip(combo, coeffs)))
    return LinearDependencyResult(True, sorted(evidence.items()))
