"""Command-line interface.

Every command writes JSON to stdout.  Failures print ``{"error": code,
"message": ..., "location": ...}`` on stderr and exit nonzero:
1 for decoding failures, 2 for bad parameters or usage, 3 for vault file
problems, 4 for I/O errors.

Feature and witness files hold one vector per line with coordinates as
space-separated integers; extension-field coordinates use the packed form
``sum c_i p^i``.  PFV features are single field elements, one per line.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import DecodingFailure, ParameterError, VaultError, VaultFormatError
from .field import FieldSpec, Poly
from .pfv import PfvVault, pfv_lock, pfv_unlock
from .rng import MASK64, stream
from .security import find_delta0, linear_dependency_attack, security_report, simulate_subset_attack
from .sfv import CHAFF_DOMAINS, CHAFF_POLICIES, SfvParams, SfvVault, _lock, random_key, sfv_unlock
from .spread import DEFAULT_ENUMERATION_CAP, spread_new
from .vaultfile import canonical_json, truth_from_dict, truth_to_dict, vault_parse, vault_serialize


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 100_000
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    out: Path | None = None
    truth: Path | None = None

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ParameterError("seed must fit in 64 bits")
        if self.trials < 0:
            raise ParameterError("trial budget must be nonnegative")


def read_vectors(path: str | Path) -> list[tuple[int, ...]]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise ParameterError(f"{path}:{lineno}: expected integers, got {line!r}") from None
    return out


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _parse_poly(text: str | Sequence[int] | None) -> list[int] | None:
    if text is None:
        return None
    if isinstance(text, str):
        return [int(tok) for tok in text.replace(",", " ").split()]
    return [int(c) for c in text]


def _load_params(args: argparse.Namespace) -> dict:
    params: dict = {}
    if args.params:
        params.update(json.loads(Path(args.params).read_text()))
    for key in ("q", "k", "s", "t", "r", "ell", "poly", "chaff", "chaff_domain"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return params


def _require(params: dict, *keys: str) -> None:
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise ParameterError(f"missing parameter(s): {', '.join(missing)}")


# -- commands -------------------------------------------------------------------


def cmd_code_info(args: argparse.Namespace) -> int:
    code = spread_new(args.q, args.k, args.s, _parse_poly(args.poly))
    _emit(
        {
            "q": code.q,
            "k": code.k,
            "s": code.s,
            "n": code.n,
            "poly": list(code.poly.coeffs),
            "cardinality": code.cardinality,
            "min_distance": code.min_distance,
            "radius": code.radius,
        }
    )
    return 0


def _lock_pfv(params: dict, features: list, seed: int):
    _require(params, "q", "ell", "r")
    field = FieldSpec.of_order(int(params["q"]))
    if any(len(f) != 1 for f in features):
        raise ParameterError("pfv features are single field elements, one per line")
    ell = int(params["ell"])
    krng = stream(seed, "key")
    key = Poly(field, tuple(krng.randrange(field.q) for _ in range(ell)))
    vault = pfv_lock(key, [f[0] for f in features], int(params["r"]), ell, seed)
    truth = {"key": list(key.padded(ell)), "features": [f[0] for f in features]}
    return vault, {"key": list(key.padded(ell))}, truth


def _lock_sfv(params: dict, mode: str, features: list, seed: int):
    _require(params, "q", "k", "s")
    code = spread_new(int(params["q"]), int(params["k"]), int(params["s"]), _parse_poly(params.get("poly")))
    hashed = mode == "hashed"
    base = params.get("base_mode")
    if base is None:
        base = "relaxed" if mode == "relaxed" or (hashed and params.get("t") is not None) else "strict"
    chaff = params.get("chaff", "auto")
    if base == "strict":
        sp = SfvParams.strict(code, hashed, chaff)
    else:
        _require(params, "t", "r")
        sp = SfvParams.relaxed(
            code, int(params["t"]), int(params["r"]), hashed, chaff, params.get("chaff_domain", "complement")
        )
    key = random_key(code, seed)
    vault, truth = _lock(key, features, sp, seed)
    rows = [list(b) for b in key.subspace.basis]
    return vault, {"key": rows}, truth_to_dict(truth, code.field)


def cmd_lock(args: argparse.Namespace) -> int:
    cfg = RunConfig(seed=args.seed, out=Path(args.out), truth=Path(args.truth) if args.truth else None)
    params = _load_params(args)
    features = read_vectors(args.features)
    if args.scheme == "pfv":
        if args.mode not in (None, "strict"):
            raise ParameterError("pfv has no modes")
        vault, printed, truth = _lock_pfv(params, features, cfg.seed)
    else:
        vault, printed, truth = _lock_sfv(params, args.mode or "strict", features, cfg.seed)
    cfg.out.write_bytes(vault_serialize(vault))
    if cfg.truth:
        cfg.truth.write_bytes(canonical_json(truth))
    _emit({"scheme": args.scheme, "out": str(cfg.out), **printed})
    return 0


def cmd_unlock(args: argparse.Namespace) -> int:
    vault = vault_parse(Path(args.vault).read_bytes())
    witness = read_vectors(args.witness)
    if isinstance(vault, PfvVault):
        if any(len(w) != 1 for w in witness):
            raise ParameterError("pfv witnesses are single field elements, one per line")
        key = pfv_unlock(vault, [w[0] for w in witness])
        _emit({"scheme": "pfv", "key": list(key.padded(vault.ell))})
    else:
        key = sfv_unlock(vault, witness, args.algorithm)
        _emit({"scheme": "sfv", "key": [list(b) for b in key.subspace.basis]})
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    report = security_report(args.q, args.k, args.n, args.r, args.t, sweep=args.sweep_delta or bool(args.csv))
    if args.csv:
        buf = io.StringIO()
        fields = ["delta", "N", "alpha", "guess_ratio", "guess_ratio_bound"]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(report.sweep)
        if args.csv == "-":
            sys.stdout.write(buf.getvalue())
            return 0
        Path(args.csv).write_text(buf.getvalue())
    _emit(report.to_dict())
    return 0


def cmd_attack(args: argparse.Namespace) -> int:
    cfg = RunConfig(seed=args.seed, trials=args.trials)
    vault = vault_parse(Path(args.vault).read_bytes())
    if not isinstance(vault, SfvVault):
        raise ParameterError("attacks target subspace vaults")
    if args.kind == "lindep":
        _emit(linear_dependency_attack(vault, args.max_terms).to_dict())
        return 0
    truth = None
    if args.truth:
        truth = truth_from_dict(json.loads(Path(args.truth).read_text()), vault)
    delta = args.delta
    if delta is None:
        p = vault.params
        delta = find_delta0(p.field.q, p.k, p.n, p.r, p.t)
        if delta is None:
            raise ParameterError("no delta0 exists for this vault; pass --delta")
    stats = simulate_subset_attack(
        vault, delta, cfg.trials, cfg.seed, truth=truth, target_successes=args.successes, accept=args.accept
    )
    _emit(stats.to_dict())
    return 0


# -- parser ---------------------------------------------------------------------


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


class _Parser(argparse.ArgumentParser):
    """Usage errors go to stderr as JSON like every other failure."""

    def error(self, message: str):
        sys.stderr.write(json.dumps({"error": "usage", "message": message}) + "\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="subspace-vault", description="Subspace and polynomial fuzzy vaults.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("code-info", help="spread code parameters")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--poly", help="monic degree-k polynomial, coefficients low to high")
    c.set_defaults(func=cmd_code_info)

    lk = sub.add_parser("lock", help="lock a random key under a feature set")
    lk.add_argument("--scheme", choices=("pfv", "sfv"), required=True)
    lk.add_argument("--mode", choices=("strict", "relaxed", "hashed"))
    lk.add_argument("--params", help="JSON file with q, k, s, t, r, ell, poly, chaff, chaff_domain, base_mode")
    lk.add_argument("--q", type=int)
    lk.add_argument("--k", type=int)
    lk.add_argument("--s", type=int)
    lk.add_argument("--t", type=int)
    lk.add_argument("--r", type=int)
    lk.add_argument("--ell", type=int)
    lk.add_argument("--poly")
    lk.add_argument("--chaff", choices=CHAFF_POLICIES)
    lk.add_argument("--chaff-domain", dest="chaff_domain", choices=CHAFF_DOMAINS)
    lk.add_argument("--features", required=True)
    lk.add_argument("--seed", type=_seed, required=True)
    lk.add_argument("--out", required=True)
    lk.add_argument("--truth", help="also write the locker's ground truth (testing only)")
    lk.set_defaults(func=cmd_lock)

    u = sub.add_parser("unlock", help="recover the key with a witness")
    u.add_argument("--vault", required=True)
    u.add_argument("--witness", required=True)
    u.add_argument("--algorithm", choices=("vote", "exhaustive"), default="vote")
    u.set_defaults(func=cmd_unlock)

    a = sub.add_parser("analyze", help="security report")
    for name in ("q", "k", "n", "r", "t"):
        a.add_argument(f"--{name}", type=int, required=True)
    a.add_argument("--sweep-delta", action="store_true")
    a.add_argument("--csv", help="write the delta sweep as CSV to this path ('-' for stdout)")
    a.set_defaults(func=cmd_analyze)

    at = sub.add_parser("attack", help="simulate an attack on a vault")
    at.add_argument("--vault", required=True)
    at.add_argument("--kind", choices=("subset", "lindep"), required=True)
    at.add_argument("--delta", type=int, help="subset size (default: delta0)")
    at.add_argument("--trials", type=int, default=RunConfig.trials)
    at.add_argument("--seed", type=_seed, default=0)
    at.add_argument("--truth", help="ground truth file written by lock --truth")
    at.add_argument("--successes", type=int, help="stop after this many successes")
    at.add_argument("--accept", choices=("span", "decode"), default="span")
    at.add_argument("--max-terms", dest="max_terms", type=int, default=2)
    at.set_defaults(func=cmd_attack)
    return ap


EXIT_CODES = {DecodingFailure: 1, ParameterError: 2, VaultFormatError: 3}


def _fail(exc: Exception, code: str, status: int) -> int:
    err = {"error": code, "message": getattr(exc, "detail", str(exc))}
    location = getattr(exc, "location", None)
    if location is not None:
        err["location"] = location
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VaultError as exc:
        status = next((s for cls, s in EXIT_CODES.items() if isinstance(exc, cls)), 2)
        return _fail(exc, exc.code, status)
    except OSError as exc:
        return _fail(exc, "io", 4)
    except (ValueError, json.JSONDecodeError) as exc:
        return _fail(exc, "bad-parameter", 2)


if __name__ == "__main__":
    sys.exit(main())
