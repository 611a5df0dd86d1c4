from __future__ import annotations

import json

import pytest

from subspace_vault.cli import RunConfig, main, read_vectors
from subspace_vault.errors import ParameterError
from subspace_vault.security import brute_force_cost


def _run(capsys, *argv):
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


def _ok(capsys, *argv):
    status, out, err = _run(capsys, *argv)
    assert status == 0, err
    return json.loads(out)


def _err(capsys, expected_status, *argv):
    status, out, err = _run(capsys, *argv)
    assert status == expected_status and out == ""
    return json.loads(err)


@pytest.fixture
def files(tmp_path):
    def write(name: str, rows) -> str:
        path = tmp_path / name
        path.write_text("\n".join(" ".join(map(str, r)) for r in rows) + "\n")
        return str(path)

    write.dir = tmp_path
    return write


def test_read_vectors_skips_comments(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("# header\n1 0 1\n\n0 1 1  # trailing\n")
    assert read_vectors(p) == [(1, 0, 1), (0, 1, 1)]
    p.write_text("1 x 0\n")
    with pytest.raises(ParameterError):
        read_vectors(p)


def test_run_config_validation():
    with pytest.raises(ParameterError):
        RunConfig(seed=-1)
    with pytest.raises(ParameterError):
        RunConfig(trials=-5)


def test_code_info(capsys):
    info = _ok(capsys, "code-info", "--q", 2, "--k", 3, "--s", 4)
    assert info["n"] == 12 and info["cardinality"] == 585
    assert info["min_distance"] == 6 and info["radius"] == 2
    assert _err(capsys, 2, "code-info", "--q", 6, "--k", 2, "--s", 2)["error"] == "bad-parameter"


def test_sfv_lock_unlock_cycle(capsys, files):
    feats = files("a.txt", [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    out = files.dir / "v.json"
    common = ("lock", "--scheme", "sfv", "--mode", "strict", "--q", 2, "--k", 3, "--s", 2, "--features", feats)
    printed = _ok(capsys, *common, "--seed", 11, "--out", out)
    first = out.read_bytes()
    _ok(capsys, *common, "--seed", 11, "--out", out)
    assert out.read_bytes() == first
    got = _ok(capsys, "unlock", "--vault", out, "--witness", files("w.txt", [(1, 0, 0), (0, 1, 0), (1, 0, 1)]))
    assert got["key"] == printed["key"]
    exh = _ok(capsys, "unlock", "--vault", out, "--witness", files("w.txt", [(1, 0, 0)]), "--algorithm", "exhaustive")
    assert exh["key"] == printed["key"]
    # far witnesses either land on another codeword or fail outright
    wrong = _ok(capsys, "unlock", "--vault", out, "--witness", files("w2.txt", [(1, 1, 0), (0, 1, 1), (1, 1, 1)]))
    assert wrong["key"] != printed["key"]
    fail = _err(capsys, 1, "unlock", "--vault", out, "--witness", files("w3.txt", [(0, 0, 1), (0, 1, 1), (1, 1, 0)]))
    assert fail["error"] == "decode-failure"


def test_hashed_lock_and_params_file(capsys, files):
    params = files.dir / "p.json"
    params.write_text(json.dumps({"q": 2, "k": 3, "s": 4, "t": 4, "r": 8}))
    feats = files("a.txt", [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    out = files.dir / "h.json"
    printed = _ok(capsys, "lock", "--scheme", "sfv", "--mode", "hashed", "--params", params,
                  "--features", feats, "--seed", 3, "--out", out)
    doc = json.loads(out.read_bytes())
    assert doc["hash"] == "sha-256" and doc["mode"] == "relaxed" and len(doc["points"]) == 8
    got = _ok(capsys, "unlock", "--vault", out, "--witness", feats)
    assert got["key"] == printed["key"]
    assert _ok(capsys, "attack", "--vault", out, "--kind", "lindep") == {"applicable": False, "flagged": []}


def test_pfv_cycle(capsys, files):
    out = files.dir / "p.json"
    feats = files("a.txt", [[1], [2], [3], [4]])
    printed = _ok(capsys, "lock", "--scheme", "pfv", "--q", 13, "--ell", 2, "--r", 13,
                  "--features", feats, "--seed", 5, "--out", out)
    assert _ok(capsys, "unlock", "--vault", out, "--witness", files("w.txt", [[1], [2], [3], [9]]))["key"] == printed["key"]
    assert _err(capsys, 1, "unlock", "--vault", out, "--witness", files("w.txt", [[1], [2], [8], [9]]))["error"] == "decode-failure"
    assert _err(capsys, 2, "unlock", "--vault", out, "--witness", files("w.txt", [[1, 2]]))["error"] == "bad-parameter"
    assert _err(capsys, 2, "attack", "--vault", out, "--kind", "lindep")["error"] == "bad-parameter"


def test_lindep_and_subset_attack(capsys, files):
    feats = files("a.txt", [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    out, truth = files.dir / "v.json", files.dir / "t.json"
    _ok(capsys, "lock", "--scheme", "sfv", "--mode", "relaxed", "--q", 2, "--k", 3, "--s", 4, "--t", 4, "--r", 8,
        "--features", feats, "--seed", 7, "--out", out, "--truth", truth)
    authentic = set(json.loads(truth.read_text())["authentic"])
    res = _ok(capsys, "attack", "--vault", out, "--kind", "lindep")
    flagged = {f["index"] for f in res["flagged"]}
    assert res["applicable"] and 3 <= len(flagged) and flagged <= authentic
    stats = _ok(capsys, "attack", "--vault", out, "--kind", "subset", "--truth", truth,
                "--trials", 2000, "--seed", 1, "--successes", 5)
    assert stats["delta"] == brute_force_cost(2, 3, 12, 8, 4).delta0
    assert stats["successes"] == 5
    again = _ok(capsys, "attack", "--vault", out, "--kind", "subset", "--truth", truth,
                "--trials", 2000, "--seed", 1, "--successes", 5)
    assert again == stats


def test_analyze(capsys, files):
    rep = _ok(capsys, "analyze", "--q", 2, "--k", 3, "--n", 12, "--r", 20, "--t", 8)
    assert rep["delta0"] == 5 and rep["sweep"] == []
    assert rep["brute_force_cost"] == float(brute_force_cost(2, 3, 12, 20, 8).cost)
    rep = _ok(capsys, "analyze", "--q", 2, "--k", 3, "--n", 12, "--r", 20, "--t", 8, "--sweep-delta")
    assert [row["delta"] for row in rep["sweep"]] == list(range(3, 9))
    status, out, _ = _run(capsys, "analyze", "--q", 2, "--k", 3, "--n", 12, "--r", 20, "--t", 8, "--csv", "-")
    lines = out.splitlines()
    assert status == 0 and lines[0] == "delta,N,alpha,guess_ratio,guess_ratio_bound" and len(lines) == 7
    path = files.dir / "sweep.csv"
    _ok(capsys, "analyze", "--q", 2, "--k", 3, "--n", 12, "--r", 20, "--t", 8, "--csv", path)
    assert path.read_text().splitlines() == lines


def test_format_errors_exit_3(capsys, files):
    bad = files.dir / "bad.json"
    bad.write_text('{"version": 1, "scheme": "sfv"')
    err = _err(capsys, 3, "unlock", "--vault", bad, "--witness", files("w.txt", [(1, 0)]))
    assert err["error"] == "malformed" and err["location"] == "$"
    bad.write_text('{"version": 9}')
    err = _err(capsys, 3, "attack", "--vault", bad, "--kind", "lindep")
    assert err == {"error": "unknown-version", "location": "$.version", "message": "version 9 is not supported"}


def test_io_and_usage_errors(capsys, files):
    assert _err(capsys, 4, "unlock", "--vault", files.dir / "missing.json", "--witness", "x")["error"] == "io"
    with pytest.raises(SystemExit) as exc:
        main(["lock", "--scheme", "zzz"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().err)["error"] == "usage"
    with pytest.raises(SystemExit):
        main(["lock", "--scheme", "sfv", "--features", "f", "--seed", "-3", "--out", "o"])
    capsys.readouterr()
    feats = files("a.txt", [(1, 0, 0)])
    err = _err(capsys, 2, "lock", "--scheme", "sfv", "--features", feats, "--seed", 1, "--out", files.dir / "o")
    assert err["error"] == "bad-parameter" and "q" in err["message"]
    err = _err(capsys, 2, "lock", "--scheme", "pfv", "--mode", "relaxed", "--q", 13, "--ell", 2, "--r", 13,
               "--features", feats, "--seed", 1, "--out", files.dir / "o")
    assert err["error"] == "bad-parameter"
