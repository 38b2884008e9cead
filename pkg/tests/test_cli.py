import json

import pytest
from click.testing import CliRunner

from ftft import fixtures, io
from ftft.cli import main


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.setenv("FTFT_FIXTURE_DIR", str(tmp_path / "fx"))
    runner = CliRunner()
    return lambda *args: runner.invoke(main, [str(a) for a in args])


def test_fixture_writes_to_env_dir(run, tmp_path):
    r = run("fixture", "clifford", "--p", 1, "--q", 1)
    assert r.exit_code == 0
    path = tmp_path / "fx" / "clifford-p1-q1.json"
    assert path.exists()
    kind, A = io.load(path)
    assert kind == "superalgebra" and A.dim == 4
    assert run("check", path).exit_code == 0


def test_fixture_examples(run, tmp_path):
    for args in (("trivial-theory", "--group", "q8"), ("pin-minus-tft", "--xt-parity", 1, "--xt-square", -1)):
        out = tmp_path / f"{args[0]}.json"
        assert run("fixture", *args, "-o", out).exit_code == 0
        r = run("check", out)
        assert r.exit_code == 0, r.output
        assert "PASS" in r.output


def test_fixture_usage_errors(run):
    assert run("fixture", "nope").exit_code == 2
    assert run("fixture", "clifford", "--r", 2).exit_code == 2
    assert run("fixture", "rep-1d", "--odd", 1, "-o", "-").exit_code == 2
    assert "trivial-theory" in run("fixture", "--list").output


def _broken_strong_grading(tmp_path):
    d = io.to_dict(fixtures.trivial_theory("pin1+"))
    names = d["ambient"]["names"]
    odd = {k for k, n in enumerate(names) if "T" in n}
    d["ambient"]["mult"] = [t for t in d["ambient"]["mult"] if not (t[0] in odd and t[1] in odd)]
    p = tmp_path / "weak.json"
    p.write_text(json.dumps(d))
    return p


def test_check_exit_codes(run, tmp_path):
    p = _broken_strong_grading(tmp_path)
    r = run("check", p)
    assert r.exit_code == 1 and "strong-grading: FAIL" in r.output
    r = run("check", p, "--json")
    assert "strong-grading" in json.loads(r.output)["failed"]
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "tft2d", "grading": 3')
    r = run("check", bad)
    assert r.exit_code == 2 and "line" in r.output
    assert run("check", tmp_path / "absent.json").exit_code == 2


def test_check_single_clause(run, tmp_path):
    p = tmp_path / "t.json"
    run("fixture", "trivial-theory", "--group", "q8", "-o", p)
    r = run("check", p, "--clause", "frobenius-compat", "--json")
    rep = json.loads(r.output)
    assert r.exit_code == 0 and "frobenius-compat" in rep["checked"] and "star" not in rep["checked"]
    assert run("check", p, "--clause", "no-such-clause").exit_code == 2


def test_group_tools(run, tmp_path):
    g = tmp_path / "q8.json"
    run("fixture", "group", "--name", "q8", "-o", g)
    r = run("cohomology", "--group", g, "--degree", 2)
    assert r.exit_code == 0 and r.output.strip().endswith("= 2")
    r = run("two-group", "enumerate", "--model", "o2")
    assert r.output.startswith("4 extension classes")
    r = run("two-group", "enumerate", "--model", "point", "--json")
    assert len(json.loads(r.output)) == 1


def test_morita_search(run, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("fixture", "star-clifford", "--sign", 1, "-o", a)
    run("fixture", "star-clifford", "--sign", -1, "-o", b)
    r = run("morita-search", a, b)
    assert r.exit_code == 1 and r.output.startswith("NONE") and "pairing degenerate" in r.output
    r = run("morita-search", a, a, "--json")
    assert r.exit_code == 0 and json.loads(r.output)["verdict"] == "WITNESS"


def test_reproduce_is_deterministic(run):
    args = ("reproduce", "--only", "fermionic-tensor", "--only", "stellar-morita", "--only", "extension-count")
    r1, r2 = run(*args), run(*args)
    assert r1.exit_code == 0 and r1.output == r2.output
    assert "[PASS] fermionic-tensor" in r1.output and "[SKIP] tft2d" in r1.output
    rows = json.loads(run(*args, "--json", "--timings").output)
    assert [x["id"] for x in rows][:2] == ["fermionic-tensor", "spacetime-1d"]
    assert "elapsed" in rows[0]


def test_reproduce_quick_skips_slow_rows(run):
    r = run("reproduce", "--suite", "quick", "--brief")
    assert "[SKIP] tft2d" in r.output and "[SKIP] adjunctions" in r.output
    assert "[FAIL] alpha-oracle" in r.output and r.exit_code == 1
