from __future__ import annotations

import json

import pytest

from dingpd.cli import main
from dingpd.repmod import simple_module
from dingpd.samples import xfix2


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("DPD_CACHE", str(d))
    return d


def _write(tmp_path, name, doc) -> str:
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_check(capsys):
    code, out, _ = _run(capsys, ["algebra", "check", "FIX3", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == 2 and doc["dim"] == 4


def test_module_dpd_json(capsys, tmp_path, algs):
    m = _write(tmp_path, "s2.json", simple_module(algs["FIX3"], 1).to_doc())
    code, out, _ = _run(capsys, ["module", "dpd", "FIX3", m, "--format", "json", "--cache", "off"])
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "+inf" and doc["witness_complex"] is None


def test_module_is_dp_text(capsys, tmp_path, algs):
    m = _write(tmp_path, "k.json", simple_module(algs["FIX1"], 0).to_doc())
    code, out, _ = _run(capsys, ["module", "is-dp", "FIX1", m])
    assert code == 0 and "yes" in out.lower()


def test_complex_commands(capsys, tmp_path, algs):
    x = _write(tmp_path, "x.json", xfix2(algs["FIX2"]).to_doc())
    code, out, _ = _run(capsys, ["complex", "dpd", "FIX2", x, "--format", "json"])
    assert code == 0 and json.loads(out)["value"] == 1
    code, out, _ = _run(capsys, ["complex", "homology", "FIX2", x, "--format", "json"])
    assert code == 0
    code, out, _ = _run(capsys, ["resolve", "FIX2", x, "--degree", "3", "--format", "json"])
    assert code == 0


def test_rhom_command(capsys, tmp_path, algs):
    from dingpd.repmod import regular_module

    k = _write(tmp_path, "k.json", simple_module(algs["FIX1"], 0).to_doc())
    a = _write(tmp_path, "a.json", regular_module(algs["FIX1"]).to_doc())
    code, out, _ = _run(capsys, ["complex", "rhom", "FIX1", k, a, "--lo", "-2", "--hi", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["homology_dims"] == {"-2": 0, "-1": 0, "0": 1, "1": 0, "2": 0}
    assert doc["inf_in_range"] == 0


def test_check_ta(capsys, tmp_path, algs):
    k = _write(tmp_path, "k.json", simple_module(algs["FIX1"], 0).to_doc())
    code, out, _ = _run(capsys, ["check-ta", "FIX1", k, "--window", "6", "--format", "json"])
    assert code == 0 and json.loads(out)["passed"] is True


def test_cache_gives_identical_output(capsys, tmp_path, algs, cache_dir):
    x = _write(tmp_path, "x.json", xfix2(algs["FIX2"]).to_doc())
    argv = ["complex", "dpd", "FIX2", x, "--format", "json"]
    _, first, _ = _run(capsys, argv)
    assert any(cache_dir.rglob("*.json"))
    _, second, _ = _run(capsys, argv)
    _, fresh, _ = _run(capsys, argv + ["--cache", "off"])
    assert first == second == fresh


def test_corrupt_json_exits_1(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dims": [1], "arr')
    code, _, err = _run(capsys, ["module", "dpd", "FIX1", str(p)])
    assert code == 1 and "line" in err


def test_bad_dims_names_field(capsys, tmp_path):
    m = _write(tmp_path, "m.json", {"dims": [1, 1], "arrows": {}})
    code, _, err = _run(capsys, ["module", "dpd", "FIX1", m])
    assert code == 1 and "dims" in err


def test_missing_file_and_bad_window(capsys):
    code, _, _ = _run(capsys, ["module", "dpd", "FIX1", "/nonexistent/m.json"])
    assert code == 1
    code, _, _ = _run(capsys, ["algebra", "check", "FIX1", "--window", "0"])
    assert code == 1


def test_unknown_fixture(capsys):
    code, _, err = _run(capsys, ["algebra", "check", "NOPE"])
    assert code == 1 and err


def test_suite_subset_is_deterministic():
    from dingpd.suite import run_suite

    a = run_suite(seed=3, window=6, only=["honesty", "fixture_verdicts"]).to_doc()
    b = run_suite(seed=3, window=6, only=["honesty", "fixture_verdicts"]).to_doc()
    assert a == b and a["passed"]


def test_suite_small_window_skips():
    from dingpd.suite import run_suite

    doc = run_suite(seed=0, window=1, only=["functorial_agreement"]).to_doc()
    assert doc["properties"][0]["status"] == "skipped"
