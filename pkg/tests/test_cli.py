import json
import subprocess
import sys

import pytest

from nokstring import __version__
from nokstring.cli import OUTPUT_ENV, main, run


def _json(argv):
    code, text = run(argv)
    return code, json.loads(text) if code != 2 else text


def test_verify_a1():
    code, rep = _json(["verify-main-theorem", "--family", "A", "--rank", "1", "--lambda", "3"])
    assert code == 0 and rep["ok"]
    assert rep["result"]["pairs"] == 4
    assert all(r["match"] for r in rep["result"]["rows"])
    assert rep["version"] == __version__
    assert rep["config"]["lambda"] == [3] and rep["config"]["word"] == [1]


def test_string_polytope_count():
    code, rep = _json(["nok", "string-polytope", "--family", "A", "--rank", "2", "--word", "1,2,1", "--lambda", "1,1"])
    assert code == 0
    assert rep["result"]["lattice_count"] == 8
    assert rep["result"]["polytope"]["volume"] == "1"
    assert all(set(f) == {"normal", "rhs"} for f in rep["result"]["polytope"]["facets"])


@pytest.mark.parametrize(
    "argv",
    [
        ["nok", "string-polytope", "--family", "A", "--rank", "2", "--word", "1,9", "--lambda", "1,1"],
        ["nok", "string-polytope", "--family", "A", "--rank", "2", "--word", "1,1,2", "--lambda", "1,1"],
        ["module", "--family", "B", "--rank", "2", "--lambda", "1,0"],
        ["module", "--family", "A", "--rank", "2", "--lambda", "1,-1"],
        ["module", "--family", "A", "--rank", "2", "--lambda", "9,9"],
        ["verify-main-theorem", "--family", "A", "--rank", "2", "--lambda", "x"],
        ["frobnicate"],
        ["module", "--family", "A"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "usage error" in capsys.readouterr().err


def test_other_commands_succeed():
    cmds = [
        ["roots", "--family", "C", "--rank", "2"],
        ["module", "--family", "A", "--rank", "2", "--lambda", "1,1", "--export"],
        ["strings", "value-set", "--family", "A", "--rank", "2", "--word", "1,2,1", "--lambda", "1,1"],
        ["poly", "--family", "A", "--rank", "2", "--lambda", "1,1", "--index", "3"],
        ["expand", "--family", "A", "--rank", "2", "--lambda", "1,0", "--mu", "1,0"],
        ["nok", "fibered", "--family", "A", "--rank", "1", "--datum", "a1-toy"],
        ["nok", "fibered", "--family", "A", "--rank", "2", "--lambda", "1,0", "--levels", "3"],
        ["sagbi", "subduct", "--family", "A", "--rank", "1", "--worked-example"],
        ["sagbi", "subduct", "--family", "A", "--rank", "2", "--lambda", "1,0"],
        ["sagbi", "check", "--family", "A", "--rank", "1", "--lambda", "1"],
        ["sagbi", "degenerate", "--family", "A", "--rank", "2", "--lambda", "1,0"],
    ]
    for argv in cmds:
        code, rep = _json(argv)
        assert code == 0 and rep["ok"], argv


def test_roots_report():
    _, rep = _json(["roots", "--family", "A", "--rank", "3"])
    assert rep["result"]["num_reduced_words_w0"] == 16


def test_value_set_points():
    _, rep = _json(["strings", "value-set", "--family", "A", "--rank", "2", "--word", "1,2,1", "--lambda", "1,0"])
    assert [r["point"] for r in rep["result"]["rows"]] == [[0, 0, 0], [0, 1, 1], [1, 0, 0]]


def test_formats():
    argv = ["verify-main-theorem", "--family", "A", "--rank", "1", "--lambda", "2"]
    code, csv_text = run(argv + ["--format", "csv"])
    assert code == 0
    lines = csv_text.strip().splitlines()
    assert lines[0] == "match,minus_valuation,sigma,string_params" and len(lines) == 4
    code, table = run(argv + ["--format", "table"])
    assert table.startswith("# verify-main-theorem  ok=True")


def test_determinism():
    argv = ["verify-main-theorem", "--family", "A", "--rank", "2", "--lambda", "1,1", "--random", "5", "--seed", "9"]
    assert run(argv)[1] == run(argv)[1]
    other = run(argv[:-1] + ["10"])[1]
    assert other != run(argv)[1]


def test_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path))
    code, text = run(["roots", "--family", "A", "--rank", "2"])
    assert code == 0
    assert (tmp_path / "roots.json").read_text() == text


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "nokstring", "nok", "string-polytope", "--family", "A", "--rank", "2",
         "--word", "1,9", "--lambda", "1,1"],
        capture_output=True, text=True,
    )
    assert out.returncode == 2
    out = subprocess.run(
        [sys.executable, "-m", "nokstring", "verify-main-theorem", "--family", "A", "--rank", "1", "--lambda", "3"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["pairs"] == 4


def test_failed_check_exits_one(monkeypatch):
    import nokstring.cli as cli

    def fake(*args, **kwargs):
        return [{"string_params": [0], "minus_valuation": [1], "match": False, "sigma": "dual[0]"}]

    monkeypatch.setattr(cli, "main_theorem_batch", fake)
    code, text = run(["verify-main-theorem", "--family", "A", "--rank", "1", "--lambda", "1"])
    assert code == 1 and json.loads(text)["ok"] is False
