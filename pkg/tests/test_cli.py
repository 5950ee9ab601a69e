import json
import subprocess
import sys
from pathlib import Path

import pytest

from cdgforge.cli import main

ROOT = Path(__file__).resolve().parents[1]
BASE = {
    "field": 3,
    "algebras": {"S2": {"truncated_polynomial": 2}},
    "modules": {"S2": {"algebra": "S2", "regular": True}, "k": {"quotient_of": "S2", "by": [[0], [1]]}},
}


def _scenario(tmp_path, commands, **extra):
    sc = dict(BASE, commands=commands, **extra)
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(sc))
    return str(path)


def _run(*argv):
    return main([*argv, "--results", "-"])


@pytest.mark.parametrize("name", ["s2.json", "mf_s4.json"])
def test_shipped_corpus_passes(name, capsys):
    assert _run("run", str(ROOT / "corpus" / name)) == 0
    assert "0 failed" in capsys.readouterr().out


def test_empty_scenario_passes(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"field": 3}))
    assert _run("run", str(path)) == 0


def test_failed_assertion_exit_1(tmp_path, capsys):
    path = _scenario(tmp_path, [{"op": "ext1", "args": {"source": "k", "target": "k"}, "expect": {"dim": 2}}])
    assert _run("run", path) == 1
    assert "1 failed" in capsys.readouterr().out


def test_parse_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run("run", str(bad)) == 2
    assert _run("run", _scenario(tmp_path, [{"op": "frobnicate", "args": {}}])) == 2
    assert _run("run", _scenario(tmp_path, [], field=4)) == 2
    assert _run("run", str(tmp_path / "missing.json")) == 2
    assert main(["verify", "sbar", "--field", "6", "--results", "-"]) == 2


def test_validation_errors_exit_3(tmp_path):
    path = _scenario(tmp_path, [{"op": "hom_dim", "args": {"source": "k", "target": "nowhere"}}])
    assert _run("run", path) == 3
    sc = dict(BASE, maps={"bad": {"source": "k", "target": "S2", "matrix": [[1], [0]]}})
    path = tmp_path / "badmap.json"
    path.write_text(json.dumps(sc))
    assert _run("run", str(path)) == 3


def test_only_filter(tmp_path, capsys):
    cmds = [{"op": "ext1", "args": {"source": "k", "target": "k"}, "expect": {"dim": 1}},
            {"op": "hom_dim", "args": {"source": "k", "target": "k"}, "expect": {"dim": 5}, "tags": ["broken"]}]
    path = _scenario(tmp_path, cmds)
    assert _run("run", path) == 1
    assert _run("run", path, "--only", "ext1") == 0
    assert _run("run", path, "--only", "broken") == 1
    capsys.readouterr()


def test_results_file_format(tmp_path, capsys):
    path = _scenario(tmp_path, [{"op": "ext1", "args": {"source": "k", "target": "k"}, "expect": {"dim": 1}}])
    out = tmp_path / "r.json"
    assert main(["run", path, "--results", str(out)]) == 0
    recs = json.loads(out.read_text())
    assert recs == [{"id": "000:ext1/dim", "lhs_dims": [1], "rhs_dims": [1], "status": "pass",
                     "witness_present": False}]
    capsys.readouterr()


def test_verify_bar_refuses_narrow_window(capsys):
    assert _run("verify", "bar", "--window", "0", "0") == 3
    assert "window insufficient" in capsys.readouterr().err


def test_verify_single_suite(capsys):
    assert _run("verify", "curvature", "--random-count", "3") == 0
    assert "curvature" in capsys.readouterr().out
    assert _run("verify", "curvature", "--random-count", "-1") == 2


def test_describe(capsys):
    assert _run("describe", "K") == 0
    info = json.loads(capsys.readouterr().out)
    assert info["dim"] == 8 and info["type"] == "CdgRing"
    assert _run("describe", "D_bad") == 0
    assert json.loads(capsys.readouterr().out)["valid"] is False
    assert _run("describe", "nonsense") == 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "cdgforge.cli", "describe", "S2", "--results", "-"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["dim"] == 2


def test_scenario_over_rationals(tmp_path, capsys):
    cmds = [{"op": "hom_dim", "args": {"source": "S2", "target": "S2"}, "expect": {"dim": 2}},
            {"op": "ext1", "args": {"source": "k", "target": "k"}, "expect": {"dim": 1}},
            {"op": "stable_hom", "args": {"source": "k", "target": "k"}, "expect": {"dim": 1}},
            {"op": "projective_resolution", "args": {"module": "k"}, "expect": {"verdict": "pd=inf"}}]
    assert _run("run", _scenario(tmp_path, cmds, field=0)) == 0
    capsys.readouterr()
