import json
import subprocess
import sys

import pytest

from solvquot import cli
from solvquot.errors import TrivialActionError
from solvquot.gallery import EXAMPLES


@pytest.fixture
def gallery(tmp_path):
    d = tmp_path / "ex"
    assert cli.main(["examples", str(d)]) == 0
    return d


def test_examples_written_and_refused_without_force(gallery, capsys):
    assert sorted(p.stem for p in gallery.glob("*.sq")) == sorted(EXAMPLES)
    assert cli.main(["examples", str(gallery)]) == 1
    assert "--force" in capsys.readouterr().err
    assert cli.main(["examples", str(gallery), "--force"]) == 0


def test_compute_text(gallery, capsys):
    assert cli.main(["compute", str(gallery / "weitzenboeck.sq"), "--spotcheck", "5"]) == 0
    out = capsys.readouterr().out
    assert "c = y" in out
    assert "pi(w) = (-x^2 + 2*y*w)/(2*y)" in out
    assert "invariance: pass" in out
    assert "spotcheck: " in out and "0 disagree" in out


def test_compute_json_stdout_is_deterministic(gallery, capsys):
    path = str(gallery / "ga_gm.sq")
    assert cli.main(["compute", path, "--json", "-"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["compute", path, "--json", "-"]) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["kernel"] == ["x", "-y + 1"]
    assert all(doc["checks"].values())


def test_verify_round_trip_and_tampering(gallery, tmp_path, capsys):
    spec = str(gallery / "weitzenboeck.sq")
    res = tmp_path / "w.json"
    assert cli.main(["compute", spec, "--json", str(res)]) == 0
    assert cli.main(["verify", spec, str(res)]) == 0
    doc = json.loads(res.read_text())
    doc["b_images"][2] = "w"
    res.write_text(json.dumps(doc))
    capsys.readouterr()
    assert cli.main(["verify", spec, str(res)]) == 6
    assert "Phi(b_w) - b_w" in capsys.readouterr().out


def test_schema_mismatch_is_a_parse_error(gallery, tmp_path):
    res = tmp_path / "bad.json"
    res.write_text(json.dumps({"schema": "solvquot/1"}))
    assert cli.main(["verify", str(gallery / "shear.sq"), str(res)]) == 2


def test_missing_file(tmp_path, capsys):
    assert cli.main(["compute", str(tmp_path / "nope.sq")]) == 1
    assert "error:" in capsys.readouterr().err


def test_syntax_error_reports_position(tmp_path, capsys):
    p = tmp_path / "bad.sq"
    p.write_text("vars x\nmap x = x +* 1\n")
    assert cli.main(["compute", str(p)]) == 2
    assert "line 2, column" in capsys.readouterr().err


def test_invalid_coaction_is_a_validation_error(tmp_path, capsys):
    p = tmp_path / "bad.sq"
    p.write_text("vars x\nunipotent z\nmap x = x + z^2\n")
    assert cli.main(["compute", str(p)]) == 3
    assert "error:" in capsys.readouterr().err


def test_trivial_action_error_maps_to_4(gallery, monkeypatch):
    def boom(*a, **k):
        raise TrivialActionError("no slice")
    monkeypatch.setattr(cli, "solvable_invariants", boom)
    assert cli.main(["compute", str(gallery / "shear.sq")]) == 4


def test_iteration_cap(gallery, monkeypatch):
    path = str(gallery / "scaling.sq")
    assert cli.main(["compute", path, "--max-iter", "1"]) == 5
    monkeypatch.setenv("SOLVQUOT_MAX_ITER", "1")
    assert cli.main(["compute", path]) == 5
    assert cli.main(["compute", path, "--max-iter", "100"]) == 0
    monkeypatch.setenv("SOLVQUOT_MAX_ITER", "lots")
    assert cli.main(["compute", path]) == 3


def test_module_entry_point(gallery):
    out = subprocess.run([sys.executable, "-m", "solvquot", "compute", str(gallery / "scaling.sq")],
                         capture_output=True, text=True, check=True).stdout
    assert "pi(x2) = x2/x1" in out
