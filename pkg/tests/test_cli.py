import json
import subprocess
import sys

import pytest

from conftest import DATA
from knotforge import construct
from knotforge.cli import main
from knotforge.diagram import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "--n", "1", "--format", "json")
    assert code == 0
    d = parse(out, "json")
    assert d.validate().ok and d.components()[0] == 1


def test_build_dt(capsys):
    code, out, _ = run(capsys, "build", "--n", "2", "--format", "dt")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    vals = [int(v) for v in lines[0].split()]
    assert len(vals) == 25 and all(v % 2 == 0 for v in vals)


@pytest.mark.parametrize("argv", [["build", "--n", "0"], ["build", "--n", "x"],
                                  ["build"], ["frobnicate"], ["verify", "--n-max", "0"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_build_to_file(tmp_path, capsys):
    out = tmp_path / "l1.pd"
    assert run(capsys, "build", "--n", "1", "--format", "pd", "--out", str(out))[0] == 0
    assert parse(out.read_text(), "pd").crossing_count == 9


def test_verify_three(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "3")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1 and report["pass"]
    assert [r["census_count"] for r in report["rows"]] == [2, 8, 32]
    assert all(r["oracle_agree"] for r in report["rows"])


def test_verify_chi_column(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "8", "--jobs", "2")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["n"] for r in rows] == list(range(1, 9))
    assert [r["chi"] for r in rows] == [1 - 2 * n for n in range(1, 9)]


def _corrupt(tmp_path):
    bad = tmp_path / "tiles.json"
    bad.write_bytes(construct.default_tile_path().read_bytes() + b" ")
    return bad


def test_corrupted_tile_file_flag(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--n-max", "1", "--tile-file", str(_corrupt(tmp_path)))
    assert code == 3 and "sha256" in err


def test_corrupted_tile_file_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(construct.TILE_ENV, str(_corrupt(tmp_path)))
    assert run(capsys, "build", "--n", "1")[0] == 3


def test_verify_failure_exit_1(capsys, monkeypatch):
    from knotforge import cli

    real = cli.census.count_surfaces
    monkeypatch.setattr(cli.census, "count_surfaces", lambda n: real(n) + (n == 2))
    code, out, err = run(capsys, "verify", "--n-max", "3")
    assert code == 1
    assert "n=2" in err
    assert not json.loads(out)["pass"]


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "5")
    assert code == 0
    r = json.loads(out)
    assert r["count"] == 512 and r["components"] == 9 and r["closed_form_ok"]


def test_oracle_n(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "1")
    assert code == 0
    r = json.loads(out)
    assert r["agree"] is True and r["count"] == 2 and r["fraction"] == "23/-4"


def test_oracle_fraction(capsys):
    code, out, _ = run(capsys, "oracle", "--p", "5", "--q", "2")
    assert code == 0
    assert json.loads(out)["expansions"] == [[-2, -2], [2, 2]]


@pytest.mark.parametrize("argv", [["oracle"], ["oracle", "--p", "4", "--q", "2"],
                                  ["oracle", "--n", "1", "--p", "3"], ["oracle", "--n", "5"]])
def test_oracle_usage(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_invariants_trefoil(capsys):
    code, out, _ = run(capsys, "invariants", str(DATA / "trefoil.json"))
    assert code == 0
    r = json.loads(out)
    assert r["genus"] == 1 and r["determinant"] == 3
    assert r["alexander"] == {"0": 1, "1": -1, "2": 1}
    assert r["special"] and r["alternating"] and r["prime"]


def test_invariants_figure_eight_pd(tmp_path, capsys):
    f = tmp_path / "f8.pd"
    f.write_text("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]")
    code, out, _ = run(capsys, "invariants", str(f))
    r = json.loads(out)
    assert code == 0 and r["determinant"] == 5 and not r["special"]


def test_invariants_unknot_kink(capsys):
    code, out, _ = run(capsys, "invariants", str(DATA / "unknot_kink.json"))
    r = json.loads(out)
    assert code == 0 and r["genus"] == 0 and r["prime"] is None and not r["reduced"]


@pytest.mark.parametrize("content", ["garbage", '{"crossings": [[1,2,3,4]]}', "{}"])
def test_invariants_parse_errors(tmp_path, capsys, content):
    f = tmp_path / "bad.json"
    f.write_text(content)
    assert run(capsys, "invariants", str(f))[0] == 2


def test_invariants_missing_file(tmp_path, capsys):
    assert run(capsys, "invariants", str(tmp_path / "none.json"))[0] == 2


def test_console_entry_point_deterministic():
    cmd = [sys.executable, "-m", "knotforge.cli", "verify", "--n-max", "4"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["pass"]
