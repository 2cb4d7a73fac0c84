from __future__ import annotations

import csv
import json

import pytest

from ringfano.cli import main, named_pattern
from ringfano.constructions import build_B, build_complete
from ringfano.io import read_3g, write_3g

PNG = b"\x89PNG\r\n\x1a\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_roundtrip(tmp_path, capsys):
    out = tmp_path / "b8.3g"
    code, _, _ = run(capsys, "gen", "--kind", "b", "--n", "8", "--out", str(out))
    assert code == 0 and read_3g(out) == build_B(8)
    star = tmp_path / "star.3g"
    code, _, _ = run(capsys, "gen", "--kind", "ring-star", "--t", "4", "--labeling", "0,1,2,3,0,4,5,6", "--out", str(star))
    assert code == 0 and read_3g(star).n == 7


def test_gen_bad_parameters_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--kind", "pg2", "--q", "6", "--out", str(tmp_path / "x"))
    assert code == 2 and err.startswith("error:")


def test_find_ring_and_fano(tmp_path, capsys):
    host = tmp_path / "k10.3g"
    write_3g(build_complete(10), host)
    code, out, _ = run(capsys, "find-ring", "--in", str(host))
    assert code == 0 and json.loads(out)["t"] == 2
    code, out, _ = run(capsys, "find-fano", "--in", str(host), "--json")
    assert code == 0 and json.loads(out)["found"] is True
    b = tmp_path / "b20.3g"
    write_3g(build_B(20), b)
    code, out, _ = run(capsys, "find-fano", "--in", str(b))
    assert code == 0 and out.startswith("not found: stopped at stage")


def test_missing_input_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "find-ring", "--in", str(tmp_path / "absent.3g"))
    assert code == 2 and "absent.3g" in err


def test_brute_ex_and_check_lm(tmp_path, capsys):
    code, out, _ = run(capsys, "brute-ex", "--n", "4", "--forbid", "k43")
    assert code == 0 and json.loads(out)["value"] == 3
    code, _, err = run(capsys, "brute-ex", "--n", "9", "--forbid", "k43")
    assert code == 2 and "desk-scale cap" in err
    code, _, _ = run(capsys, "brute-ex", "--n", "4", "--forbid", "petersen")
    assert code == 2
    ring = tmp_path / "r3.3g"
    run(capsys, "gen", "--kind", "ring", "--t", "3", "--out", str(ring))
    code, out, _ = run(capsys, "check-lm", "--in", str(ring), "--m", "4")
    assert code == 0 and json.loads(out)["lm_property"] is True


def test_named_patterns():
    assert named_pattern("R5").n == 10
    assert named_pattern("k43-e").edge_count == 3


def test_density_csv_and_plot(tmp_path, capsys):
    table, fig = tmp_path / "b.csv", tmp_path / "b.png"
    code, _, err = run(capsys, "density", "--construction", "b", "--n-list", "50,100,200", "--csv", str(table), "--plot", str(fig))
    assert code == 0 and "limit 0.75" in err
    with open(table, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "density", "gap_to_limit"] and [r[0] for r in rows[1:]] == ["50", "100", "200"]
    assert fig.read_bytes()[:8] == PNG


def test_density_optimize(tmp_path, capsys):
    fig = tmp_path / "s.png"
    code, out, _ = run(capsys, "density", "--optimize", "s-base", "--plot", str(fig))
    doc = json.loads(out)
    assert code == 0 and doc["max"] == pytest.approx(0.577350, abs=1e-6)
    assert fig.read_bytes()[:8] == PNG
    code, _, _ = run(capsys, "density")
    assert code == 2


def test_verify_subcommand(tmp_path, capsys):
    report, figs = tmp_path / "r.json", tmp_path / "figs"
    code, out, _ = run(capsys, "verify", "--only", "bound-constants,pg2-pair-coverage", "--json", str(report), "--figures", str(figs))
    assert code == 0 and "PASS     bound-constants" in out
    assert json.loads(report.read_text())["summary"]["pass"] == 2
    assert (figs / "s_density_curves.png").exists()


def test_verify_bad_fixture_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.3g"
    bad.write_text("garbage", encoding="utf-8")
    report = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--only", "bound-constants", "--host", str(bad), "--json", str(report))
    assert code == 2 and json.loads(report.read_text())["file"] == str(bad)
