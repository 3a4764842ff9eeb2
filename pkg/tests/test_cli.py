import csv
import io
import math
import subprocess
import sys

import pytest

from commqual.cli import main

BARBELL = "0 1\n1 2\n0 2\n2 3\n3 4\n4 5\n3 5\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "g.txt").write_text(BARBELL)
    (tmp_path / "c.txt").write_text("0 1 2\n3 4 5\n")
    (tmp_path / "s.txt").write_text("0\n1\n2\n3\n4\n5\n")
    return tmp_path


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_quality_barbell(files, capsys):
    code = main(["quality", "--graph", str(files / "g.txt"), "--clusters", str(files / "c.txt"),
                 "--metrics", "all", "--samples", "5000", "--seed", "7"])
    assert code == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 10
    got = {r["metric_name"]: float(r["value"]) for r in rows}
    assert got["modularity"] == pytest.approx(5 / 14, abs=1e-9)
    assert got["significance"] == pytest.approx(6 * math.log(15 / 7), abs=1e-9)
    assert all(r["mode"] == "exact" for r in rows)


def test_quality_to_file(files):
    out = files / "q.csv"
    assert main(["quality", "--graph", str(files / "g.txt"), "--clusters", str(files / "c.txt"),
                 "--clusters", str(files / "s.txt"), "--metrics", "mod,cc", "--out", str(out)]) == 0
    rows = _rows(out.read_text())
    assert [(r["clustering_id"], r["metric_name"]) for r in rows] == [
        ("c", "modularity"), ("c", "clustering_coefficient"),
        ("s", "modularity"), ("s", "clustering_coefficient")]


def test_compare(files, capsys):
    assert main(["compare", "--graph", str(files / "g.txt"), "--clusters", str(files / "s.txt"),
                 "--truth", str(files / "c.txt")]) == 0
    rows = _rows(capsys.readouterr().out)
    assert [r["metric"] for r in rows] == ["onmi", "fb3"]
    assert float(rows[1]["recall"]) < 1


def test_detect(files, capsys):
    out = files / "d.txt"
    assert main(["detect", "--graph", str(files / "g.txt"), "--algorithm", "louvain", "--out", str(out)]) == 0
    assert sorted(out.read_text().split("\n")) == ["", "0 1 2", "3 4 5"]
    assert "louvain-s7: 2 clusters" in capsys.readouterr().err


def test_prep(files):
    (files / "t.txt").write_text("0 1\n")
    (files / "p.txt").write_text("0 1\n1 2\n")
    assert main(["prep", "--graph", str(files / "p.txt"), "--truth", str(files / "t.txt"),
                 "--out-graph", str(files / "g2.txt"), "--out-truth", str(files / "t2.txt")]) == 0
    assert (files / "g2.txt").read_text().split() == ["0", "1"]
    assert (files / "t2.txt").read_text() == "0 1\n"


def test_pipeline_rerun_identical(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("[run]\nseed = 7\n[graph:a]\ndataset = football\n[graph:b]\ndataset = football\n")
    assert main(["pipeline", "--config", str(cfg), "--out-dir", str(tmp_path / "r1")]) == 0
    assert main(["pipeline", "--config", str(cfg), "--out-dir", str(tmp_path / "r2")]) == 0
    for f in (tmp_path / "r1").iterdir():
        assert f.read_bytes() == (tmp_path / "r2" / f.name).read_bytes()


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["quality", "--graph", "x"],
    ["detect", "--graph", "x", "--algorithm", "mcl"],
])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_bad_metric_is_usage_error(files):
    assert main(["quality", "--graph", str(files / "g.txt"), "--clusters", str(files / "c.txt"),
                 "--metrics", "bogus"]) == 1


def test_too_few_samples_is_usage_error(files):
    assert main(["quality", "--graph", str(files / "g.txt"), "--clusters", str(files / "c.txt"),
                 "--samples", "10", "--epsilon", "0.02"]) == 1


def test_data_errors(files, capsys):
    assert main(["quality", "--graph", str(files / "missing.txt"), "--clusters", str(files / "c.txt")]) == 2
    (files / "bad.txt").write_text("0 1\n2\n")
    assert main(["detect", "--graph", str(files / "bad.txt"), "--algorithm", "cnm"]) == 2
    assert "bad.txt:2:" in capsys.readouterr().err


def test_pipeline_without_output_dir(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("[graph:a]\ndataset = football\n")
    assert main(["pipeline", "--config", str(cfg)]) == 1


def test_version(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.startswith("commqual ")


def test_console_script_module_entry(files):
    proc = subprocess.run([sys.executable, "-m", "commqual.cli", "detect", "--graph", str(files / "g.txt"),
                           "--algorithm", "kcore"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(proc.stdout.split("\n")) == 7
