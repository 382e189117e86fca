from __future__ import annotations

import subprocess
import sys

import pytest

from kpplanar import io
from kpplanar.cli import main
from kpplanar.graph import Graph


def write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def graph_file(tmp_path, g: Graph, name: str = "g.txt") -> str:
    return write(tmp_path, name, io.format_document(io.Document(g)))


def test_bound(capsys):
    assert main(["bound", "--n", "10", "--k", "2", "--p", "2"]) == 0
    assert capsys.readouterr().out.strip() == "34"


def test_tight_then_skeleton(tmp_path, capsys):
    out = str(tmp_path / "t.txt")
    assert main(["tight", "--N", "4", "--k", "3", "--p", "2", "--out", out]) == 0
    doc = io.parse(open(out).read())
    assert doc.config is not None
    assert main(["skeleton", "--in", out, "--wheel"]) == 0
    sk = io.parse(capsys.readouterr().out).graph
    assert sk.n == 4 * 6 + 4


def test_test_command_exit_codes(tmp_path, k7):
    yes = graph_file(tmp_path, k7)
    assert main(["test", "--in", yes, "--k", "2", "--p", "2"]) == 0
    assert main(["test", "--in", yes, "--mode", "41"]) == 1
    assert main(["test", "--in", yes, "--mode", "k1", "--k", "2"]) == 1
    assert main(["test", "--in", yes, "--k", "2", "--p", "1", "--budget", "2"]) == 2
    assert main(["test", "--in", yes, "--mode", "certificate"]) == 2


def test_fixed_clustering(tmp_path, capsys):
    text = "n 4\ne 0 0 1\ne 1 1 2\ne 2 2 3\ne 3 3 0\nc 0 0 1\nc 1 2 3\n"
    path = write(tmp_path, "c.txt", text)
    out = str(tmp_path / "w.txt")
    assert main(["test", "--in", path, "--clustering", "fixed", "--p", "1", "--out", out]) == 0
    assert io.parse(open(out).read()).config is not None
    assert main(["test", "--in", graph_file(tmp_path, Graph.complete(3)), "--clustering", "fixed"]) == 3


def test_family_and_certificate(tmp_path, capsys):
    out = str(tmp_path / "h.txt")
    assert main(["family", "h", "--h", "3", "--out", out]) == 0
    assert main(["test", "--in", out, "--mode", "certificate"]) == 1
    assert "q_min=18 > 16" in capsys.readouterr().out
    assert main(["cegraph", "--in", out]) == 1
    assert main(["planarize22", "--in", out]) == 1


def test_hbar_planarizes(tmp_path):
    out = str(tmp_path / "hb.txt")
    assert main(["family", "hbar", "--i", "2", "--out", out]) == 0
    assert main(["cegraph", "--in", out]) == 0
    cfg_out = str(tmp_path / "cfg.txt")
    assert main(["planarize22", "--in", out, "--out", cfg_out]) == 0
    assert io.parse(open(cfg_out).read()).config.p == 2


def test_reduce(tmp_path, capsys):
    sat = write(tmp_path, "phi.txt", "vars 3\npclause A 1 2 3 parent root\n")
    assert main(["reduce", "--in", sat]) == 0
    doc = io.parse(capsys.readouterr().out)
    assert (doc.graph.n, doc.graph.m) == (95, 317)
    assert main(["reduce", "--in", sat, "--witness", "TFF"]) == 0
    assert io.parse(capsys.readouterr().out).clustering is not None
    assert main(["reduce", "--in", sat, "--witness", "FFF"]) == 1
    assert main(["reduce", "--in", sat, "--witness", "TF"]) == 3


def test_export_formats(tmp_path, capsys):
    path = graph_file(tmp_path, Graph.complete(4))
    assert main(["export", "--in", path, "--format", "dot"]) == 0
    assert "graph G {" in capsys.readouterr().out
    assert main(["export", "--in", path, "--format", "svg"]) == 0
    assert capsys.readouterr().out.startswith("<svg")


def test_input_errors(tmp_path):
    bad = write(tmp_path, "bad.txt", "n 2\ne 0 0 9\n")
    assert main(["test", "--in", bad]) == 3
    assert main(["test", "--in", str(tmp_path / "missing.txt")]) == 3
    with pytest.raises(SystemExit) as err:
        main(["test", "--mode", "nope"])
    assert err.value.code == 3


def test_console_entry_point_reads_stdin():
    text = "n 3\ne 0 0 1\ne 1 1 2\ne 2 2 0\n"
    proc = subprocess.run([sys.executable, "-m", "kpplanar.cli", "test", "--mode", "k1", "--k", "1"],
                          input=text, capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "yes"
