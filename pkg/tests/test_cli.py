import json
import subprocess
import sys

import pytest

from kempe.cli import run
from kempe.graph import catlin, cycle, to_dimacs, to_edge_list


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.col"
    path.write_text(to_dimacs(cycle(5)))
    return str(path)


def test_chi_corpus(capsys):
    code, out, _ = call(capsys, "chi", "--graph", "corpus:koester")
    assert code == 0 and out.splitlines()[0] == "4"


def test_chi_json(capsys, c5_file):
    code, out, _ = call(capsys, "chi", "--graph", c5_file, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "1" and doc["chi"] == 3 and len(doc["coloring"]) == 5


def test_edge_list_input(capsys, tmp_path):
    path = tmp_path / "c7.txt"
    path.write_text(to_edge_list(cycle(7)))
    code, out, _ = call(capsys, "chi", "--graph", str(path))
    assert code == 0 and out.startswith("3\n")


def test_critical(capsys, c5_file):
    code, out, _ = call(capsys, "critical", "--graph", c5_file, "--coloring", "[1,2,1,2,3]")
    assert code == 0
    assert out.splitlines() == ["color 1: 0", "color 2: 3", "color 3: 4"]


def test_chains(capsys, c5_file):
    code, out, _ = call(capsys, "chains", "--graph", c5_file, "--coloring", "[1,2,1,2,3]", "--pair", "1,3")
    assert code == 0 and out.splitlines() == ["0 4", "2"]


def test_backbone(capsys, c5_file):
    base = ["backbone", "--graph", c5_file, "--coloring", "[1,2,1,2,3]"]
    code, out, _ = call(capsys, *base, "--anchors", "0,3")
    assert code == 0 and out == "length 3: 0 1 2 3\n"
    code, out, _ = call(capsys, *base, "--anchors", "0,3", "--format", "dot")
    assert code == 0 and "penwidth=4" in out
    code, _, err = call(capsys, *base, "--anchors", "0,1")
    assert code == 2 and "critical" in err


def test_eliminate(capsys):
    code, out, _ = call(capsys, "eliminate", "--family", "complete", "--k", "4", "--coloring", "[1,2,3,4]",
                        "--colors", "1,2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == "BackboneFound" and doc["backbone"]["length"] == 1


def test_clique_from_stdin():
    gen = subprocess.run([sys.executable, "-m", "kempe", "gen", "--family", "cycle", "--n", "5"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "kempe", "clique", "--graph", "-", "--coloring", "[1,2,1,2,3]"],
                         input=gen.stdout, capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "clique Q_3: anchors 1:0 2:3 3:4"


def test_clique_missing_and_unused(capsys, c5_file):
    # every 5-coloring of C5[K2] lacks a clique; this one also leaves no color unused
    g = catlin(2, 2)
    colors = [1 + v % 5 for v in range(g.n)]
    code, out, _ = call(capsys, "clique", "--family", "catlin", "--n", "2", "--k", "2", "--coloring", json.dumps(colors))
    assert code == 1 and out == "no Kempe clique\n"
    code, out, _ = call(capsys, "clique", "--graph", c5_file, "--coloring", "[1,2,1,2,3]", "--q", "4")
    assert code == 1 and "not a correct coloring" in out


def test_search_exit_codes(capsys):
    base = ["search", "--family", "catlin", "--n", "2", "--k", "2", "--format", "json"]
    code, out, _ = call(capsys, *base, "--q", "5")
    assert code == 3 and json.loads(out)["status"] == "ProvenNonexistent"
    code, out, _ = call(capsys, *base, "--q", "6")
    assert code == 0 and json.loads(out)["status"] == "Found"
    code, out, _ = call(capsys, *base, "--q", "5", "--budget", "5")
    assert code == 1 and json.loads(out)["status"] == "BudgetExhausted"
    code, _, err = call(capsys, "search", "--family", "catlin", "--n", "2", "--k", "2")
    assert code == 2 and "--q" in err


def test_search_json_is_byte_identical(capsys):
    argv = ["search", "--graph", "corpus:koester", "--q", "4", "--strategy", "kempe-walk", "--seed", "7",
            "--format", "json"]
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first[0] == 0 and first == second


def test_environment_defaults(capsys, monkeypatch):
    monkeypatch.setenv("KEMPE_GRAPH", "corpus:catlin_2_2")
    monkeypatch.setenv("KEMPE_Q", "5")
    monkeypatch.setenv("KEMPE_FORMAT", "json")
    code, out, _ = call(capsys, "search")
    assert code == 3 and json.loads(out)["q"] == 5
    code, out, _ = call(capsys, "search", "--q", "6", "--format", "text")
    assert code == 0 and out.startswith("Found")


def test_immersion_verify(capsys, c5_file):
    code, out, _ = call(capsys, "immersion-verify", "--graph", c5_file, "--coloring", "[1,2,1,2,3]", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["report"]["edge_disjoint"] and doc["report"]["anchors_internal_free"]


def test_minor(capsys):
    code, out, _ = call(capsys, "minor", "--graph", "corpus:catlin_2_2", "--q", "6", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["model"]["valid"] and doc["model"]["hadwiger_lower_bound"] == 6
    code, out, _ = call(capsys, "minor", "--graph", "corpus:catlin_2_2", "--q", "6", "--format", "dot")
    assert code == 0 and out.count("cluster_") == 6


def test_gen_round_trip(capsys, tmp_path):
    code, out, _ = call(capsys, "gen", "--family", "wheel", "--n", "5")
    assert code == 0 and out.count("\ne ") + out.startswith("e ") == 10
    path = tmp_path / "w5.col"
    call(capsys, "gen", "--family", "wheel", "--n", "5", "--out", str(path))
    code, out, _ = call(capsys, "chi", "--graph", str(path))
    assert out.startswith("4\n")


def test_input_errors(capsys, tmp_path):
    code, _, err = call(capsys, "chi", "--graph", str(tmp_path / "missing.col"))
    assert code == 2 and err
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 1\n")
    assert call(capsys, "chi", "--graph", str(bad))[0] == 2
    assert call(capsys, "chi", "--graph", "corpus:nope")[0] == 2
    assert call(capsys, "chi")[0] == 2
    assert call(capsys, "critical", "--family", "cycle", "--n", "5", "--coloring", "[1,1,2,1,2]")[0] == 2
    assert call(capsys, "critical", "--family", "cycle", "--n", "5", "--coloring", "[1,2,1]")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["chains", "--family", "cycle", "--n", "5", "--pair", "x"])
    assert exc.value.code == 2


def test_corpus_commands(capsys):
    code, out, _ = call(capsys, "corpus", "list")
    assert code == 0 and set(out.split()) >= {"koester", "catlin_2_2", "catlin_2_3"}
    code, out, _ = call(capsys, "corpus", "check", "--format", "json")
    assert code == 0 and all(v == [] for v in json.loads(out)["corpus"].values())


def test_harness_subset(capsys):
    code, out, _ = call(capsys, "harness", "--checks", "1,5")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "2/2 checks passed"
    assert all(line.startswith("PASS") for line in lines[:2])
