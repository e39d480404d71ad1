import csv
import io
import json

import pytest

from axiograph.analysis import CSV_HEADER
from axiograph.cli import main
from axiograph.graph import Clustering
from axiograph.io import parse_clustering, parse_graph

G1 = "a b 1\na a 2\nb b 2\n"
G2 = "a b 1\na a 2\nb b 2\nc c 4\n"


def run(*argv):
    out = io.StringIO()
    code = main(list(map(str, argv)), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"g1": G1, "g2": G2, "c1": "a 0\nb 1\n", "bad": "a b 1\na b 2\n",
                       "empty": "", "c0": ""}.items():
        paths[name] = tmp_path / f"{name}.txt"
        paths[name].write_text(text)
    return paths


def test_quality(files):
    code, out = run("quality", files["g1"], files["c1"], "--q", "modularity")
    assert code == 0
    assert float(out) == pytest.approx(1 / 6, abs=1e-12)


def test_optimize_exact(files):
    code, out = run("optimize", files["g2"], "--q", "modularity")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# quality 0.48"
    assert lines[1] == "# clustering {{a,b},{c}}"
    assert "# optima 1" in lines and "# partitions 5" in lines
    g = parse_graph(files["g2"].read_text())
    assert parse_clustering(out, g) == Clustering([[0, 1], [2]])


def test_optimize_greedy(files):
    code, out = run("optimize", files["g2"], "--q", "modularity", "--method", "greedy",
                    "--seed", 3)
    assert code == 0 and "# seed 3" in out and "# clustering {{a,b},{c}}" in out


def test_counterexamples():
    code, out = run("counterexamples")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 12 and lines[-1] == "# 10/10 values match"
    assert all(" ok" in line for line in lines[1:-1])


def test_axioms_lines():
    code, out = run("axioms", "--q", "modularity", "--axiom", "locality", "--trials", 5)
    assert code == 0 and out.startswith("locality") and "falsified" in out


def test_axioms_json():
    code, out = run("axioms", "--q", "cpm:0.5", "--axiom", "permutation", "--trials", 5,
                    "--json")
    data = json.loads(out)
    assert code == 0 and data[0]["axiom"] == "permutation" and data[0]["trials_run"] == 5


def test_sweep_to_file(tmp_path):
    path = tmp_path / "sweep.csv"
    code, out = run("sweep", "--q-grid", "100,0", "--w-grid", "80", "--b-grid", "20,5",
                    "-o", path)
    assert code == 0 and out == ""
    rows = list(csv.reader(path.open()))
    assert tuple(rows[0]) == CSV_HEADER and len(rows) == 3


def test_sweep_log_grid():
    code, out = run("sweep", "--q-grid", "0,2", "--w-grid", "log:0.1:10:3", "--b-grid", "1")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and [r[2] for r in rows[1:]] == ["0.1", "1", "10"]


def test_ring():
    code, out = run("ring", "--n", 4, "--s", 3, "--q", "modularity")
    assert code == 0 and "arcs 1 1 1 1" in out and "cliques_per_cluster 1" in out


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["quality"],
    ["optimize", "missing.txt", "--q", "nonsense"],
    ["axioms", "--q", "modularity", "--trials", "0"],
    ["ring", "--n", "2", "--s", "3", "--q", "modularity"],
    ["ring", "--n", "4", "--s", "3", "--q", "coco"],
    ["sweep", "--q-grid", "0,0"],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 1


def test_missing_file():
    assert run("optimize", "/nonexistent/graph.txt", "--q", "modularity")[0] == 1


def test_parse_error(files):
    assert run("optimize", files["bad"], "--q", "modularity")[0] == 2
    assert run("quality", files["g2"], files["c1"], "--q", "modularity")[0] == 2


def test_infeasible(tmp_path, files):
    path = tmp_path / "big.txt"
    path.write_text("".join(f"n{i} n{i + 1} 1\n" for i in range(14)))
    assert run("optimize", path, "--q", "modularity")[0] == 3
    assert run("optimize", files["g2"], "--q", "modularity", "--max-exact-n", 2)[0] == 3
    assert run("optimize", path, "--q", "modularity", "--method", "greedy")[0] == 0
