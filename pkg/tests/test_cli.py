import csv

import pytest

from topcom.cli import (EXIT_IO, EXIT_MISMATCH, EXIT_OK, EXIT_UNKNOWN_VERTEX, EXIT_USAGE,
                        bench_pairs, main)
from topcom.graph import load_edge_list
from topcom import io as index_io

from worked_examples import DAG_EDGES, IN_LABELS, OUT_LABELS


@pytest.fixture
def dag_file(tmp_path):
    p = tmp_path / "dag.txt"
    p.write_text(DAG_EDGES)
    return p


@pytest.fixture
def dag_idx(tmp_path, dag_file):
    out = tmp_path / "dag.idx"
    assert main(["build", str(dag_file), "-o", str(out)]) == EXIT_OK
    return out


def decode_sections(path):
    """Read OUT_INDEX / IN_INDEX of a scalar index back into labelled dicts."""
    section, names, out = None, {}, {"OUT_INDEX": {}, "IN_INDEX": {}}
    for line in path.read_text().splitlines():
        if line.isupper() or line == "TOPCOM-INDEX":
            section = line
            continue
        toks = line.split()
        if section == "VERTEX_MAP":
            names[int(toks[0])] = toks[1]
        elif section in out:
            key, hub = names[int(toks[0])], names[int(toks[1])]
            out[section].setdefault(key, {})[hub] = int(toks[2])
    return out


def test_build_writes_label_table(dag_idx):
    got = decode_sections(dag_idx)
    assert got["OUT_INDEX"] == {k: v for k, v in OUT_LABELS.items() if v}
    assert got["IN_INDEX"] == {k: v for k, v in IN_LABELS.items() if v}


def test_build_prints_summary(dag_file, tmp_path, capsys):
    main(["build", str(dag_file), "-o", str(tmp_path / "x.idx"), "-v"])
    out = capsys.readouterr().out
    assert "t 2" in out and "V_DAG 19" in out and "E_DAG 26" in out
    assert "largest_scc 1" in out
    assert "iteration 2 nodes 5 edges 0 topo 1" in out


def test_empty_input(tmp_path):
    src = tmp_path / "empty.txt"
    src.write_text("")
    out = tmp_path / "e.idx"
    assert main(["build", str(src), "-o", str(out)]) == EXIT_OK
    idx = index_io.load(out)
    assert idx.n == 0 and idx.t == 0


@pytest.mark.parametrize("u,v,expect", [("a", "s", "6"), ("a", "a", "0"), ("s", "a", "unreachable")])
def test_query(dag_idx, capsys, u, v, expect):
    assert main(["query", str(dag_idx), u, v]) == EXIT_OK
    assert capsys.readouterr().out.strip() == expect


def test_exit_codes(dag_idx, tmp_path, capsys):
    assert main(["query", str(dag_idx), "a", "zz"]) == EXIT_UNKNOWN_VERTEX
    assert main(["query", str(tmp_path / "missing.idx"), "a", "s"]) == EXIT_IO
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n3\n")
    assert main(["build", str(bad), "-o", str(tmp_path / "b.idx")]) == EXIT_IO
    assert "line 2" in capsys.readouterr().err
    assert len({EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_UNKNOWN_VERTEX, EXIT_MISMATCH}) == 5


def test_batch_query(dag_idx, tmp_path):
    pairs = tmp_path / "pairs.txt"
    pairs.write_text("a s\ns a\nn r\n")
    out = tmp_path / "ans.txt"
    assert main(["batch-query", str(dag_idx), str(pairs), "-o", str(out)]) == EXIT_OK
    assert out.read_text().split() == ["6", "unreachable", "2"]
    pairs.write_text("a s\nq nope\n")
    assert main(["batch-query", str(dag_idx), str(pairs)]) == EXIT_UNKNOWN_VERTEX


def test_bench_two_vertices(tmp_path):
    g = tmp_path / "two.txt"
    g.write_text("x y\n")
    out = tmp_path / "bench.csv"
    assert main(["bench", str(g), "--queries", "1", "-o", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert [r["method"] for r in rows] == ["topcom", "bidirectional_dijkstra"]
    assert all(r["n_queries"] == "1" for r in rows)
    assert list(rows[0]) == ["method", "dataset", "n_queries", "mean_us", "median_us",
                             "p99_us", "build_s", "index_bytes"]


def test_bench_with_prebuilt_index(dag_file, dag_idx, tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert main(["bench", str(dag_file), "--index", str(dag_idx), "--queries", "300",
                 "--seed", "4", "--dataset", "fixture", "-o", str(out)]) == EXIT_OK
    assert "answers verified" in capsys.readouterr().out
    assert int(list(csv.DictReader(out.open()))[0]["index_bytes"]) == dag_idx.stat().st_size


def test_bench_pairs_deterministic():
    assert bench_pairs(100, 50, 3) == bench_pairs(100, 50, 3)
    assert bench_pairs(100, 50, 3) != bench_pairs(100, 50, 4)


def test_bench_rejects_zero_queries(dag_file):
    assert main(["bench", str(dag_file), "--queries", "0"]) == EXIT_USAGE


def test_synth(tmp_path):
    out = tmp_path / "s.txt"
    assert main(["synth", "10", "0", "-o", str(out)]) == EXIT_OK
    assert out.read_text() == ""
    assert main(["synth", "10000", "2", "--seed", "5", "-o", str(out)]) == EXIT_OK
    m = load_edge_list(out.read_text()).m
    assert abs(m - 20000) <= 1000
    again = tmp_path / "s2.txt"
    main(["synth", "10000", "2", "--seed", "5", "-o", str(again)])
    assert again.read_bytes() == out.read_bytes()
    assert main(["synth", "10", "-1"]) == EXIT_USAGE


def test_stats(dag_file, capsys):
    assert main(["stats", str(dag_file)]) == EXIT_OK
    out = capsys.readouterr().out.split("\n")
    assert "n 19" in out and "m 26" in out and "dag_nodes 19" in out


def test_rebuild_is_byte_identical(dag_file, tmp_path):
    a, b = tmp_path / "a.idx", tmp_path / "b.idx"
    main(["build", str(dag_file), "-o", str(a)])
    main(["build", str(dag_file), "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()
