import json
import subprocess
import sys
from pathlib import Path

import pytest

from frcodes.cli import run
from frcodes.constructions import build_regular_graph_split, fill_incidence
from frcodes.core import code_from_json, code_to_json, matrix_to_code
from frcodes.dss import simulate_failure

from conftest import EXAMPLE5_PARAMS, TABLE1_PARAMS

GOLDEN = Path(__file__).parent / "golden"


def invoke(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_example5_matrix(capsys):
    code, out, _ = invoke(capsys, "construct", "--n", "6", "--d", "4", "--rho", "3", "--format", "matrix")
    assert code == 0
    assert out == (GOLDEN / "example5.matrix").read_text()
    assert [len(line) for line in out.splitlines()] == [8] * 6


def test_construct_json(capsys):
    code, out, _ = invoke(capsys, "construct", "--n", "5", "--d", "4", "--rho", "2", "--theta", "10")
    assert code == 0
    obj = json.loads(out)
    assert obj["provenance"] == "algorithm1"
    assert obj["nodes"][2] == [2, 8, 9, 10]


@pytest.mark.parametrize("method", ["split-cycle", "circulant", "adj3", "adj4"])
def test_construct_graph_methods(capsys, method):
    code, out, _ = invoke(capsys, "construct", "--n", "6", "--d", "4", "--method", method)
    assert code == 0
    c = code_from_json(out)
    assert c.provenance == method
    assert c.rho == (4 if method.startswith("adj") else 2)


def test_construct_infeasible_args(capsys):
    assert invoke(capsys, "construct", "--n", "5", "--d", "4", "--rho", "3")[0] == 2
    assert invoke(capsys, "construct", "--n", "5", "--d", "4", "--rho", "2", "--theta", "9")[0] == 2
    assert invoke(capsys, "construct", "--n", "5")[0] == 2
    assert invoke(capsys, "construct", "--n", "x")[0] == 2
    code, _, err = invoke(capsys, "construct", "--n", "5", "--d", "2", "--method", "adj3")
    assert code == 3 and "NotCompletable" in err


def test_enumerate_n3(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--n", "3", "--format", "csv")
    assert code == 0
    header, row = out.splitlines()
    assert header == "n,admissible,constructed,classes"
    assert row.startswith("3,1,1,")


def test_enumerate_golden(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--n", "3", "--n-to", "10", "--format", "csv")
    assert code == 0 and out == (GOLDEN / "enumerate_3_10.csv").read_text()


def test_enumerate_filter_and_dedupe(capsys):
    _, out, _ = invoke(capsys, "enumerate", "--n", "6", "--filter", "none", "--dedupe")
    assert out.splitlines()[1] == "6,11,11,11"


def test_enumerate_jsonl(capsys, tmp_path):
    target = tmp_path / "cat.jsonl"
    code, out, _ = invoke(capsys, "enumerate", "--n", "6", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert len(lines) == 10
    entries = [json.loads(line) for line in lines]
    assert all(e["valid"] and e["canonical_digest"] for e in entries)
    assert [(e["d"], e["rho"]) for e in entries] == sorted((e["d"], e["rho"]) for e in entries)


def test_graph_adj4_fails(capsys):
    assert invoke(capsys, "graph", "--n", "5", "--d", "2", "--method", "adj4")[0] == 3


def test_graph_dot_golden(capsys):
    code, out, _ = invoke(capsys, "graph", "--n", "8", "--d", "4", "--method", "split-cycle", "--format", "dot")
    assert code == 0 and out == (GOLDEN / "split_8_4.dot").read_text()
    assert out == build_regular_graph_split(8, 4).to_dot()


def test_graph_formats(capsys):
    _, out, _ = invoke(capsys, "graph", "--n", "4", "--d", "2", "--method", "circulant", "--format", "json")
    assert json.loads(out) == {"n": 4, "d": 2, "edges": [[1, 2], [1, 4], [2, 3], [3, 4]]}
    _, out, _ = invoke(capsys, "graph", "--n", "4", "--d", "2", "--method", "circulant", "--format", "matrix")
    assert out == "0101\n1010\n0101\n1010\n"
    _, out, _ = invoke(capsys, "graph", "--n", "4", "--d", "2", "--format", "csv")
    assert out.splitlines()[0] == "a,b"
    assert invoke(capsys, "graph", "--n", "4", "--d", "2", "--method", "alg1")[0] == 2
    assert invoke(capsys, "graph", "--n", "5", "--d", "3")[0] == 2


def test_simulate_from_stdin(capsys, monkeypatch):
    lib = matrix_to_code(fill_incidence(EXAMPLE5_PARAMS), EXAMPLE5_PARAMS, "algorithm1")
    payload = json.dumps(code_to_json(lib))
    code, out, _ = invoke(capsys, "simulate", "--fail", "1", stdin=payload, monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out) == simulate_failure(lib, 1).to_json()


def test_simulate_all_nodes_with_recovery(capsys, tmp_path, table1_code):
    path = tmp_path / "t1.json"
    path.write_text(json.dumps(code_to_json(table1_code)))
    code, out, _ = invoke(capsys, "simulate", str(path), "--k", "4", "--B", "9")
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert [r["failed"] for r in reports] == [1, 2, 3, 4, 5]
    assert all(r["helpers"] == 4 and r["bandwidth"] == 4 for r in reports)
    assert all(r["supported_file_size"] == 10 and r["mds_ok"] for r in reports)
    assert reports[0]["assignments"] == [[1, 2], [2, 3], [3, 4], [4, 5]]


def test_simulate_errors(capsys, tmp_path, table1_code):
    path = tmp_path / "t1.json"
    path.write_text(json.dumps(code_to_json(table1_code)))
    assert invoke(capsys, "simulate", str(path), "--fail", "9")[0] == 2
    assert invoke(capsys, "simulate", str(path), "--B", "3")[0] == 2
    assert invoke(capsys, "simulate", str(tmp_path / "missing.json"))[0] == 2
    single = tmp_path / "one.json"
    single.write_text('{"n":1,"theta":1,"d":1,"rho":1,"nodes":[[1]]}')
    assert invoke(capsys, "simulate", str(single), "--fail", "1")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"n":2,"theta":2,"d":1,"rho":1,"nodes":[[1],[1]]}')
    assert invoke(capsys, "simulate", str(bad))[0] == 2


def test_equiv(capsys, tmp_path, table1_code, alg1_5_10_code, four_cycle_code):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(code_to_json(table1_code)))
    b.write_text(json.dumps(code_to_json(alg1_5_10_code)))
    _, out, _ = invoke(capsys, "equiv", str(a), str(b))
    result = json.loads(out)
    assert result["equivalent"] is False and result["fingerprints_equal"] is False
    assert json.loads(invoke(capsys, "equiv", str(a), str(a))[1])["equivalent"] is True
    c = tmp_path / "c4.json"
    c.write_text(json.dumps(code_to_json(four_cycle_code)))
    result = json.loads(invoke(capsys, "equiv", str(c), str(c), "--oracle")[1])
    assert result["equivalent"] is result["brute_force"] is True


def test_equiv_oracle_too_large(capsys, tmp_path, table1_code):
    # 5! * 10! is above the default exhaustive bound
    a = tmp_path / "a.json"
    a.write_text(json.dumps(code_to_json(table1_code)))
    assert invoke(capsys, "equiv", str(a), str(a), "--oracle")[0] == 4


def test_export_formats(capsys, tmp_path, table1_code, table1_matrix):
    path = tmp_path / "t1.json"
    path.write_text(json.dumps(code_to_json(table1_code)))
    _, out, _ = invoke(capsys, "export", str(path), "--format", "matrix")
    assert out == table1_matrix.to_text()
    mpath = tmp_path / "t1.matrix"
    mpath.write_text(out)
    _, out, _ = invoke(capsys, "export", str(mpath), "--format", "json")
    assert code_from_json(out) == table1_code
    _, out, _ = invoke(capsys, "export", str(path), "--format", "csv")
    assert out.splitlines()[:2] == ["node,packets", "1,1 2 3 4"]
    _, out, _ = invoke(capsys, "export", str(path), "--format", "dot")
    assert out.count("--") == 10 and out.endswith("}\n")


def test_export_dot_needs_rho_2(capsys, tmp_path, example5_code):
    path = tmp_path / "e5.json"
    path.write_text(json.dumps(code_to_json(example5_code)))
    assert invoke(capsys, "export", str(path), "--format", "dot")[0] == 2


def test_outputs_end_with_newline(capsys):
    for argv in (
        ["construct", "--n", "6", "--d", "4", "--rho", "3", "--format", "csv"],
        ["graph", "--n", "6", "--d", "3"],
        ["enumerate", "--n", "4"],
    ):
        code, out, _ = invoke(capsys, *argv)
        assert code == 0 and out.endswith("\n")


def test_subprocess_pipeline():
    """construct | simulate through real processes matches the library."""
    construct = subprocess.run(
        [sys.executable, "-m", "frcodes", "construct", "--n", "5", "--d", "4", "--rho", "2", "--format", "json"],
        check=True, capture_output=True, text=True,
    )
    sim = subprocess.run(
        [sys.executable, "-m", "frcodes", "simulate", "--fail", "1"],
        input=construct.stdout, check=True, capture_output=True, text=True,
    )
    lib = matrix_to_code(fill_incidence(TABLE1_PARAMS), TABLE1_PARAMS)
    assert json.loads(sim.stdout) == simulate_failure(lib, 1).to_json()


def test_subprocess_deterministic_and_exit_code():
    argv = [sys.executable, "-m", "frcodes", "enumerate", "--n", "8", "--format", "json"]
    a = subprocess.run(argv, check=True, capture_output=True).stdout
    b = subprocess.run(argv, check=True, capture_output=True).stdout
    assert a == b
    bad = subprocess.run([sys.executable, "-m", "frcodes", "graph", "--n", "5", "--d", "2", "--method", "adj4"],
                         capture_output=True, text=True)
    assert bad.returncode == 3 and bad.stdout == ""
    usage = subprocess.run([sys.executable, "-m", "frcodes", "bogus"], capture_output=True, text=True)
    assert usage.returncode == 2
