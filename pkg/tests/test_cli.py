import json

import pytest

from kslab.cli import graph_parse, main
from kslab.graphs import make_standard


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ring_ranks(capsys):
    code, out, _ = run(capsys, "ring", "--n", "2", "--ranks")
    assert code == 0
    assert json.loads(out) == [1, 3, 2]


def test_ring_full_report(capsys):
    code, out, _ = run(capsys, "ring", "--n", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["ranks"] == [1, 5, 9, 5]
    assert rep["leading_check"]["leading_failures"] == []


def test_conjecture_scan(capsys):
    code, out, _ = run(capsys, "conjecture", "--n", "3")
    assert code == 0
    assert json.loads(out)["counterexamples"] == []


def test_mvss_exit_zero(capsys):
    code, out, _ = run(capsys, "mvss", "--n", "2")
    assert code == 0
    assert json.loads(out)["all_exact"] is True


def test_sparse_and_ncm(capsys):
    code, out, _ = run(capsys, "sparse", "--n", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["counts"] == {"0": 1, "1": 3, "2": 2}
    code, out, _ = run(capsys, "ncm", "--n", "3")
    assert code == 0
    assert json.loads(out)["count"] == 5


def test_csv_format(capsys):
    code, out, _ = run(capsys, "sparse", "--n", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "key,value"
    assert any(line.startswith("counts.2,") for line in out.splitlines())


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_graph_file_roundtrip(tmp_path, capsys):
    path = tmp_path / "c2.json"
    path.write_text(json.dumps(make_standard("C", 2).to_json()))
    G = graph_parse(str(path))
    assert sorted(G.vertices) == [0, 1, 2, 3]
    code, out, _ = run(capsys, "sgring", "--graph", str(path))
    assert code == 0
    ranks = json.loads(out)["ranks"]
    assert ranks[:3] == [1, 3, 2] and not any(ranks[3:])


def test_malformed_graphs_exit_two(tmp_path, capsys):
    odd_odd = tmp_path / "bad.json"
    odd_odd.write_text(json.dumps({
        "vertices": [{"id": 0, "parity": 1}, {"id": 1, "parity": 1}],
        "edges": [[0, 1]]}))
    code, _, err = run(capsys, "sgring", "--graph", str(odd_odd))
    assert code == 2 and "parit" in err
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"vertices": [], "edges": []}))
    code, _, err = run(capsys, "sgring", "--graph", str(empty))
    assert code == 2
    code, _, err = run(capsys, "sgring", "--graph", str(tmp_path / "no.json"))
    assert code == 2


def test_budget_exit_two(capsys, monkeypatch):
    code, _, err = run(capsys, "cohomology", "--graph", "theta",
                       "--budget", "1000")
    assert code == 2 and "budget" in err
    monkeypatch.setenv("KRL_BUDGET", "1000")
    code, _, err = run(capsys, "cohomology", "--graph", "theta")
    assert code == 2 and "budget" in err


def test_cohomology_and_fold(capsys):
    code, out, _ = run(capsys, "cohomology", "--graph", "C2")
    assert code == 0
    assert json.loads(out)["match"] is True
    code, out, _ = run(capsys, "fold", "--graph", "theta")
    assert code == 0
    assert json.loads(out)["count"] == 11


def test_complex_export(tmp_path, capsys):
    out_file = tmp_path / "complex.txt"
    code, _, _ = run(capsys, "cohomology", "--graph", "C1",
                     "--export", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 6 + 12 + 8


def test_out_file_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["flags", "--n", "2", "--op", "cover",
                 "--out", str(a), "--seed", "7"]) == 0
    assert main(["flags", "--n", "2", "--op", "cover",
                 "--out", str(b), "--seed", "7"]) == 0
    assert a.read_bytes() == b.read_bytes()
