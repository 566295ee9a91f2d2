import json

import pandas as pd
import pytest
from click.testing import CliRunner

from app import app
from functions.qcbo_io import read_lp


@pytest.fixture
def runner():
    return CliRunner()


def test_catalog_lists_builders_and_data_files(runner):
    result = runner.invoke(app, ["catalog"])
    assert result.exit_code == 0
    assert "wheel k" in result.output
    assert "hex_lattice rows cols" in result.output
    assert "medial_herschel [data]" in result.output


def test_run_k4_emits_four_dot_files(runner, tmp_path):
    record_path = tmp_path / "k4.json"
    result = runner.invoke(app, [
        "run", "--catalog", "k4", "--emit-dot", "--out-dir", str(tmp_path), "--json", str(record_path),
    ])
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in tmp_path.glob("*.dot")) == [
        "k4_final.dot", "k4_graph.dot", "k4_line.dot", "k4_partial.dot",
    ]
    doc = json.loads(record_path.read_text(encoding="utf-8"))
    assert doc["row"]["qcbo_solvable"] is True
    assert doc["row"]["verified_3sto"] is True
    assert doc["row"]["nodes"] == 4 and doc["row"]["edges"] == 6
    assert doc["record"]["qcbo_status"] == "Feasible"


def test_run_wheel_five_is_not_solvable(runner, tmp_path):
    record_path = tmp_path / "w5.json"
    result = runner.invoke(app, ["run", "--catalog", "wheel", "--param", "5", "--json", str(record_path)])
    assert result.exit_code == 0, result.output
    doc = json.loads(record_path.read_text(encoding="utf-8"))
    assert doc["row"]["qcbo_solvable"] is False
    assert doc["row"]["sto_expected"] == "no"
    assert doc["row"]["conjecture_degree_le_4"] is False


def test_run_with_given_spins(runner, tmp_path):
    record_path = tmp_path / "k4.json"
    result = runner.invoke(app, [
        "run", "--catalog", "k4", "--spins=-1 1 1 -1 -1 -1", "--json", str(record_path),
    ])
    assert result.exit_code == 0, result.output
    record = json.loads(record_path.read_text(encoding="utf-8"))["record"]
    assert record["method"] == "greedy"
    assert record["orientation_string"] == "BBFFFFFFFFFF"
    assert record["verified_sto"] is True


def test_run_lp_export(runner, tmp_path):
    result = runner.invoke(app, ["run", "--catalog", "k4", "--lp", "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    form = read_lp((tmp_path / "k4.lp").read_text(encoding="utf-8"))
    assert form.m == 6


def test_run_from_file(runner, tmp_path):
    edges = tmp_path / "square.edges"
    edges.write_text("4 4\n0 1\n1 2\n2 3\n0 3\n", encoding="utf-8")
    record_path = tmp_path / "square.json"
    result = runner.invoke(app, ["run", "--file", str(edges), "--json", str(record_path)])
    assert result.exit_code == 0, result.output
    doc = json.loads(record_path.read_text(encoding="utf-8"))
    assert doc["record"]["graph_name"] == "square"
    assert doc["row"]["qcbo_solvable"] is True


def test_run_missing_file_fails(runner, tmp_path):
    result = runner.invoke(app, ["run", "--file", str(tmp_path / "none.edges")])
    assert result.exit_code == 1
    assert "❌" in result.output


def test_run_malformed_file_fails(runner, tmp_path):
    edges = tmp_path / "bad.edges"
    edges.write_text("3 2\n0 1\n", encoding="utf-8")
    result = runner.invoke(app, ["run", "--file", str(edges)])
    assert result.exit_code == 1


def test_run_unknown_catalog_fails(runner):
    result = runner.invoke(app, ["run", "--catalog", "dodecahedron"])
    assert result.exit_code == 1
    assert "dodecahedron" in result.output


def test_table_only_petersen(runner, tmp_path):
    csv_path = tmp_path / "table.csv"
    json_path = tmp_path / "table.json"
    result = runner.invoke(app, ["table", "--only", "petersen", "--csv", str(csv_path), "--json", str(json_path)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(csv_path)
    assert list(frame["name"]) == ["petersen"]
    assert bool(frame["qcbo_solvable"][0]) is True
    rows = json.loads(json_path.read_text(encoding="utf-8"))
    assert rows[0]["nodes"] == 10 and rows[0]["edges"] == 15
    assert rows[0]["chromatic_info"] == "3"


def test_table_empty_subset_is_header_only(runner, tmp_path):
    csv_path = tmp_path / "empty.csv"
    result = runner.invoke(app, ["table", "--only", "", "--csv", str(csv_path)])
    assert result.exit_code == 0, result.output
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("name,nodes,edges,chromatic_info")


def test_table_rows_in_request_order_with_jobs(runner, tmp_path):
    json_path = tmp_path / "table.json"
    result = runner.invoke(app, [
        "table", "--only", "complete:6 path:4 wheel:4", "--jobs", "3", "--json", str(json_path),
    ])
    assert result.exit_code == 0, result.output
    rows = json.loads(json_path.read_text(encoding="utf-8"))
    assert [r["name"] for r in rows] == ["complete:6", "path:4", "wheel:4"]
    assert [r["qcbo_solvable"] for r in rows] == [False, True, True]


def test_table_unknown_name_fails(runner):
    result = runner.invoke(app, ["table", "--only", "nosuch"])
    assert result.exit_code == 1


def test_verify_cycle_word(runner, tmp_path):
    word = tmp_path / "c5.word"
    word.write_text("1521324354\n", encoding="utf-8")
    result = runner.invoke(app, ["verify", str(word), "--catalog", "cycle", "--param", "5"])
    assert result.exit_code == 0, result.output
    assert "represents: true" in result.output


def test_verify_reports_diff(runner, tmp_path):
    word = tmp_path / "perm.word"
    word.write_text("1234", encoding="utf-8")
    result = runner.invoke(app, ["verify", str(word), "--catalog", "cycle", "--param", "4"])
    assert result.exit_code == 0, result.output
    assert "represents: false" in result.output
    assert "extra: {1,3}, {2,4}" in result.output


def test_verify_malformed_word(runner, tmp_path):
    word = tmp_path / "bad.word"
    word.write_text("12x", encoding="utf-8")
    result = runner.invoke(app, ["verify", str(word), "--catalog", "cycle", "--param", "4"])
    assert result.exit_code == 1


def test_verify_alphabet_mismatch(runner, tmp_path):
    word = tmp_path / "short.word"
    word.write_text("123", encoding="utf-8")
    result = runner.invoke(app, ["verify", str(word), "--catalog", "cycle", "--param", "4"])
    assert result.exit_code == 1


def test_verify_searches_without_word(runner):
    result = runner.invoke(app, ["verify", "--catalog", "cycle", "--param", "5", "--uniform-k", "2"])
    assert result.exit_code == 0, result.output
    assert "word: 0 " in result.output


def test_export_lp(runner, tmp_path):
    lp_path = tmp_path / "w4.lp"
    json_path = tmp_path / "w4.json"
    result = runner.invoke(app, [
        "export-lp", "--catalog", "wheel", "--param", "4", "--out", str(lp_path), "--json", str(json_path),
    ])
    assert result.exit_code == 0, result.output
    assert lp_path.read_text(encoding="utf-8").startswith("\\ wheel_4")
    assert json.loads(json_path.read_text(encoding="utf-8"))["format"] == "qcbo"


def test_source_options_are_exclusive(runner):
    result = runner.invoke(app, ["export-lp"])
    assert result.exit_code != 0
