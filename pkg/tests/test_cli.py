import csv
import json

import pytest

import edgesampling as es
from edgesampling.cli import main


@pytest.fixture
def graph_file(tmp_path):
    g = es.gen_community(50, 2, seed=0)
    p = tmp_path / "g.txt"
    es.write_edge_list(g, p)
    return p


class TestGenerate:
    def test_writes_edge_list_and_coords(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        xy = tmp_path / "g.xy"
        code = main([
            "generate", "--family", "sensor", "--n", "30", "--seed", "1",
            "--out", str(out), "--coords-out", str(xy),
        ])
        assert code == 0
        g = es.read_edge_list(out)
        assert g.num_nodes == 30
        assert es.read_coords(xy, 30).shape == (30, 2)

    def test_unknown_family_is_usage_error(self, tmp_path):
        code = main([
            "generate", "--family", "nosuch", "--n", "10",
            "--out", str(tmp_path / "g.txt"),
        ])
        assert code == 1

    def test_bad_n_is_usage_error(self, tmp_path):
        code = main([
            "generate", "--family", "sensor", "--n", "1",
            "--out", str(tmp_path / "g.txt"),
        ])
        assert code == 1

    def test_outdir_env_redirects_relative_paths(self, tmp_path, monkeypatch):
        monkeypatch.setenv("EDGESAMPLING_OUTDIR", str(tmp_path))
        code = main([
            "generate", "--family", "erdos_renyi", "--n", "20", "--p", "0.3",
            "--out", "rel.txt",
        ])
        assert code == 0
        assert (tmp_path / "rel.txt").exists()

    def test_outdir_env_creates_nested_parents(self, tmp_path, monkeypatch):
        monkeypatch.setenv("EDGESAMPLING_OUTDIR", str(tmp_path / "results"))
        code = main([
            "generate", "--family", "erdos_renyi", "--n", "20", "--p", "0.3",
            "--out", "sub/rel.txt",
        ])
        assert code == 0
        assert (tmp_path / "results" / "sub" / "rel.txt").exists()


class TestLinegraph:
    @pytest.mark.parametrize("what", ["adjacency", "laplacian", "edge-laplacian"])
    def test_matrix_kinds(self, what, graph_file, tmp_path):
        out = tmp_path / "m.mtx"
        code = main(["linegraph", "--in", str(graph_file),
                     "--what", what, "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("%%MatrixMarket")

    def test_missing_input_is_data_error(self, tmp_path):
        code = main(["linegraph", "--in", str(tmp_path / "absent.txt"),
                     "--out", str(tmp_path / "m.mtx")])
        assert code == 2


class TestSample:
    def test_json_result(self, graph_file, tmp_path):
        out = tmp_path / "sel.json"
        code = main(["sample", "--in", str(graph_file), "--method", "nslg",
                     "--size", "40", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["method"] == "nslg"
        assert len(doc["selected"]) == 40

    def test_unknown_method_lists_valid_ones(self, graph_file, tmp_path, capsys):
        code = main(["sample", "--in", str(graph_file), "--method", "nosuch",
                     "--size", "5", "--out", str(tmp_path / "s.json")])
        assert code == 1
        err = capsys.readouterr().err
        assert "nslg" in err  # usage text names the valid methods

    def test_oversize_is_data_error(self, graph_file, tmp_path):
        code = main(["sample", "--in", str(graph_file), "--method", "maxdegree",
                     "--size", "99999", "--out", str(tmp_path / "s.json")])
        assert code == 2

    def test_gsparse_records_weights(self, graph_file, tmp_path):
        out = tmp_path / "sel.json"
        code = main(["sample", "--in", str(graph_file), "--method", "gsparse",
                     "--size", "80", "--seed", "3", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["new_weights"] is not None
        assert len(doc["new_weights"]) == len(doc["selected"])


class TestEval:
    def test_csv_and_json(self, graph_file, tmp_path):
        out_csv = tmp_path / "e.csv"
        out_json = tmp_path / "e.json"
        code = main([
            "eval", "--in", str(graph_file),
            "--method", "nslg", "--method", "maxdegree",
            "--size", ".5", "--trials", "2",
            "--csv", str(out_csv), "--out", str(out_json),
        ])
        assert code == 0
        rows = list(csv.DictReader(out_csv.open()))
        assert len(rows) == 4
        assert {r["method"] for r in rows} == {"nslg", "maxdegree"}
        doc = json.loads(out_json.read_text())
        assert doc["config_hash"]

    def test_size_grammar_comma_list(self, graph_file, tmp_path):
        out_csv = tmp_path / "e.csv"
        code = main([
            "eval", "--in", str(graph_file), "--method", "maxdegree",
            "--size", ".4,.6", "--trials", "1", "--csv", str(out_csv),
        ])
        assert code == 0
        rows = list(csv.DictReader(out_csv.open()))
        assert len(rows) == 2
        assert rows[0]["size"] != rows[1]["size"]


class TestExperiment:
    def test_config_file_run_is_deterministic(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "family = community\nn = 50\nnum_communities = 2\n"
            "methods = maxdegree\nsizes = .5\ntrials = 2\n"
        )
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["experiment", "--config", str(cfg), "--out-csv", str(a)]) == 0
        assert main(["experiment", "--config", str(cfg), "--out-csv", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_set_overrides(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "family = community\nn = 50\nnum_communities = 2\n"
            "methods = maxdegree\nsizes = .5\ntrials = 2\n"
        )
        out = tmp_path / "o.csv"
        code = main(["experiment", "--config", str(cfg),
                     "--set", "trials=1", "--out-csv", str(out)])
        assert code == 0
        assert len(list(csv.DictReader(out.open()))) == 1

    def test_bad_set_syntax(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("family = community\n")
        code = main(["experiment", "--config", str(cfg), "--set", "oops"])
        assert code == 2

    def test_unknown_config_key_is_usage_error(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("frobnicate = 1\n")
        assert main(["experiment", "--config", str(cfg)]) == 1


def test_no_subcommand_is_usage_error():
    assert main([]) == 1


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "generate" in capsys.readouterr().out
