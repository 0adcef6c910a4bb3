import dataclasses
import json

import numpy as np
import pytest

import edgesampling as es


@pytest.fixture(scope="module")
def small_cfg():
    return es.ExperimentConfig(
        family="community", n=60, num_communities=3,
        methods=("nslg", "maxdegree", "gsparse"),
        sizes=(0.5,), trials=2, master_seed=1,
    )


@pytest.fixture(scope="module")
def small_record(small_cfg):
    return es.run_experiment(small_cfg)


class TestFanoutSeed:
    def test_deterministic(self):
        assert es.fanout_seed(7, "0:synth") == es.fanout_seed(7, "0:synth")

    def test_label_separation(self):
        seen = {es.fanout_seed(0, lab) for lab in ("0", "1", "0:synth", "0:x")}
        assert len(seen) == 4

    def test_master_separation(self):
        assert es.fanout_seed(0, "trial") != es.fanout_seed(1, "trial")


class TestConfigHash:
    def test_stable(self, small_cfg):
        assert es.config_hash(small_cfg) == es.config_hash(small_cfg)
        assert len(es.config_hash(small_cfg)) == 16

    def test_ignores_output_paths_and_timing(self, small_cfg):
        other = dataclasses.replace(
            small_cfg, out_csv="/tmp/a.csv", out_json="/tmp/a.json",
            record_timing=True,
        )
        assert es.config_hash(other) == es.config_hash(small_cfg)

    def test_tracks_semantic_fields(self, small_cfg):
        assert es.config_hash(dataclasses.replace(small_cfg, trials=3)) != (
            es.config_hash(small_cfg)
        )


class TestResolveSizes:
    def test_fraction_rounds(self):
        assert es.resolve_sizes((0.5,), 679) == [340]

    def test_int_passthrough(self):
        assert es.resolve_sizes((17,), 100) == [17]

    def test_full_graph_fraction(self):
        assert es.resolve_sizes((1.0,), 431) == [431]

    def test_tiny_fraction_clamps_to_one(self):
        assert es.resolve_sizes((0.001,), 100) == [1]

    def test_out_of_range(self):
        with pytest.raises(es.SizeTooLargeError):
            es.resolve_sizes((200,), 100)
        with pytest.raises(es.SizeTooLargeError):
            es.resolve_sizes((0,), 100)


class TestRunExperiment:
    def test_row_count_and_sorting(self, small_record, small_cfg):
        rows = small_record.rows
        assert len(rows) == len(small_cfg.methods) * small_cfg.trials
        keys = [(r["method"], r["size"]) for r in rows]
        assert keys == sorted(keys)

    def test_byte_identical_outputs(self, small_cfg, small_record):
        again = es.run_experiment(small_cfg)
        assert es.csv_text(again) == es.csv_text(small_record)
        assert es.json_text(again) == es.json_text(small_record)

    def test_csv_header_fixed(self, small_record):
        header = es.csv_text(small_record).splitlines()[0]
        assert header == ",".join(es.CSV_COLUMNS)

    def test_timing_disabled_by_default(self, small_record):
        assert all(r["wall_ms"] == 0.0 for r in small_record.rows)
        assert small_record.created_utc == ""

    def test_timing_enabled(self, small_cfg):
        rec = es.run_experiment(dataclasses.replace(small_cfg, record_timing=True))
        assert any(r["wall_ms"] > 0 for r in rec.rows)
        assert rec.created_utc != ""

    def test_gsparse_realized_band(self, small_record):
        (band,) = small_record.gsparse_realized
        assert band["min_edges"] <= band["max_edges"] <= band["size"] * 2

    def test_identity_size_zero_errors(self):
        cfg = es.ExperimentConfig(
            family="community", n=50, num_communities=2,
            methods=("maxdegree",), sizes=(1.0,), trials=1,
        )
        rec = es.run_experiment(cfg)
        row = rec.rows[0]
        assert row["recon_error"] == 0.0
        assert row["mse"] == 0.0
        assert row["inconsistency"] == 0.0
        assert row["isolated_nodes"] == 0

    def test_unknown_method_rejected(self, small_cfg):
        bad = dataclasses.replace(small_cfg, methods=("nosuch",))
        with pytest.raises(ValueError):
            es.run_experiment(bad)

    def test_metric_toggles_null_cells(self, small_cfg):
        cfg = dataclasses.replace(
            small_cfg, methods=("maxdegree",), trials=1,
            metric_diffusion=False, metric_clustering=False,
        )
        row = es.run_experiment(cfg).rows[0]
        assert row["mse"] is None
        assert row["mse_db"] is None
        assert row["inconsistency"] is None
        text = es.csv_text(es.run_experiment(cfg))
        assert ",," in text  # None renders as an empty cell

    def test_file_outputs_written(self, tmp_path, small_cfg):
        cfg = dataclasses.replace(
            small_cfg,
            out_csv=str(tmp_path / "r.csv"),
            out_json=str(tmp_path / "r.json"),
        )
        rec = es.run_experiment(cfg)
        assert (tmp_path / "r.csv").read_text() == es.csv_text(rec)
        parsed = json.loads((tmp_path / "r.json").read_text())
        assert parsed["config_hash"] == rec.config_hash

    def test_graph_from_file(self, tmp_path):
        g = es.gen_community(40, 2, seed=0)
        p = tmp_path / "g.txt"
        es.write_edge_list(g, p)
        cfg = es.ExperimentConfig(
            graph_path=str(p), methods=("maxdegree",), sizes=(0.5,), trials=1,
        )
        rec = es.run_experiment(cfg)
        # no ground-truth labels in a bare edge list, so clustering is skipped
        assert rec.rows[0]["inconsistency"] is None
        assert rec.rows[0]["recon_error"] is not None


class TestJsonSchema:
    def test_record_validates(self, small_record):
        import importlib.resources

        import jsonschema

        schema = json.loads(
            importlib.resources.files("edgesampling")
            .joinpath("schemas/metric_report.schema.json")
            .read_text()
        )
        jsonschema.validate(json.loads(es.json_text(small_record)), schema)

    def test_schema_rejects_missing_fields(self, small_record):
        import importlib.resources

        import jsonschema

        schema = json.loads(
            importlib.resources.files("edgesampling")
            .joinpath("schemas/metric_report.schema.json")
            .read_text()
        )
        doc = json.loads(es.json_text(small_record))
        del doc["rows"][0]["mse"]
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(doc, schema)


class TestConfigFile:
    def test_parse_and_run(self, tmp_path):
        p = tmp_path / "exp.cfg"
        p.write_text(
            "# comment line\n"
            "family = community\n"
            "n = 50\n"
            "num_communities = 2\n"
            "methods = maxdegree,netmelt\n"
            "sizes = .5\n"
            "trials = 1\n"
        )
        cfg = es.config_from_mapping(es.parse_config_file(p))
        assert cfg.family == "community"
        assert cfg.methods == ("maxdegree", "netmelt")
        assert cfg.sizes == (0.5,)
        assert cfg.trials == 1

    def test_sizes_grammar(self, tmp_path):
        p = tmp_path / "exp.cfg"
        p.write_text("sizes = .4,.6,120\n")
        cfg = es.config_from_mapping(es.parse_config_file(p))
        assert cfg.sizes == (0.4, 0.6, 120)

    def test_unknown_key(self, tmp_path):
        p = tmp_path / "exp.cfg"
        p.write_text("frobnicate = 3\n")
        with pytest.raises(ValueError):
            es.config_from_mapping(es.parse_config_file(p))

    def test_bool_and_none_coercion(self, tmp_path):
        p = tmp_path / "exp.cfg"
        p.write_text("record_timing = true\nbandwidth = none\neta = 2.5\n")
        cfg = es.config_from_mapping(es.parse_config_file(p))
        assert cfg.record_timing is True
        assert cfg.bandwidth is None
        assert cfg.eta == 2.5

    def test_malformed_line(self, tmp_path):
        p = tmp_path / "exp.cfg"
        p.write_text("just words\n")
        with pytest.raises(ValueError, match="line 1"):
            es.parse_config_file(p)
