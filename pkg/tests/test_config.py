"""
Tests for configuration loading, run validation and output paths
"""

from pathlib import Path

import pytest

from src.config import DEFAULT_CONFIG, RunConfig, load_config
from src.errors import InvalidInstance, InvalidParams, IoFailure
from src.utils import get_paths, read_json, read_jsonl, write_json, write_jsonl

TEMPLATE = Path(__file__).resolve().parent.parent / "config" / "default_config.yaml"


class TestLoadConfig:
    def test_defaults_without_a_file(self):
        assert load_config() == DEFAULT_CONFIG

    def test_template_matches_defaults(self):
        assert load_config(TEMPLATE) == DEFAULT_CONFIG

    def test_project_file_overrides(self, isolated_paths):
        local = isolated_paths / ".ascentlab"
        local.mkdir()
        (local / "config.yaml").write_text("workers: 4\nrule: steepest\n")
        config = load_config()
        assert config["workers"] == 4
        assert config["rule"] == "steepest"
        assert config["node_limit"] == DEFAULT_CONFIG["node_limit"]

    def test_malformed_default_file_warns(self, isolated_paths, capsys):
        local = isolated_paths / ".ascentlab"
        local.mkdir()
        (local / "config.yaml").write_text("workers: [4\n")
        assert load_config() == DEFAULT_CONFIG
        assert "Using default configuration" in capsys.readouterr().err

    def test_explicit_file_must_exist(self, isolated_paths):
        with pytest.raises(IoFailure):
            load_config(isolated_paths / "missing.yaml")

    def test_explicit_file_must_parse(self, isolated_paths):
        path = isolated_paths / "bad.yaml"
        path.write_text("- just\n- a list\n")
        with pytest.raises(IoFailure):
            load_config(path)

    def test_unknown_keys(self, isolated_paths):
        path = isolated_paths / "typo.yaml"
        path.write_text("node_limt: 5\n")
        with pytest.raises(InvalidParams, match="node_limt"):
            load_config(path)


class TestRunConfig:
    def test_flags_override_file_values(self):
        base = dict(DEFAULT_CONFIG, workers=4)
        config = RunConfig.from_mapping("verify", {"workers": None, "m": 3}, base=base)
        assert config.get("workers") == 4
        assert config.get("m") == 3
        assert config.get("k", 1) == 1

    @pytest.mark.parametrize(
        "overrides",
        [
            {"n": 0},
            {"m": 49},
            {"P": 2},
            {"seed": -1},
            {"rule": "sideways"},
            {"convention": "c-side"},
            {"n": True},
            {"n": "3"},
            {"colour": "red"},
        ],
    )
    def test_rejected_values(self, overrides):
        with pytest.raises(InvalidParams):
            RunConfig.from_mapping("ascend", overrides)

    def test_format(self):
        with pytest.raises(InvalidParams):
            RunConfig.from_mapping("ascend", {}, format="xml")


class TestOutputFiles:
    def test_relative_paths_land_in_output_dir(self, isolated_paths):
        destination = write_json({"a": 1}, "runs/result.json")
        assert Path(destination) == isolated_paths / "out" / "runs" / "result.json"
        assert read_json(destination) == {"a": 1}

    def test_jsonl(self, isolated_paths):
        records = [{"step": 1}, {"step": 2}]
        destination = write_jsonl(records, isolated_paths / "t.jsonl")
        assert read_jsonl(destination) == records

    def test_stdout(self, capsys):
        assert write_json([1, 2]) == "-"
        assert capsys.readouterr().out.startswith("[")

    def test_read_errors(self, isolated_paths):
        with pytest.raises(IoFailure):
            read_json(isolated_paths / "nope.json")
        path = isolated_paths / "broken.json"
        path.write_text("{")
        with pytest.raises(InvalidInstance):
            read_json(path)

    def test_config_dir_follows_xdg(self, isolated_paths):
        assert get_paths().config_dir == isolated_paths / "xdg" / "ascentlab"
