"""
Tests for layered settings and run request validation
"""

import json

import pytest
from pydantic import ValidationError

from hurwitz_cf.config_manager import (
    ConfigurationManager, RunConfig, ToolkitSettings, parse_rational, parse_terms
)
from hurwitz_cf.errors import InvalidParameter, LiteralParseError
from hurwitz_cf.types import CountMethod, OutputFormat


class TestToolkitSettings:

    def test_defaults(self):
        settings = ToolkitSettings()
        assert settings.precision_bits == 4096
        assert settings.output_format is OutputFormat.JSON
        assert settings.workers == 1

    def test_log_level_normalized(self):
        assert ToolkitSettings(log_level="debug").log_level == "DEBUG"
        with pytest.raises(ValidationError):
            ToolkitSettings(log_level="chatty")

    def test_precision_order(self):
        with pytest.raises(ValidationError):
            ToolkitSettings(initial_bits=512, precision_bits=128)

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            ToolkitSettings(colour="blue")


class TestConfigurationManager:

    def test_layers(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"workers": 3, "chunk_size": 50}), encoding="utf-8")
        manager = ConfigurationManager(str(path), environ={"HURWITZ_CF_CHUNK_SIZE": "70"})
        settings = manager.load({"output_format": "csv", "workers": None})
        assert settings.workers == 3
        assert settings.chunk_size == 70
        assert settings.output_format is OutputFormat.CSV

    def test_config_path_from_environment(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"precision_bits": 8192}), encoding="utf-8")
        manager = ConfigurationManager(environ={"HURWITZ_CF_CONFIG": str(path)})
        assert manager.load().precision_bits == 8192

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(InvalidParameter):
            ConfigurationManager(str(tmp_path / "missing.json"), environ={}).load()

    def test_non_object_file(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(InvalidParameter):
            ConfigurationManager(str(path), environ={}).load()

    def test_dump_and_load(self):
        manager = ConfigurationManager(environ={})
        settings = ToolkitSettings(workers=4, output_format=OutputFormat.PLAIN)
        assert manager.loads(manager.dump(settings)) == settings


class TestRunConfig:

    def test_literals_stay_exact(self):
        run = RunConfig(subcommand="count", action="xrho", x="(1+sqrt(5))/2", delta="1/3", rho=100)
        restored = ConfigurationManager.load_run(ConfigurationManager.dump_run(run))
        assert restored == run
        assert restored.x == "(1+sqrt(5))/2"
        assert restored.method is CountMethod.ORACLE

    @pytest.mark.parametrize("fields", [
        {"subcommand": "plot"},
        {"subcommand": "expand", "algo": "engel"},
        {"subcommand": "expand", "x": "sqrt(2"},
        {"subcommand": "count", "delta": "sqrt(2)"},
        {"subcommand": "verify", "prop": "prop9"},
        {"subcommand": "verify", "terms": "1,,2"},
        {"subcommand": "count", "rho": 0},
    ])
    def test_rejects(self, fields):
        with pytest.raises(ValidationError):
            RunConfig(**fields)


class TestParsers:

    def test_parse_terms(self):
        assert parse_terms("5, 2,-2") == [5, 2, -2]
        with pytest.raises(LiteralParseError):
            parse_terms("1,x")
        with pytest.raises(LiteralParseError):
            parse_terms("")

    def test_parse_rational(self):
        assert str(parse_rational("3/10")) == "3/10"
        with pytest.raises(LiteralParseError):
            parse_rational("sqrt(2)")
