"""
Tests for the command line interface and its exit codes
"""

import json

import pytest
from click.testing import CliRunner

from hurwitz_cf.cli import cli, exit_code_for, main
from hurwitz_cf.types import OperationResult


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


class TestExpandCommand:

    def test_golden_ratio(self, runner):
        doc = run_json(runner, ["expand", "--x", "(1+sqrt(5))/2", "--terms", "4"])
        assert doc["terms"] == ["2", "-3", "3", "-3"]
        assert doc["convergents"][1] == ["-5", "-3"]

    def test_classical(self, runner):
        doc = run_json(runner, ["expand", "--algo", "classical", "--x", "17/12"])
        assert doc["terms"] == ["1", "2", "2", "2"]
        assert doc["finite"] is True

    def test_rational_tie(self, runner):
        doc = run_json(runner, ["expand", "--x", "5/2"])
        assert doc["terms"] == ["2", "2"]

    def test_negative_form(self, runner):
        doc = run_json(runner, ["expand", "--x", "(1+sqrt(5))/2", "--terms", "3", "--negative"])
        assert doc["kind"] == "hurwitz-negative"
        assert doc["terms"] == ["2", "3", "3"]

    def test_bad_literal(self, runner):
        assert runner.invoke(cli, ["expand", "--x", "sqrt(2"]).exit_code == 2

    def test_precision_exhausted(self, runner):
        result = runner.invoke(cli, ["--precision-bits", "64", "expand", "--x", "dec:2.5@8"])
        assert result.exit_code == 3


class TestTransformCommand:

    def test_raw_terms(self, runner):
        result = runner.invoke(cli, ["transform", "--b", "0,2,1,1,4"])
        assert result.exit_code == 0
        doc = json.loads(result.output.splitlines()[0])
        assert doc["terms"] == ["0", "3", "-2", "-4"]
        assert doc["omitted"] == ["1"]

    def test_trace_as_json_lines(self, runner):
        result = runner.invoke(cli, ["transform", "--b", "0,2,1,1,4"])
        assert result.exit_code == 0
        lines = [json.loads(line) for line in result.output.splitlines()]
        assert len(lines) == 6
        assert lines[0]["S_prime"] == ["2"]
        assert [record["n"] for record in lines[1:]] == ["0", "1", "2", "3", "4"]
        assert lines[3] == {"n": "2", "b_n": "1", "in_S": True, "in_Sprime": True, "settled": True}

    def test_needs_exactly_one_source(self, runner):
        assert runner.invoke(cli, ["transform"]).exit_code == 2
        assert runner.invoke(cli, ["transform", "--x", "2", "--b", "2"]).exit_code == 2


class TestVerifyCommand:

    def test_failing_check_exits_one(self, runner):
        result = runner.invoke(cli, ["verify", "--prop", "prop1", "--terms", "5,2,-2"])
        assert result.exit_code == 1

    def test_passing_property(self, runner):
        doc = run_json(runner, ["verify", "--prop", "prop4", "--x", "sqrt(2)", "--n", "30"])
        assert doc["passed"] is True
        assert doc["failures"] == 0

    def test_sample(self, runner):
        doc = run_json(runner, ["verify", "--prop", "prop3", "--sample", "3", "--seed", "7",
                                "--n", "6"])
        assert len(doc["subjects"]) == 3

    def test_unknown_property(self, runner):
        assert runner.invoke(cli, ["verify", "--prop", "prop9", "--x", "2"]).exit_code == 2


class TestCountCommands:

    def test_xrho(self, runner):
        doc = run_json(runner, ["count", "xrho", "--x", "sqrt(101)", "--delta", "1/3",
                                "--rho", "20"])
        assert doc["count"] == "2"
        assert doc["method"] == "oracle"

    def test_xrho_witness_csv(self, runner):
        result = runner.invoke(cli, ["--format", "csv", "count", "xrho", "--x", "sqrt(101)",
                                     "--delta", "1/3", "--rho", "20", "--witnesses"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "p,q,quality"
        assert [line.split(",")[:2] for line in lines[1:]] == [["10", "1"], ["201", "20"]]

    def test_sandwich(self, runner):
        doc = run_json(runner, ["count", "sandwich", "--x", "(1+sqrt(5))/2", "--delta", "1/3",
                                "--n", "10"])
        assert doc["counts"] == ["0", "0", "10"]

    def test_gform(self, runner):
        doc = run_json(runner, ["count", "gform", "--a", "sqrt(2)", "--b", "1", "--c", "sqrt(2)-1",
                                "--d", "1", "--delta", "3/10", "--kappa", "1/10", "--rho", "100"])
        assert doc["count"] == "1"
        assert doc["ratio_check"] == {"min_q": "10", "tolerance": "1/10", "checked": "0",
                                      "max_deviation": None, "passed": True}

    def test_constant(self, runner):
        assert run_json(runner, ["count", "constant"])["passed"] is True

    def test_delta_out_of_range(self, runner):
        result = runner.invoke(cli, ["count", "sandwich", "--x", "sqrt(2)", "--delta", "1/2",
                                     "--n", "5"])
        assert result.exit_code == 2


class TestOutput:

    def test_plain(self, runner):
        result = runner.invoke(cli, ["--format", "plain", "expand", "--x", "17/12"])
        assert result.exit_code == 0
        assert "hurwitz-positive" in result.output

    def test_out_file(self, runner, tmp_path):
        target = tmp_path / "report.json"
        result = runner.invoke(cli, ["--out", str(target), "expand", "--x", "5/2"])
        assert result.exit_code == 0
        assert result.output == ""
        assert json.loads(target.read_text(encoding="utf-8"))["terms"] == ["2", "2"]

    def test_identical_requests_identical_output(self, runner):
        args = ["count", "xrho", "--x", "sqrt(2)", "--delta", "1/2", "--rho", "50", "--witnesses"]
        assert runner.invoke(cli, args).output == runner.invoke(cli, args).output


class TestExitCodes:

    @pytest.mark.parametrize("error_code, expected", [
        (None, 0),
        ("CHECK_FAILED", 1),
        ("PARSE_ERROR", 2),
        ("DELTA_OUT_OF_RANGE", 2),
        ("PRECISION_EXHAUSTED", 3),
        ("INTERNAL_ERROR", 1),
    ])
    def test_mapping(self, error_code, expected):
        result = OperationResult(success=error_code is None, message="", error_code=error_code)
        assert exit_code_for(result) == expected

    def test_main_returns_code(self):
        assert main(["count", "constant", "--help"]) == 0
        assert main(["verify", "--prop", "prop9"]) == 2
