import json

import pytest
from mock import Mock, patch
from pydantic import ValidationError

from pgraph import runner
from pgraph.domain.model.config import COMMANDS, RunConfig
from pgraph.exceptions import HypothesisError


def run(**fields):
    status, text = runner.run(RunConfig(**fields))
    return status, text


class TestDispatch:
    def test_every_command_has_an_action(self):
        assert set(runner.COMMAND_DISPATCH) == set(COMMANDS)

    def test_ops_lists_the_registry(self):
        status, text = run(command="ops")
        report = json.loads(text)

        assert status == runner.EXIT_OK
        assert report["verified"] is None
        assert report["result"]["ops"]["pgraph.graph.degree"] == "model-check"

    def test_report_envelope(self):
        status, text = run(command="capacity", model="int_line", radius=8, p=2)
        report = json.loads(text)

        assert status == runner.EXIT_OK
        assert report["command"] == "capacity"
        assert report["config"]["model"] == "int_line"
        assert report["verified"] is True
        assert report["result"]["value"] == pytest.approx(0.25)

    def test_undefined_values_render_as_null(self):
        status, text = run(command="apply", model="nat_line", radius=6, p=3, u="hardy", phi="random", seed=2)
        result = json.loads(text)["result"]

        assert status == runner.EXIT_OK
        assert result["values"][0] is None
        assert result["values"][1] > 0
        assert result["greens_residual"] <= 1e-10

    def test_output_is_deterministic(self):
        fields = dict(command="hardy", model="nat_line", radius=8, p=2.5, u="hardy", samples=50, seed=3)

        assert run(**fields) == run(**fields)

    def test_sorted_keys_and_trailing_newline(self):
        text = runner.render({"b": 1, "a": [1.0]})

        assert text == '{\n  "a": [\n    1.0\n  ],\n  "b": 1\n}\n'


class TestCsv:
    def test_capacity_minimizer(self):
        status, text = run(command="capacity", model="nat_line", radius=4, p=2, root="1", format="csv")

        assert status == runner.EXIT_OK
        lines = text.splitlines()
        assert lines[0] == "label,value"
        assert lines[1:3] == ["0,0.0", "1,1.0"]

    def test_command_without_vertex_values(self):
        status, text = run(command="ops", format="csv")

        assert status == runner.EXIT_USAGE
        assert json.loads(text)["failure"]["error"] == "ConfigError"


class TestExitCodes:
    def test_missing_input_is_a_usage_error(self):
        status, text = run(command="apply", model="nat_line", radius=4)
        report = json.loads(text)

        assert status == runner.EXIT_USAGE
        assert report["verified"] is None
        assert report["failure"]["error"] == "ConfigError"

    def test_missing_file_is_a_usage_error(self, tmp_path):
        status, _ = run(command="energy", graph=tmp_path / "absent.json", u="const")

        assert status == runner.EXIT_USAGE

    def test_failed_hypothesis(self):
        status, text = run(command="harnack", model="nat_line", radius=6, p=2, f_const=5.0)
        report = json.loads(text)

        assert status == runner.EXIT_VERIFICATION_FAILED
        assert report["verified"] is False
        assert report["failure"]["error"] == "HypothesisError"

    def test_failed_verification(self):
        status, text = run(command="ineq-scan", kernel="ineq1", constant=1.99, point=[0.0, 0.0], check="upper")

        assert status == runner.EXIT_VERIFICATION_FAILED
        assert json.loads(text)["verified"] is False

    def test_library_errors_are_caught(self):
        with patch.dict(runner.COMMAND_DISPATCH, {"ops": Mock(side_effect=HypothesisError("boom"))}):
            status, text = run(command="ops")

        assert status == runner.EXIT_VERIFICATION_FAILED
        assert json.loads(text)["failure"] == {"error": "HypothesisError", "message": "boom"}


class TestRunConfig:
    @pytest.mark.parametrize(
        "fields",
        [
            {"command": "nope"},
            {"command": "capacity"},
            {"command": "capacity", "model": "int_line", "graph": "g.json", "radius": 2},
            {"command": "capacity", "model": "int_line"},
            {"command": "null-seq", "graph": "g.json"},
            {"command": "ops", "model": "int_line"},
            {"command": "capacity", "model": "int_line", "radius": 2, "p": 1.0},
            {"command": "apply", "model": "int_line", "radius": 2, "p": 0.5},
            {"command": "ineq-scan", "p": -1.0},
            {"command": "ineq-scan", "kernel": "nope"},
            {"command": "ineq-scan", "point": [1.0]},
            {"command": "harnack", "model": "int_line", "radius": 2, "check": "trend"},
            {"command": "energy", "model": "int_line", "radius": 2, "u": "file"},
            {"command": "null-seq", "model": "weighted_line"},
        ],
    )
    def test_invalid(self, fields):
        with pytest.raises(ValidationError):
            RunConfig(**fields)

    def test_model_only_commands_need_no_radius(self):
        assert RunConfig(command="null-seq", model="int_line").radius is None
