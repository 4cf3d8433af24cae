import json
import logging

import pytest

from common.logging import SERVICE_NAME, get_logger, setup_logging


@pytest.fixture
def service_logger():
    logger = logging.getLogger(SERVICE_NAME)
    handlers, level = logger.handlers[:], logger.level
    yield logger
    logger.handlers[:] = handlers
    logger.setLevel(level)


class TestLogging:
    def test_child_loggers_nest_under_the_service(self):
        assert get_logger("pgraph.runner").name == f"{SERVICE_NAME}.pgraph.runner"

    def test_json_records_go_to_stderr(self, service_logger, capsys):
        setup_logging("INFO", "json")

        get_logger("tests").info("Scan finished", extra={"kernel": "ineq2"})

        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["message"] == "Scan finished"
        assert record["kernel"] == "ineq2"
        assert record["levelname"] == "INFO"

    def test_text_format_and_level(self, service_logger, capsys):
        setup_logging("warning", "text")

        get_logger("tests").info("hidden")
        get_logger("tests").warning("shown")

        err = capsys.readouterr().err
        assert "hidden" not in err
        assert "[WARNING]" in err and "shown" in err

    def test_setup_replaces_handlers(self, service_logger):
        setup_logging("INFO", "json")
        setup_logging("INFO", "json")

        assert len(service_logger.handlers) == 1
