import io
import logging
import sys

import pytest

from const import APPLICATION
from log import addLoggingLevel, convert_log_level, setup_logging, update_level


@pytest.fixture
def app_logger():
    logger = logging.getLogger(APPLICATION)
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    hook = sys.excepthook
    yield logger
    sys.excepthook = hook
    logger.handlers[:] = handlers
    logger.setLevel(level)
    logger.propagate = propagate


def test_success_level_registration_is_idempotent():
    addLoggingLevel("SUCCESS", 60, "success")
    assert logging.SUCCESS == 60
    with pytest.raises(AttributeError):
        addLoggingLevel("SUCCESS", 61, "success")


def test_console_handler(app_logger):
    stream = io.StringIO()
    setup_logging("INFO", stream)
    app_logger.debug("hidden")
    app_logger.success("decomposition written")
    text = stream.getvalue()
    assert "hidden" not in text
    assert "[SUCCESS] decomposition written" in text
    # a plain StringIO is not a terminal, so no colour codes
    assert "\033[" not in text


def test_setup_replaces_its_handler(app_logger):
    setup_logging("INFO", io.StringIO())
    setup_logging("INFO", io.StringIO())
    assert sum(type(h).__name__ == "ConsoleLogger" for h in app_logger.handlers) == 1


def test_update_level(app_logger):
    update_level("debug")
    assert app_logger.level == logging.DEBUG
    update_level("nonsense")
    assert app_logger.level == logging.ERROR
    assert convert_log_level("warning") == logging.WARNING
