"""Tests for logging setup."""

import logging

import pytest
from rich.logging import RichHandler

from hyptree.utils.logging import setup_logging


@pytest.fixture
def package_logger():
    logger = setup_logging()
    yield logger
    setup_logging()


def test_console_handler_on_package_logger(package_logger):
    assert package_logger.name == "hyptree"
    assert [type(h) for h in package_logger.handlers] == [RichHandler]
    assert package_logger.handlers[0].level == logging.INFO
    assert logging.getLogger("numba").level == logging.WARNING


def test_repeated_setup_replaces_handlers(package_logger):
    logger = setup_logging(debug=True)
    assert len(logger.handlers) == 1
    assert logger.level == logging.DEBUG
    assert logger.handlers[0].level == logging.DEBUG


def test_log_file_receives_debug_records(package_logger, tmp_path):
    path = tmp_path / "run.log"
    logger = setup_logging(log_file=str(path))
    logging.getLogger("hyptree.optimizer.ascent").debug("sweep %d", 12)
    for handler in logger.handlers:
        handler.flush()
    text = path.read_text()
    assert "DEBUG" in text
    assert "hyptree.optimizer.ascent: sweep 12" in text
    assert logger.handlers[0].level == logging.INFO
