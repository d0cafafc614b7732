"""Setup checks: configuration values and logging handlers.

Covers:
1. Configuration defaults and validation
2. Directory creation
3. Logging to stderr and to a rotating file
"""
import logging
from fractions import Fraction
from logging.handlers import RotatingFileHandler

import pytest

from config import Config
from utils.logger import get_logger, setup_logging

logger = get_logger(__name__)


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    setup_logging(log_level="WARNING", log_file="")


def test_config_is_valid():
    assert Config.validate() is True


@pytest.mark.parametrize("name,value,message", [
    ("ENUMERATION_BUDGET", 0, "ENUMERATION_BUDGET must be positive"),
    ("VERIFIER_MAX_SUBSETS", -1, "VERIFIER_MAX_SUBSETS must be positive"),
    ("SIMPLEX_MAX_PIVOTS", 0, "SIMPLEX_MAX_PIVOTS must be positive"),
    ("LAB_WORKERS", 0, "LAB_WORKERS must be positive"),
    ("LAB_MAX_COUNTEREXAMPLES", -1, "must not be negative"),
    ("LOG_LEVEL", "CHATTY", "is not a logging level"),
    ("LS_PAV_DELTA", "-1/4", "LS_PAV_DELTA must be positive"),
    ("LS_PAV_DELTA", "one quarter", "is not a rational number"),
])
def test_invalid_values_are_reported(monkeypatch, name, value, message):
    monkeypatch.setattr(Config, name, value)
    with pytest.raises(ValueError, match=message):
        Config.validate()


def test_ls_pav_delta(monkeypatch):
    monkeypatch.setattr(Config, "LS_PAV_DELTA", "")
    assert Config.ls_pav_delta() is None
    monkeypatch.setattr(Config, "LS_PAV_DELTA", " 1/4 ")
    assert Config.ls_pav_delta() == Fraction(1, 4)


def test_create_directories(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "DATA_DIR", tmp_path / "data")
    monkeypatch.setattr(Config, "REPORTS_DIR", tmp_path / "data" / "reports")
    monkeypatch.setattr(Config, "LOGS_DIR", tmp_path / "logs")
    Config.create_directories()
    Config.create_directories()
    assert (tmp_path / "data" / "reports").is_dir()
    assert (tmp_path / "logs").is_dir()


def test_file_logging(tmp_path):
    log_file = tmp_path / "logs" / "lab.log"
    setup_logging(log_level="ERROR", log_file=str(log_file))
    logger.debug("debug line reaches the file")

    root = logging.getLogger()
    file_handlers = [h for h in root.handlers if isinstance(h, RotatingFileHandler)]
    assert len(file_handlers) == 1
    file_handlers[0].flush()
    assert "debug line reaches the file" in log_file.read_text()


def test_repeated_setup_replaces_handlers(tmp_path):
    before = len(logging.getLogger().handlers)
    setup_logging(log_file=str(tmp_path / "a.log"))
    after_first = len(logging.getLogger().handlers)
    setup_logging(log_file=str(tmp_path / "b.log"))
    assert len(logging.getLogger().handlers) == after_first
    assert after_first <= before + 2


def test_console_only(capsys):
    setup_logging(log_level="INFO", log_file="")
    assert not any(isinstance(h, RotatingFileHandler) for h in logging.getLogger().handlers)
    logger.info("console line")
    assert "console line" in capsys.readouterr().err
