"""Tests for settings and logging setup."""
import logging

from opsg.core import config
from opsg.core.config import get_settings, settings
from opsg.core.config_logging import RunIdFilter, configure_logging


def test_test_environment_is_selected():
    assert isinstance(settings, config.TestConfig)
    assert get_settings() is settings
    assert settings.LOG_FILE is None
    assert settings.EPS == 1e-9


def test_seed_defaults_without_environment(monkeypatch):
    monkeypatch.delenv("OPSG_SEED", raising=False)
    assert settings.seed() == settings.DEFAULT_SEED


def test_bad_seed_is_ignored(monkeypatch):
    monkeypatch.setenv("OPSG_SEED", "not-a-number")
    assert settings.seed() == settings.DEFAULT_SEED


def test_negative_seed_is_ignored(monkeypatch):
    monkeypatch.setenv("OPSG_SEED", "-4")
    assert settings.seed() == settings.DEFAULT_SEED


def test_records_carry_the_run_id():
    configure_logging()
    record = logging.LogRecord("opsg.test", logging.INFO, __file__, 1, "message", None, None)
    assert RunIdFilter(uuid_length=8).filter(record)
    assert record.run_id == RunIdFilter.current()[:8]
    assert logging.getLogger("opsg").propagate is False
