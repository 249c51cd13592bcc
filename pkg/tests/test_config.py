import pytest
from pydantic import ValidationError

from heckeq.config import configure_logging, get_settings


def test_defaults():
    settings = get_settings()
    assert settings.default_order == 20
    assert settings.seed == 20211
    assert settings.log_level == "INFO"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("HECKEQ_DEFAULT_ORDER", "7")
    monkeypatch.setenv("HECKEQ_RANDOM_INSTANCES", "3")
    settings = get_settings()
    assert settings.default_order == 7
    assert settings.random_instances == 3


def test_invalid_environment_value(monkeypatch):
    monkeypatch.setenv("HECKEQ_MAX_PRECISION_ROUNDS", "0")
    with pytest.raises(ValidationError):
        get_settings()


def test_settings_are_cached():
    assert get_settings() is get_settings()


def test_configure_logging_accepts_unknown_level():
    configure_logging("not-a-level")
