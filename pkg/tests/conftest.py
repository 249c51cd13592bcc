import pytest

from heckeq.config import ENV_PREFIX, Settings, get_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test sees the default settings unless it sets HECKEQ_* itself."""
    for name in Settings.model_fields:
        monkeypatch.delenv(f"{ENV_PREFIX}{name.upper()}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
