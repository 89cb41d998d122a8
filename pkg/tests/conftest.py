import pytest

from settings import get_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached; every test starts and ends with a clean cache."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def set_env(monkeypatch):
    def _set(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"WITTEN_COUNT_{key.upper()}", str(value))
        get_settings.cache_clear()
    return _set
