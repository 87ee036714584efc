"""Shared fixtures for the khecke test suite."""
import pytest

from khecke.application.engine import KheckeEngine
from khecke.infrastructure.config import Settings, get_settings
from khecke.infrastructure.logging import setup_logging
from khecke.infrastructure.observability.prometheus_adapter import PrometheusMetricsAdapter


@pytest.fixture(autouse=True, scope="session")
def configured_logging():
    """Route structlog through stderr before any module logger is first used."""
    setup_logging("WARNING")


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch: pytest.MonkeyPatch):
    """Run every test with a fresh settings cache, one worker and no stray KHECKE_* variables."""
    for key in (
        "KHECKE_LOG_LEVEL",
        "KHECKE_URT_BOUND",
        "KHECKE_EXTRA_LENGTH",
        "KHECKE_MAX_VISITED_WORDS",
        "KHECKE_ENVIRONMENT",
        "KHECKE_SERVICE_NAME",
    ):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("KHECKE_JOBS", "1")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings() -> Settings:
    return Settings(environment="testing", jobs=1)


@pytest.fixture
def metrics_port() -> PrometheusMetricsAdapter:
    return PrometheusMetricsAdapter({"service": "khecke", "instance": "khecke", "version": "0.1.0"})


@pytest.fixture
def engine(settings: Settings, metrics_port: PrometheusMetricsAdapter) -> KheckeEngine:
    return KheckeEngine(settings, metrics_port)
