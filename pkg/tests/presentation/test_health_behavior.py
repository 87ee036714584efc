"""
Behavior tests for the health and readiness endpoints

🎯 Test Coverage:
- Health response built from the engine settings
- Readiness tracking the engine, its settings, its workers and the metrics port
- Search limits reported by /ready and the worker gauge on /metrics
- Router wiring under /api/v1
- Response models
"""

from unittest.mock import patch

import pytest
from fastapi import FastAPI
from fastapi.testclient import TestClient

from khecke.infrastructure.constants import DEFAULT_EXTRA_LENGTH, DEFAULT_MAX_VISITED_WORDS, DEFAULT_URT_BOUND
from khecke.infrastructure.config import Settings, get_settings
from khecke.main import create_app
from khecke.presentation.health import (
    HealthResponse,
    ReadinessResponse,
    SearchLimits,
    health_check,
    router,
)


@pytest.fixture
def client():
    """Client for the full application."""
    return TestClient(create_app())


@pytest.fixture
def bare_client():
    """Client for an app carrying only the health router."""
    app = FastAPI()
    app.include_router(router, prefix="/api/v1")
    return TestClient(app)


class TestHealthModelsBehavior:
    """Test the response models."""

    def test_health_response_serialization(self):
        """Should dump every field."""
        response = HealthResponse(
            status="healthy",
            service="khecke",
            version="0.1.0",
            environment="testing",
            timestamp="2026-01-01T00:00:00+00:00",
        )
        assert response.model_dump() == {
            "status": "healthy",
            "service": "khecke",
            "version": "0.1.0",
            "environment": "testing",
            "timestamp": "2026-01-01T00:00:00+00:00",
        }

    def test_readiness_response_with_checks(self):
        """Should keep the per-component statuses."""
        limits = SearchLimits(jobs=2, urt_bound=12, extra_length=3, max_visited_words=10)
        response = ReadinessResponse(status="ready", checks={"engine": "ok"}, limits=limits)
        assert response.checks["engine"] == "ok"
        assert response.model_dump()["limits"]["urt_bound"] == 12


class TestHealthEndpointBehavior:
    """Test GET /api/v1/health."""

    def test_reports_healthy_with_service_identity(self, client):
        """Should answer 200 with the service name and environment."""
        response = client.get("/api/v1/health")

        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["service"] == "khecke"
        assert data["environment"] == "development"
        assert set(data) == {"status", "service", "version", "environment", "timestamp"}

    def test_uses_settings_from_the_environment(self, client, monkeypatch):
        """Should pick up KHECKE_ENVIRONMENT."""
        monkeypatch.setenv("KHECKE_ENVIRONMENT", "production")
        get_settings.cache_clear()
        assert client.get("/api/v1/health").json()["environment"] == "production"

    def test_accepts_get_only(self, client):
        """Should refuse POST."""
        assert client.post("/api/v1/health").status_code == 405

    @pytest.mark.asyncio
    async def test_handler_returns_a_model(self):
        """Should build a HealthResponse from patched settings."""
        settings = Settings(service_name="khecke-worker", version="9.9.9", environment="testing")
        with patch("khecke.presentation.health.get_settings", return_value=settings):
            response = await health_check()

        assert isinstance(response, HealthResponse)
        assert response.service == "khecke-worker"
        assert response.version == "9.9.9"


class TestReadinessEndpointBehavior:
    """Test GET /api/v1/ready."""

    def test_ready_when_engine_and_metrics_are_attached(self, client):
        """Should report every component ok along with the engine's search limits."""
        response = client.get("/api/v1/ready")

        assert response.status_code == 200
        assert response.json() == {
            "status": "ready",
            "checks": {"engine": "ok", "settings": "ok", "workers": "ok", "metrics": "ok"},
            "limits": {
                "jobs": 1,
                "urt_bound": DEFAULT_URT_BOUND,
                "extra_length": DEFAULT_EXTRA_LENGTH,
                "max_visited_words": DEFAULT_MAX_VISITED_WORDS,
            },
        }

    def test_limits_follow_the_environment(self, monkeypatch):
        """Should pick up KHECKE_URT_BOUND and KHECKE_JOBS when the app is built."""
        # Given: overridden bounds
        monkeypatch.setenv("KHECKE_URT_BOUND", "14")
        monkeypatch.setenv("KHECKE_JOBS", "3")
        get_settings.cache_clear()

        # When: a fresh app is asked for readiness
        limits = TestClient(create_app()).get("/api/v1/ready").json()["limits"]

        # Then: the engine reports what it will apply
        assert limits["urt_bound"] == 14
        assert limits["jobs"] == 3

    def test_not_ready_without_an_engine(self, bare_client):
        """Should answer 503 and name the missing components."""
        response = bare_client.get("/api/v1/ready")

        assert response.status_code == 503
        data = response.json()
        assert data["status"] == "not-ready"
        assert data["limits"] is None
        assert data["checks"] == {
            "engine": "missing",
            "settings": "missing",
            "workers": "missing",
            "metrics": "missing",
        }

    def test_router_routes(self):
        """Should expose /health and /ready for GET."""
        methods = {route.path: route.methods for route in router.routes}
        assert "GET" in methods["/health"]
        assert "GET" in methods["/ready"]


class TestMetricsExpositionBehavior:
    """Test the worker gauge on GET /api/v1/metrics."""

    def test_exports_the_worker_count(self, client):
        """Should publish the engine's worker count as a gauge."""
        body = client.get("/api/v1/metrics").text

        assert "khecke_engine_workers 1.0" in body
