"""
Behavior tests for the compute API

🎯 Test Coverage:
- POST /api/v1/insert, /api/v1/equivalence and /api/v1/lr
- Mapping of domain errors to HTTP status codes
- Operation and request metrics on /api/v1/metrics
"""

import pytest
from fastapi.testclient import TestClient

from khecke.main import create_app


@pytest.fixture
def client():
    with TestClient(create_app()) as test_client:
        yield test_client


class TestInsertRouteBehavior:
    """Test POST /api/v1/insert."""

    def test_insert(self, client):
        """Should return P and Q."""
        response = client.post("/api/v1/insert", json={"word": [1, 5, 1, 3, 3]})

        assert response.status_code == 200
        assert response.json() == {
            "word": [1, 5, 1, 3, 3],
            "P": [[1, 3], [5]],
            "Q": [[[1], [2, 5]], [[3, 4]]],
        }

    def test_invalid_letter_is_unprocessable(self, client):
        """Should answer 422 for a non-positive letter."""
        response = client.post("/api/v1/insert", json={"word": [1, 0]})

        assert response.status_code == 422

    def test_body_must_hold_a_word(self, client):
        """Should answer 422 when the body does not validate."""
        assert client.post("/api/v1/insert", json={"letters": [1]}).status_code == 422


class TestEquivalenceRouteBehavior:
    """Test POST /api/v1/equivalence."""

    def test_equivalent_words(self, client):
        """Should return the chain."""
        data = client.post("/api/v1/equivalence", json={"first": [1, 2, 1], "second": [2, 1, 2]}).json()

        assert data["verdict"] == "equivalent"
        assert data["chain"] == [[2, 1, 2]]

    def test_distinct_words(self, client):
        """Should return the certificate."""
        data = client.post("/api/v1/equivalence", json={"first": [1, 2], "second": [2, 1]}).json()

        assert data["verdict"] == "distinct"
        assert data["certificate"] == "lis 2 vs 1"

    def test_bound_must_be_positive(self, client):
        """Should reject max_len 0."""
        response = client.post(
            "/api/v1/equivalence", json={"first": [1], "second": [1], "max_len": 0}
        )
        assert response.status_code == 422


class TestLRRouteBehavior:
    """Test POST /api/v1/lr."""

    def test_single_coefficient(self, client):
        """Should count three fillings for nu = (4,3,1)."""
        data = client.post("/api/v1/lr", json={"lam": [3, 1], "mu": [2, 1], "nu": [4, 3, 1]}).json()

        assert data["count"] == 3
        assert data["sign"] == -1
        assert len(data["witnesses"]) == 3

    def test_table(self, client):
        """Should tabulate G1 G1 by nu."""
        data = client.post("/api/v1/lr", json={"lam": [1], "mu": [1], "max_extra": 1}).json()

        assert [(row["nu"], row["count"], row["sign"]) for row in data["table"]] == [
            ([1, 1], 1, 1),
            ([2], 1, 1),
            ([2, 1], 1, -1),
        ]

    def test_explicit_target(self, client):
        """Should accept a tableau as the URT."""
        data = client.post(
            "/api/v1/lr", json={"lam": [1], "mu": [1], "nu": [2], "urt": [[1]]}
        ).json()

        assert data["count"] == 1

    def test_target_of_the_wrong_shape(self, client):
        """Should answer 422 when the tableau does not have shape mu."""
        response = client.post("/api/v1/lr", json={"lam": [1], "mu": [2], "nu": [3], "urt": [[1]]})

        assert response.status_code == 422
        assert "requested shape" in response.json()["detail"]

    def test_unsettled_target_is_a_conflict(self, monkeypatch):
        """Should answer 409 when the URT test does not pass."""
        monkeypatch.setenv("KHECKE_MAX_VISITED_WORDS", "5")
        monkeypatch.setenv("KHECKE_URT_BOUND", "8")
        with TestClient(create_app()) as client:
            response = client.post(
                "/api/v1/lr",
                json={"lam": [1], "mu": [3, 1], "nu": [3, 2], "urt": [[1, 2, 4], [3]]},
            )

        assert response.status_code == 409
        assert "unique rectification target" in response.json()["detail"]


class TestMetricsRouteBehavior:
    """Test GET /api/v1/metrics."""

    def test_exposes_operation_and_request_metrics(self, client):
        """Should show the engine counter and the RED series."""
        client.post("/api/v1/insert", json={"word": [2, 1]})

        body = client.get("/api/v1/metrics").text

        assert 'khecke_operations_total{operation="insert",outcome="ok"} 1.0' in body
        assert 'route="/api/v1/insert"' in body
        assert "khecke_build_info" in body

    def test_errors_are_counted(self, client):
        """Should count rejected requests as errors."""
        client.post("/api/v1/insert", json={"word": [0]})

        body = client.get("/api/v1/metrics").text

        assert 'http_request_errors_total{code="422",method="POST",route="/api/v1/insert"} 1.0' in body
