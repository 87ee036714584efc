#!/usr/bin/env python3
"""
Integration tests for the named worked examples and the two outer surfaces

🎯 Test Coverage:
- Light worked examples through the check registry
- Every quick and every slow check (slow marker)
- The exhaustive sweeps over small shapes and alphabets (slow marker)
- The same answer from the CLI, the HTTP API and the engine
"""

import orjson
import pytest
from fastapi.testclient import TestClient

from khecke.application.checks import REGISTRY, run_check, run_checks, select_checks
from khecke.main import create_app
from khecke.presentation.cli import run

LIGHT_CHECKS = [
    "insert-15133",
    "insert-13324535",
    "insert-h2-terminal-corner",
    "insert-h1-adjoin",
    "reverse-insertion-steps",
    "lds-certificate",
    "grothendieck-21",
    "weak-21",
    "fundamental-13",
    "g1-squared",
    "phi-of-1",
    "lr-431",
    "coproduct-12",
]
SWEEPS = ["urt-suite", "j-from-insertion-sweep", "lr-oracle-sweep"]


class TestWorkedExamples:
    """Run the registry the way khecke verify does."""

    @pytest.mark.parametrize("name", LIGHT_CHECKS)
    def test_light_check_passes(self, name):
        """Should reproduce the published value."""
        result = run_check(name)
        assert result.passed, result.detail

    def test_light_checks_are_quick(self):
        """Should never list a slow check as light."""
        assert not any(REGISTRY[name].slow for name in LIGHT_CHECKS)

    @pytest.mark.slow
    def test_product_representatives_own_distinct_classes(self):
        """Should place the six product representatives in six different classes."""
        result = run_check("product-12-312")
        assert result.passed, result.detail
        assert result.detail == "classes 3/2/1/1/1/1"

    def test_coproduct_terms_are_pinned(self):
        """Should list exactly the five published coproduct pairs."""
        result = run_check("coproduct-12")
        assert result.passed, result.detail
        assert result.detail == "∅|12, 1|1, 1|12, 12|∅, 12|1"

    @pytest.mark.slow
    @pytest.mark.parametrize("name", SWEEPS)
    def test_sweep_passes(self, name):
        """Should hold on every small shape, tableau or shape pair in the sweep."""
        assert REGISTRY[name].slow
        result = run_check(name)
        assert result.passed, result.detail

    @pytest.mark.slow
    def test_every_quick_check_passes(self):
        """Should pass the full quick suite across two workers."""
        results = run_checks(include_slow=False, jobs=2)
        assert [result.name for result in results] == select_checks(include_slow=False)
        failed = {result.name: result.detail for result in results if not result.passed}
        assert failed == {}

    @pytest.mark.slow
    def test_every_slow_check_passes(self):
        """Should agree with every polynomial oracle."""
        slow = [name for name, item in REGISTRY.items() if item.slow and name not in SWEEPS]
        failed = {r.name: r.detail for r in run_checks(slow, jobs=2) if not r.passed}
        assert failed == {}


class TestSurfacesAgree:
    """Compare the CLI and the HTTP API on the same inputs."""

    def test_insertion(self, engine, capsys):
        """Should print the same tableaux through both surfaces."""
        assert run(["insert", "13324535"]) == 0
        from_cli = orjson.loads(capsys.readouterr().out)

        with TestClient(create_app()) as client:
            from_api = client.post("/api/v1/insert", json={"word": [1, 3, 3, 2, 4, 5, 3, 5]}).json()

        tableau, recording = engine.insert((1, 3, 3, 2, 4, 5, 3, 5))
        assert from_cli == from_api
        assert from_cli["P"] == tableau.to_lists()
        assert from_cli["Q"] == recording.to_lists()

    def test_lr_coefficient(self, capsys):
        """Should count the same fillings through both surfaces."""
        assert run(["lr", "3,1", "2,1", "--nu", "4,3,1"]) == 0
        from_cli = orjson.loads(capsys.readouterr().out)

        with TestClient(create_app()) as client:
            from_api = client.post("/api/v1/lr", json={"lam": [3, 1], "mu": [2, 1], "nu": [4, 3, 1]}).json()

        assert from_cli["count"] == from_api["count"] == 3
        assert from_cli["witnesses"] == from_api["witnesses"]
