"""Tests for the named worked-example registry.

Test Coverage:
- Registration and duplicate names
- Selection by name and by speed
- Running passing and failing checks
"""

import pytest

from khecke.application.checks import (
    REGISTRY,
    CheckFailed,
    check,
    expect,
    run_check,
    run_checks,
    select_checks,
)


@pytest.fixture
def failing_check():
    """Register a check that always fails, removing it afterwards."""

    @check("always-fails", "a check that cannot pass")
    def _always_fails() -> str:
        expect(False, "expected failure")
        return "unreachable"

    yield "always-fails"
    REGISTRY.pop("always-fails", None)


class TestRegistry:
    """Test the check registry."""

    def test_known_checks_are_registered(self):
        """Should hold the insertion, URT and LR examples."""
        for name in ("insert-15133", "urt-3124", "lr-431", "dual-lr-32-oracle"):
            assert name in REGISTRY

    def test_slow_checks_are_marked(self):
        """Should mark the oracle sweeps as slow."""
        assert REGISTRY["lr-431-oracle"].slow
        assert not REGISTRY["insert-15133"].slow

    def test_duplicate_names_are_rejected(self):
        """Should refuse a second check with an existing name."""
        with pytest.raises(ValueError, match="duplicate check insert-15133"):
            check("insert-15133", "again")(lambda: "")


class TestSelection:
    """Test select_checks."""

    def test_quick_selection_drops_slow_checks(self):
        """Should skip slow checks unless asked."""
        quick = select_checks(include_slow=False)
        assert "insert-15133" in quick
        assert "substitution-identity" not in quick
        assert set(select_checks()) == set(REGISTRY)

    def test_named_selection_keeps_order(self):
        """Should return the names as given."""
        assert select_checks(["weak-21", "insert-15133"]) == ["weak-21", "insert-15133"]

    def test_unknown_names_are_reported(self):
        """Should raise KeyError listing every unknown name."""
        with pytest.raises(KeyError, match="unknown checks: nope, nada"):
            select_checks(["insert-15133", "nope", "nada"])


class TestRunning:
    """Test run_check and run_checks."""

    def test_passing_check(self):
        """Should report success with a detail string."""
        result = run_check("insert-15133")
        assert result.passed
        assert result.name == "insert-15133"
        assert "P=" in result.detail
        assert result.elapsed >= 0

    def test_failing_check(self, failing_check):
        """Should capture the failure message instead of raising."""
        result = run_check(failing_check)
        assert not result.passed
        assert result.detail == "expected failure"

    def test_check_failed_is_an_assertion(self):
        """Should let pytest-style tooling treat failures as assertions."""
        with pytest.raises(AssertionError):
            expect(False, "boom")
        assert issubclass(CheckFailed, AssertionError)

    def test_run_checks_in_order(self):
        """Should return results in the requested order."""
        results = run_checks(["weak-21", "insert-15133"])
        assert [result.name for result in results] == ["weak-21", "insert-15133"]
        assert all(result.passed for result in results)
