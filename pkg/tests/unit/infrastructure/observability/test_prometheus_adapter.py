"""BDD tests for PrometheusMetricsAdapter (infrastructure layer).

The adapter implements MetricsPort with prometheus-client on a private registry.
"""
import pytest

from khecke.infrastructure.observability.prometheus_adapter import PrometheusMetricsAdapter

IDENTITY = {"service": "khecke", "instance": "khecke-test", "version": "0.1.0"}


def exposition(adapter: PrometheusMetricsAdapter) -> str:
    return adapter.get_http_handler()().decode("utf-8")


class TestPrometheusAdapterInitialization:
    """Test adapter construction."""

    def test_adapter_keeps_its_own_registry(self):
        """
        Given two adapters
        When recording on one of them
        Then the other registry should not see the sample
        """
        first = PrometheusMetricsAdapter(IDENTITY)
        second = PrometheusMetricsAdapter(IDENTITY)

        first.inc_counter("khecke_operations_total", {"operation": "insert", "outcome": "ok"})

        assert first.registry is not second.registry
        assert "khecke_operations_total" not in exposition(second)

    def test_build_info_carries_the_identity(self):
        """
        Given constant labels
        When exporting
        Then a khecke_build_info sample should carry them
        """
        output = exposition(PrometheusMetricsAdapter(IDENTITY))

        assert "khecke_build_info{" in output
        assert 'service="khecke"' in output
        assert 'instance="khecke-test"' in output

    def test_no_build_info_without_identity(self):
        """
        Given no constant labels
        When exporting
        Then no build info should be published
        """
        assert "khecke_build_info" not in exposition(PrometheusMetricsAdapter({}))

    def test_runtime_collectors_are_registered(self):
        """
        Given a fresh adapter
        When exporting
        Then process or platform metrics should be present
        """
        output = exposition(PrometheusMetricsAdapter(IDENTITY))

        assert "python_info" in output or "process_" in output


class TestPrometheusAdapterCollectors:
    """Test counters, histograms and gauges."""

    def test_counter_sample(self):
        """
        Given an operation counter
        When incremented once
        Then the exposition should show the labelled sample at 1
        """
        adapter = PrometheusMetricsAdapter(IDENTITY)

        adapter.inc_counter("khecke_operations_total", {"operation": "insert", "outcome": "ok"})

        assert 'khecke_operations_total{operation="insert",outcome="ok"} 1.0' in exposition(adapter)

    def test_counter_is_created_once(self):
        """
        Given repeated increments of one counter
        When inspecting the collectors
        Then a single collector should hold every increment
        """
        adapter = PrometheusMetricsAdapter(IDENTITY)
        labels = {"operation": "equivalent", "outcome": "negative"}

        for _ in range(5):
            adapter.inc_counter("khecke_operations_total", labels)

        assert list(adapter._collectors) == ["khecke_operations_total"]
        assert 'outcome="negative"} 5.0' in exposition(adapter)

    def test_histogram_counts_observations(self):
        """
        Given a duration histogram
        When observing two values
        Then the _count sample should be 2
        """
        adapter = PrometheusMetricsAdapter(IDENTITY)

        adapter.observe_histogram("khecke_operation_duration_seconds", 0.002, {"operation": "lr"})
        adapter.observe_histogram("khecke_operation_duration_seconds", 3.5, {"operation": "lr"})

        assert 'khecke_operation_duration_seconds_count{operation="lr"} 2.0' in exposition(adapter)

    def test_gauge_holds_the_last_value(self):
        """
        Given a gauge
        When set twice
        Then the last value should be exported
        """
        adapter = PrometheusMetricsAdapter(IDENTITY)

        adapter.set_gauge("khecke_class_words", 10.0, {})
        adapter.set_gauge("khecke_class_words", 42.0, {})

        assert "khecke_class_words 42.0" in exposition(adapter)

    def test_constant_labels_are_stripped_from_samples(self):
        """
        Given labels that repeat the service identity
        When recording
        Then only per-sample label names should be used
        """
        adapter = PrometheusMetricsAdapter(IDENTITY)

        adapter.inc_counter("http_requests_total", {**IDENTITY, "method": "GET", "route": "/", "code": "200"})

        assert adapter._collectors["http_requests_total"]._labelnames == ("code", "method", "route")

    def test_kind_conflict_is_rejected(self):
        """
        Given a name registered as a counter
        When the same name is used as a gauge
        Then a TypeError should be raised
        """
        adapter = PrometheusMetricsAdapter(IDENTITY)
        adapter.inc_counter("khecke_runs_total", {})

        with pytest.raises(TypeError, match="already registered as Counter"):
            adapter.set_gauge("khecke_runs_total", 1.0, {})
