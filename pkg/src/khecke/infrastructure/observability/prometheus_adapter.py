"""PrometheusMetricsAdapter: the prometheus-client implementation of MetricsPort."""
import threading
from collections.abc import Callable
from typing import TypeVar

from prometheus_client import (
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    Info,
    PlatformCollector,
    ProcessCollector,
    generate_latest,
)
from prometheus_client.metrics import MetricWrapperBase

_M = TypeVar("_M", bound=MetricWrapperBase)

# Engine operations range from microseconds (one insertion) to minutes (oracle sweeps).
DURATION_BUCKETS = (0.001, 0.005, 0.025, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0)


class PrometheusMetricsAdapter:
    """Metrics on a private registry, with collectors created on first use.

    Constant labels (service identity) are exported once through a ``khecke_build``
    info metric and stripped from per-sample labels.
    """

    def __init__(self, constant_labels: dict[str, str]) -> None:
        self.registry = CollectorRegistry()
        self.registry.register(ProcessCollector(registry=None))
        self.registry.register(PlatformCollector(registry=None))

        self._constant_labels = dict(constant_labels)
        self._collectors: dict[str, MetricWrapperBase] = {}
        self._lock = threading.Lock()

        if self._constant_labels:
            build = Info("khecke_build", "khecke build identity", registry=self.registry)
            build.info(self._constant_labels)

    def inc_counter(self, name: str, labels: dict[str, str]) -> None:
        sample = self._sample_labels(labels)
        counter = self._get_or_create(name, sample, Counter)
        self._bind(counter, sample).inc()

    def observe_histogram(self, name: str, value: float, labels: dict[str, str]) -> None:
        sample = self._sample_labels(labels)
        histogram = self._get_or_create(name, sample, Histogram, buckets=DURATION_BUCKETS)
        self._bind(histogram, sample).observe(value)

    def set_gauge(self, name: str, value: float, labels: dict[str, str]) -> None:
        sample = self._sample_labels(labels)
        gauge = self._get_or_create(name, sample, Gauge)
        self._bind(gauge, sample).set(value)

    def get_http_handler(self) -> Callable[[], bytes]:
        def metrics_handler() -> bytes:
            return generate_latest(self.registry)

        return metrics_handler

    def _sample_labels(self, labels: dict[str, str]) -> dict[str, str]:
        return {key: value for key, value in labels.items() if key not in self._constant_labels}

    @staticmethod
    def _bind(collector: _M, labels: dict[str, str]) -> _M:
        return collector.labels(**labels) if labels else collector

    def _get_or_create(
        self, name: str, labels: dict[str, str], kind: type[_M], **options: object
    ) -> _M:
        existing = self._collectors.get(name)
        if existing is None:
            with self._lock:
                existing = self._collectors.get(name)
                if existing is None:
                    existing = kind(
                        name,
                        f"{name} metric",
                        labelnames=sorted(labels),
                        registry=self.registry,
                        **options,
                    )
                    self._collectors[name] = existing
        if not isinstance(existing, kind):
            raise TypeError(f"metric {name} already registered as {type(existing).__name__}")
        return existing
