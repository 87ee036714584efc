"""MetricsPort: the metrics capability the engine and HTTP layer depend on.

Computation code records what happened (an operation ran, how long it took);
infrastructure adapters decide how the numbers are exported.
"""
from collections.abc import Callable
from dataclasses import dataclass
from typing import Protocol


class MetricsPort(Protocol):
    """Structural interface for counters, histograms and gauges."""

    def inc_counter(self, name: str, labels: dict[str, str]) -> None:
        """Increment a monotonically increasing counter by 1."""
        ...

    def observe_histogram(self, name: str, value: float, labels: dict[str, str]) -> None:
        """Record one observation (seconds, for durations)."""
        ...

    def set_gauge(self, name: str, value: float, labels: dict[str, str]) -> None:
        ...

    def get_http_handler(self) -> Callable[[], bytes]:
        """Return a zero-argument callable producing the exposition payload."""
        ...


@dataclass
class MetricsLabels:
    """Label sets used across khecke metrics.

    Values must stay low-cardinality: operation names and outcomes, never words
    or tableaux.
    """

    service: str = ""
    instance: str = ""
    version: str = ""

    operation: str = ""
    outcome: str = ""

    method: str = ""
    route: str = ""
    code: str = ""

    def to_dict(self) -> dict[str, str]:
        """Non-empty labels only."""
        fields = {
            "service": self.service,
            "instance": self.instance,
            "version": self.version,
            "operation": self.operation,
            "outcome": self.outcome,
            "method": self.method,
            "route": self.route,
            "code": self.code,
        }
        return {key: value for key, value in fields.items() if value}

    def constant_labels(self) -> dict[str, str]:
        return {"service": self.service, "instance": self.instance, "version": self.version}
