"""RED metrics middleware for the khecke HTTP app, written against MetricsPort."""
import time
from collections.abc import Awaitable, Callable

from fastapi import Request, Response

from khecke.domain.ports.metrics import MetricsLabels, MetricsPort

CallNext = Callable[[Request], Awaitable[Response]]


def _route_template(request: Request) -> str:
    # route pattern, never the raw path
    route = request.scope.get("route")
    path = getattr(route, "path", None) or request.url.path
    return path or "unknown"


def create_red_metrics_middleware(
    metrics_port: MetricsPort,
) -> Callable[[Request, CallNext], Awaitable[Response]]:
    """Rate, errors and duration per ``(method, route, code)``."""

    async def red_metrics_middleware(request: Request, call_next: CallNext) -> Response:
        start = time.perf_counter()
        response = await call_next(request)
        duration = time.perf_counter() - start

        labels = MetricsLabels(
            method=request.method,
            route=_route_template(request),
            code=str(response.status_code),
        ).to_dict()
        metrics_port.inc_counter("http_requests_total", labels)
        metrics_port.observe_histogram("http_request_duration_seconds", duration, labels)
        if response.status_code >= 400:
            metrics_port.inc_counter("http_request_errors_total", labels)
        return response

    return red_metrics_middleware
