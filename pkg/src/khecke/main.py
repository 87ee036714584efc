"""HTTP application factory and server entry point for ``khecke serve``."""
from collections.abc import AsyncGenerator
from contextlib import asynccontextmanager

import uvicorn
from fastapi import FastAPI

from khecke.application.engine import KheckeEngine
from khecke.domain.ports.metrics import MetricsLabels
from khecke.infrastructure.config import get_settings
from khecke.infrastructure.logging import get_logger, setup_logging
from khecke.infrastructure.observability.metrics_middleware import create_red_metrics_middleware
from khecke.infrastructure.observability.prometheus_adapter import PrometheusMetricsAdapter
from khecke.presentation.api import router as api_router
from khecke.presentation.health import router as health_router
from khecke.presentation.metrics import router as metrics_router


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncGenerator[None, None]:
    settings = get_settings()
    logger = get_logger(service_name=settings.service_name, environment=settings.environment)
    logger.info("Starting khecke service", version=settings.version, jobs=app.state.engine.jobs)
    yield
    logger.info("Shutting down khecke service")


def create_app() -> FastAPI:
    settings = get_settings()
    labels = MetricsLabels(
        service=settings.service_name, instance=settings.service_name, version=settings.version
    )
    metrics_port = PrometheusMetricsAdapter(labels.constant_labels())

    app = FastAPI(
        title="khecke API",
        description="Hecke insertion, K-Knuth equivalence and K-theoretic Littlewood-Richardson rules",
        version=settings.version,
        lifespan=lifespan,
    )
    app.state.metrics_port = metrics_port
    app.state.engine = KheckeEngine(settings, metrics_port)

    app.middleware("http")(create_red_metrics_middleware(metrics_port))

    app.include_router(health_router, prefix="/api/v1", tags=["health"])
    app.include_router(metrics_router, prefix="/api/v1/metrics", tags=["metrics"])
    app.include_router(api_router, prefix="/api/v1", tags=["compute"])
    return app


def serve(host: str | None = None, port: int | None = None) -> None:
    """Run the API under uvicorn until interrupted."""
    setup_logging()
    settings = get_settings()
    uvicorn.run(
        create_app(),
        host=host or settings.host,
        port=port or settings.http_port,
        log_config=None,
        access_log=False,
    )


if __name__ == "__main__":
    serve()
