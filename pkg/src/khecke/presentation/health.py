"""Liveness and readiness of the khecke service.

``/ready`` reports the search limits the engine will apply, so a client can
tell which ``bound`` and visited-word cap its answers were computed under.
"""
from datetime import datetime, timezone

from fastapi import APIRouter, Request, Response, status
from pydantic import BaseModel

from khecke.application.engine import KheckeEngine
from khecke.infrastructure.config import get_settings
from khecke.infrastructure.logging import get_logger

router = APIRouter()
logger = get_logger(component="health")


class HealthResponse(BaseModel):
    status: str
    service: str
    version: str
    environment: str
    timestamp: str


class SearchLimits(BaseModel):
    jobs: int
    urt_bound: int
    extra_length: int
    max_visited_words: int

    @classmethod
    def of(cls, engine: KheckeEngine) -> "SearchLimits":
        settings = engine.settings
        return cls(
            jobs=engine.jobs,
            urt_bound=settings.urt_bound,
            extra_length=settings.extra_length,
            max_visited_words=settings.max_visited_words,
        )


class ReadinessResponse(BaseModel):
    status: str
    checks: dict[str, str]
    limits: SearchLimits | None = None


@router.get("/health", status_code=status.HTTP_200_OK, response_model=HealthResponse)
async def health_check() -> HealthResponse:
    settings = get_settings()
    logger.debug("Health check requested")
    return HealthResponse(
        status="healthy",
        service=settings.service_name,
        version=settings.version,
        environment=settings.environment,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )


@router.get("/ready", response_model=ReadinessResponse)
async def readiness_check(request: Request, response: Response) -> ReadinessResponse:
    """503 until the engine, its settings and the metrics port are attached."""
    engine: KheckeEngine | None = getattr(request.app.state, "engine", None)
    checks = {
        "engine": "ok" if engine is not None else "missing",
        "settings": "ok" if engine is not None and engine.settings is not None else "missing",
        "workers": "ok" if engine is not None and engine.jobs >= 1 else "missing",
        "metrics": "ok" if getattr(request.app.state, "metrics_port", None) is not None else "missing",
    }
    if engine is not None and all(value == "ok" for value in checks.values()):
        return ReadinessResponse(status="ready", checks=checks, limits=SearchLimits.of(engine))
    logger.warning("Readiness check failed", checks=checks)
    response.status_code = status.HTTP_503_SERVICE_UNAVAILABLE
    return ReadinessResponse(status="not-ready", checks=checks)
