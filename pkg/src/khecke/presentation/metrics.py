"""Prometheus exposition of operation, request and worker metrics."""
from fastapi import APIRouter, Request, Response
from prometheus_client import CONTENT_TYPE_LATEST

router = APIRouter()


@router.get("")
async def metrics(request: Request) -> Response:
    """Refresh the worker gauge from the engine, then render the private registry."""
    state = request.app.state
    engine = getattr(state, "engine", None)
    if engine is not None:
        state.metrics_port.set_gauge("khecke_engine_workers", engine.jobs, {})
    handler = state.metrics_port.get_http_handler()
    return Response(content=handler(), media_type=CONTENT_TYPE_LATEST)
