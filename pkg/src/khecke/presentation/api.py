"""Compute routes: insertion, equivalence and LR coefficients.

Handlers are plain ``def`` so FastAPI runs the CPU-bound engine calls in its
worker threads. Bodies are encoded with the same codec as the CLI.
"""
from typing import Any

from fastapi import APIRouter, HTTPException, Request, Response, status
from pydantic import BaseModel, Field

from khecke.application.engine import KheckeEngine
from khecke.domain.errors import KheckeError, NotURTError, SearchBoundError
from khecke.domain.lr_rules import LRQuery, URTChoice
from khecke.domain.shapes import Partition
from khecke.domain.words import make_word
from khecke.infrastructure.codec import decode_tableau, dumps

router = APIRouter()


class InsertRequest(BaseModel):
    word: list[int]


class EquivalenceRequest(BaseModel):
    first: list[int]
    second: list[int]
    max_len: int | None = Field(default=None, ge=1)


class LRRequest(BaseModel):
    lam: list[int]
    mu: list[int]
    nu: list[int] | None = None
    max_extra: int = Field(default=2, ge=0)
    urt: URTChoice | list[list[int]] = URTChoice.SUPERSTANDARD
    max_len: int | None = Field(default=None, ge=1)


def _engine(request: Request) -> KheckeEngine:
    engine: KheckeEngine = request.app.state.engine
    return engine


def _json(payload: Any) -> Response:
    return Response(content=dumps(payload), media_type="application/json")


def _reject(exc: KheckeError) -> HTTPException:
    if isinstance(exc, NotURTError):
        code = status.HTTP_409_CONFLICT
    elif isinstance(exc, SearchBoundError):
        code = status.HTTP_507_INSUFFICIENT_STORAGE
    else:
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    return HTTPException(status_code=code, detail=str(exc))


@router.post("/insert")
def insert(body: InsertRequest, request: Request) -> Response:
    try:
        tableau, recording = _engine(request).insert(make_word(body.word))
    except KheckeError as exc:
        raise _reject(exc) from exc
    return _json({"word": body.word, "P": tableau, "Q": recording})


@router.post("/equivalence")
def equivalence(body: EquivalenceRequest, request: Request) -> Response:
    try:
        verdict = _engine(request).equivalent(
            make_word(body.first), make_word(body.second), body.max_len
        )
    except KheckeError as exc:
        raise _reject(exc) from exc
    return _json(
        {
            "verdict": verdict.kind,
            "bound": verdict.bound,
            "chain": [list(step) for step in verdict.chain],
            "certificate": verdict.certificate.describe() if verdict.certificate else None,
            "reason": verdict.reason,
        }
    )


@router.post("/lr")
def lr(body: LRRequest, request: Request) -> Response:
    engine = _engine(request)
    lam, mu = Partition.of(body.lam), Partition.of(body.mu)
    try:
        choice = body.urt if isinstance(body.urt, URTChoice) else decode_tableau(body.urt)
        if body.nu is not None:
            report = engine.lr(LRQuery(lam, mu, Partition.of(body.nu), choice), body.max_len)
            return _json(
                {"count": report.count, "sign": report.sign, "witnesses": list(report.witnesses)}
            )
        table = engine.lr_table(lam, mu, body.max_extra, choice, body.max_len)
    except KheckeError as exc:
        raise _reject(exc) from exc
    rows = sorted(table.items(), key=lambda item: (item[0].size, item[0].parts))
    return _json(
        {"table": [{"nu": nu, "count": r.count, "sign": r.sign} for nu, r in rows]}
    )
