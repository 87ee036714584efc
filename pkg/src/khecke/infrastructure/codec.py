"""JSON encodings of khecke values.

* partitions and words: arrays of ints
* straight increasing tableaux: arrays of int rows
* skew increasing tableaux: ``{"outer": [...], "inner": [...], "rows": [[...]]}``
* set-valued tableaux: arrays of rows of int arrays
* polynomials: ``[{"exponents": [...], "coefficient": c}]`` by degree, then exponents

Output bytes are deterministic (sorted keys, fixed indentation).
"""
from enum import Enum
from pathlib import Path
from typing import Any

import orjson
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from khecke.domain.errors import InvalidTableauError
from khecke.domain.polynomials import TruncatedPoly
from khecke.domain.shapes import Partition, SkewShape
from khecke.domain.tableaux import IncreasingTableau, SetValuedTableau

DUMP_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_PASSTHROUGH_DATACLASS


class SkewTableauPayload(BaseModel):
    """Wire form of a skew increasing tableau."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    outer: list[int]
    inner: list[int] = Field(default_factory=list)
    rows: list[list[int]]


class TermPayload(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    exponents: list[int]
    coefficient: int


_tableau_adapter: TypeAdapter[list[list[int]] | SkewTableauPayload] = TypeAdapter(
    list[list[int]] | SkewTableauPayload
)
_set_valued_adapter: TypeAdapter[list[list[list[int]]]] = TypeAdapter(list[list[list[int]]])


# -- encoding ------------------------------------------------------------------


def encode_partition(shape: Partition) -> list[int]:
    return list(shape.parts)


def encode_tableau(tableau: IncreasingTableau) -> list[list[int]] | dict[str, Any]:
    if tableau.is_straight:
        return tableau.to_lists()
    return {
        "outer": encode_partition(tableau.shape.outer),
        "inner": encode_partition(tableau.shape.inner),
        "rows": tableau.to_lists(),
    }


def encode_set_valued(tableau: SetValuedTableau) -> list[list[list[int]]]:
    return tableau.to_lists()


def encode_poly(poly: TruncatedPoly) -> list[dict[str, Any]]:
    return [
        TermPayload(exponents=list(exponents), coefficient=coefficient).model_dump()
        for exponents, coefficient in poly.terms()
    ]


def _default(value: Any) -> Any:
    if isinstance(value, Partition):
        return encode_partition(value)
    if isinstance(value, SkewShape):
        return {"outer": encode_partition(value.outer), "inner": encode_partition(value.inner)}
    if isinstance(value, IncreasingTableau):
        return encode_tableau(value)
    if isinstance(value, SetValuedTableau):
        return encode_set_valued(value)
    if isinstance(value, TruncatedPoly):
        return encode_poly(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, frozenset | set):
        return sorted(value)
    raise TypeError(f"cannot encode {type(value).__name__}")


def dumps(payload: Any) -> bytes:
    """Deterministic JSON bytes (trailing newline included)."""
    return orjson.dumps(payload, default=_default, option=DUMP_OPTIONS) + b"\n"


# -- decoding ------------------------------------------------------------------


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return "/".join(str(part) for part in first["loc"]) or "<root>"


def _parse(data: bytes | str) -> Any:
    try:
        return orjson.loads(data)
    except orjson.JSONDecodeError as exc:
        raise InvalidTableauError("invalid JSON", position=exc.pos) from exc


def decode_tableau(data: bytes | str | Any) -> IncreasingTableau:
    """Decode a straight or skew increasing tableau; structural errors name the JSON location."""
    raw = _parse(data) if isinstance(data, bytes | str) else data
    try:
        payload = _tableau_adapter.validate_python(raw)
    except ValidationError as exc:
        raise InvalidTableauError("malformed tableau JSON", location=_location(exc)) from exc
    if isinstance(payload, SkewTableauPayload):
        tableau = IncreasingTableau(
            tuple(tuple(row) for row in payload.rows), tuple(payload.inner)
        )
        if tableau.shape.outer != Partition.of(payload.outer):
            raise InvalidTableauError(
                "rows do not fill the declared outer shape", outer=str(Partition.of(payload.outer))
            )
        return tableau
    return IncreasingTableau.from_rows(payload)


def decode_set_valued(data: bytes | str | Any) -> SetValuedTableau:
    raw = _parse(data) if isinstance(data, bytes | str) else data
    try:
        rows = _set_valued_adapter.validate_python(raw)
    except ValidationError as exc:
        raise InvalidTableauError("malformed set-valued tableau JSON", location=_location(exc)) from exc
    return SetValuedTableau.from_rows(rows)


def decode_poly(data: bytes | str | Any, num_vars: int, max_degree: int) -> TruncatedPoly:
    raw = _parse(data) if isinstance(data, bytes | str) else data
    terms = TypeAdapter(list[TermPayload]).validate_python(raw)
    return TruncatedPoly(
        num_vars, max_degree, {tuple(term.exponents): term.coefficient for term in terms}
    )


def load_tableau(path: Path) -> IncreasingTableau:
    return decode_tableau(path.read_bytes())
