"""K-theoretic Littlewood-Richardson counting rules.

For a unique rectification target ``T`` of shape ``mu``:

* the coefficient of ``G_nu`` in ``G_lambda * G_mu`` is ``(-1)^{|nu|-|lambda|-|mu|}``
  times the number of increasing fillings ``R`` of ``nu / lambda`` with
  ``P(row(R)) = T``;
* the coefficient of ``G_lambda (x) G_mu`` in ``Delta(G_nu)`` is the same sign times
  the number of increasing fillings of ``lambda (+) mu`` whose reading word
  inserts to a URT of shape ``nu``.

Both counts are only meaningful for URTs, so the guarded entry points refuse other
tableaux; ``count_skew_fillings`` runs the bare count.
"""
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import TypeVar

from khecke.domain.errors import InvalidTableauError, NotURTError, WindowError
from khecke.domain.hecke import insertion_tableau
from khecke.domain.kknuth import is_urt
from khecke.domain.shapes import Partition, SkewShape, direct_sum_shape, shapes_between
from khecke.domain.symmetric_functions import coproduct_G, expand_product_in_G
from khecke.domain.tableaux import (
    IncreasingTableau,
    enumerate_increasing_over,
    minimal_tableau,
    reading_word,
    superstandard_tableau,
)
from khecke.infrastructure.constants import DEFAULT_MAX_VISITED_WORDS, DEFAULT_URT_BOUND
from khecke.infrastructure.logging import get_logger

logger = get_logger(component="lr_rules")

_T = TypeVar("_T")
_R = TypeVar("_R")
Mapper = Callable[[Callable[[_T], _R], Sequence[_T]], list[_R]]


def _serial(func: Callable[[_T], _R], items: Sequence[_T]) -> list[_R]:
    return [func(item) for item in items]


class URTChoice(str, Enum):
    SUPERSTANDARD = "superstandard"
    MINIMAL = "minimal"


def urt_tableau(shape: Partition, choice: "URTChoice | IncreasingTableau") -> IncreasingTableau:
    if isinstance(choice, IncreasingTableau):
        if not choice.is_straight or choice.partition != shape:
            raise InvalidTableauError(
                "explicit tableau does not have the requested shape", shape=str(shape)
            )
        return choice
    if URTChoice(choice) is URTChoice.MINIMAL:
        return minimal_tableau(shape)
    return superstandard_tableau(shape)


@dataclass(frozen=True)
class LRQuery:
    lam: Partition
    mu: Partition
    nu: Partition
    urt_choice: URTChoice | IncreasingTableau = URTChoice.SUPERSTANDARD


@dataclass(frozen=True)
class LRReport:
    """A signed count; ``witnesses`` are the fillings, in enumeration order."""

    count: int
    sign: int
    witnesses: tuple[IncreasingTableau, ...] = ()
    oracle_agreement: bool | None = None

    @property
    def coefficient(self) -> int:
        return self.sign * self.count


def lr_sign(outer_size: int, first_size: int, second_size: int) -> int:
    return -1 if (outer_size - first_size - second_size) % 2 else 1


def count_skew_fillings(
    shape: SkewShape | Partition, target: IncreasingTableau
) -> list[IncreasingTableau]:
    """Increasing fillings ``R`` of ``shape`` over the letters of ``target`` with ``P(row(R)) = target``."""
    return [
        filling
        for filling in enumerate_increasing_over(shape, sorted(target.support))
        if insertion_tableau(reading_word(filling)) == target
    ]


def require_urt(
    tableau: IncreasingTableau, bound: int, max_visited: int, failure: str
) -> None:
    verdict = is_urt(tableau, bound, max_visited)
    if not verdict.passes:
        raise NotURTError(
            f"counting rule needs a unique rectification target; {failure}",
            tableau=str(tableau),
            status=verdict.status.value,
        )


_PRODUCT_FAILURE = "a non-URT such as P(34124) undercounts c_(2,1),(3,2)^(4,3,2) (2 instead of 3)"
_COPRODUCT_FAILURE = (
    "a non-URT such as P(34124) admits no filling of (2,1)+(3,1) although the coefficient is nonzero"
)


def _product_report(lam: Partition, mu: Partition, nu: Partition, target: IncreasingTableau) -> LRReport:
    sign = lr_sign(nu.size, lam.size, mu.size)
    if not nu.contains(lam) or nu.size < lam.size + mu.size:
        return LRReport(0, sign)
    witnesses = count_skew_fillings(SkewShape(nu, lam), target)
    return LRReport(len(witnesses), sign, tuple(witnesses))


def lr_coefficient(
    query: LRQuery,
    bound: int = DEFAULT_URT_BOUND,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> LRReport:
    """``|c_{lambda,mu}^nu|`` by counting fillings of ``nu / lambda`` that insert to a URT."""
    target = urt_tableau(query.mu, query.urt_choice)
    require_urt(target, bound, max_visited, _PRODUCT_FAILURE)
    return _product_report(query.lam, query.mu, query.nu, target)


def lr_table(
    lam: Partition,
    mu: Partition,
    max_extra: int,
    urt_choice: URTChoice | IncreasingTableau = URTChoice.SUPERSTANDARD,
    bound: int = DEFAULT_URT_BOUND,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
    mapper: Mapper = _serial,
) -> dict[Partition, LRReport]:
    """Nonzero counts for every ``nu`` with ``|lambda|+|mu| <= |nu| <= |lambda|+|mu|+max_extra``.

    Rows and columns of ``nu / lambda`` are strictly increasing over the letters of
    the URT, which bounds the candidate shapes.
    """
    target = urt_tableau(mu, urt_choice)
    require_urt(target, bound, max_visited, _PRODUCT_FAILURE)
    letters = len(target.support)
    shapes = shapes_between(lam, mu.size, mu.size + max_extra, row_cap=letters, col_cap=letters)
    reports = mapper(lambda nu: _product_report(lam, mu, nu, target), shapes)
    return {nu: report for nu, report in zip(shapes, reports, strict=True) if report.count}


def dual_lr_coefficient(
    target: IncreasingTableau,
    lam: Partition,
    mu: Partition,
    bound: int = DEFAULT_URT_BOUND,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> LRReport:
    """``|d_{lambda,mu}^nu|`` by counting fillings of ``lambda (+) mu`` that insert to ``target``."""
    require_urt(target, bound, max_visited, _COPRODUCT_FAILURE)
    return _dual_report(target, lam, mu)


def _dual_report(target: IncreasingTableau, lam: Partition, mu: Partition) -> LRReport:
    nu = target.partition
    sign = lr_sign(nu.size, lam.size, mu.size)
    if lam.size + mu.size < nu.size:
        return LRReport(0, sign)
    witnesses = count_skew_fillings(direct_sum_shape(lam, mu), target)
    return LRReport(len(witnesses), sign, tuple(witnesses))


def subpartitions(shape: Partition) -> list[Partition]:
    """Every partition contained in ``shape``."""
    found: list[Partition] = []

    def grow(prefix: list[int]) -> None:
        found.append(Partition.of(prefix))
        row = len(prefix)
        if row >= len(shape):
            return
        cap = shape.parts[row] if not prefix else min(shape.parts[row], prefix[-1])
        for length in range(1, cap + 1):
            grow([*prefix, length])

    grow([])
    return sorted(found, key=lambda p: (p.size, tuple(-part for part in p.parts)))


def dual_lr_table(
    target: IncreasingTableau,
    bound: int = DEFAULT_URT_BOUND,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
    mapper: Mapper = _serial,
) -> dict[tuple[Partition, Partition], LRReport]:
    """Nonzero dual counts over all ``lambda, mu`` contained in ``shape(target)``."""
    require_urt(target, bound, max_visited, _COPRODUCT_FAILURE)
    inside = subpartitions(target.partition)
    pairs = [(lam, mu) for lam in inside for mu in inside]
    reports = mapper(lambda pair: _dual_report(target, pair[0], pair[1]), pairs)
    return {pair: report for pair, report in zip(pairs, reports, strict=True) if report.count}


# -- oracle agreement ----------------------------------------------------------


@dataclass(frozen=True)
class OracleRow:
    shapes: tuple[Partition, ...]
    count: int
    sign: int
    oracle: int

    @property
    def agree(self) -> bool:
        return self.oracle == self.sign * self.count


@dataclass(frozen=True)
class OracleReport:
    rows: tuple[OracleRow, ...]
    num_vars: int
    max_degree: int
    notes: tuple[str, ...] = field(default=())

    @property
    def agree(self) -> bool:
        return all(row.agree for row in self.rows)

    @property
    def mismatches(self) -> list[OracleRow]:
        return [row for row in self.rows if not row.agree]


def _require_window(num_vars: int, max_degree: int, needed: int) -> None:
    if num_vars < max_degree or max_degree < needed:
        raise WindowError(
            "window insufficient", num_vars=num_vars, max_degree=max_degree, needed=needed
        )


def verify_against_oracle(
    lam: Partition,
    mu: Partition,
    num_vars: int,
    max_degree: int,
    urt_choice: URTChoice | IncreasingTableau = URTChoice.SUPERSTANDARD,
    bound: int = DEFAULT_URT_BOUND,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
    mapper: Mapper = _serial,
) -> OracleReport:
    """Compare the product counting rule with the G-expansion of ``G_lambda * G_mu``."""
    _require_window(num_vars, max_degree, lam.size + mu.size)
    table = lr_table(
        lam, mu, max_degree - lam.size - mu.size, urt_choice, bound, max_visited, mapper
    )
    oracle = expand_product_in_G(lam, mu, num_vars, max_degree)
    shapes = sorted(
        set(table) | set(oracle.coefficients),
        key=lambda p: (p.size, tuple(-part for part in p.parts)),
    )
    rows = tuple(
        OracleRow(
            (nu,),
            table[nu].count if nu in table else 0,
            lr_sign(nu.size, lam.size, mu.size),
            oracle.coefficient(nu),
        )
        for nu in shapes
    )
    report = OracleReport(rows, num_vars, max_degree)
    logger.info(
        "Product rule checked against oracle",
        lam=str(lam), mu=str(mu), rows=len(rows), agree=report.agree,
    )
    return report


def verify_dual_against_oracle(
    target: IncreasingTableau,
    num_vars: int,
    max_degree: int,
    joint_degree: int | None = None,
    bound: int = DEFAULT_URT_BOUND,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
    mapper: Mapper = _serial,
) -> OracleReport:
    """Compare the coproduct counting rule with the expansion of ``Delta(G_nu)``."""
    nu = target.partition
    _require_window(num_vars, max_degree, nu.size)
    joint = 2 * max_degree if joint_degree is None else joint_degree
    table = dual_lr_table(target, bound, max_visited, mapper)
    oracle = coproduct_G(nu, num_vars, max_degree, joint)

    def visible(pair: tuple[Partition, Partition]) -> bool:
        lam, mu = pair
        return lam.size <= max_degree and mu.size <= max_degree and lam.size + mu.size <= joint

    pairs = sorted(
        {pair for pair in table if visible(pair)} | set(oracle),
        key=lambda pair: (pair[0].size + pair[1].size, pair[0].parts, pair[1].parts),
    )
    rows = tuple(
        OracleRow(
            pair,
            table[pair].count if pair in table else 0,
            lr_sign(nu.size, pair[0].size, pair[1].size),
            oracle.get(pair, 0),
        )
        for pair in pairs
    )
    return OracleReport(rows, num_vars, max_degree)


# -- classical rule ------------------------------------------------------------


def classical_lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Classical LR coefficient: semistandard fillings of ``nu / lam`` with content ``mu``
    whose right-to-left, top-to-bottom reading is a lattice word."""
    if not nu.contains(lam) or nu.size != lam.size + mu.size:
        return 0
    cells = SkewShape(nu, lam).cells()
    values: dict[tuple[int, int], int] = {}
    remaining = list(mu.parts)
    count = 0

    def lattice() -> bool:
        seen = [0] * (len(mu) + 1)
        for row in range(1, len(nu) + 1):
            for col in range(nu.row(row), lam.row(row), -1):
                value = values[(row, col)]
                seen[value] += 1
                if value > 1 and seen[value] > seen[value - 1]:
                    return False
        return True

    def fill(k: int) -> None:
        nonlocal count
        if k == len(cells):
            count += lattice()
            return
        row, col = cells[k]
        low = values.get((row, col - 1), 1)
        above = values.get((row - 1, col))
        if above is not None:
            low = max(low, above + 1)
        for value in range(low, len(mu) + 1):
            if remaining[value - 1]:
                remaining[value - 1] -= 1
                values[(row, col)] = value
                fill(k + 1)
                del values[(row, col)]
                remaining[value - 1] += 1

    fill(0)
    return count
