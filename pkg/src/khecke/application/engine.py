"""KheckeEngine: the service object behind the CLI and the HTTP routes.

Every public method runs one domain operation inside ``_operation``, which binds
a structured log context, times the call and records
``khecke_operations_total{operation,outcome}`` and
``khecke_operation_duration_seconds{operation}``.
"""
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field

from khecke.application.parallel import mapper_for
from khecke.domain import kknuth, kpr, lr_rules, symmetric_functions
from khecke.domain.errors import KheckeError
from khecke.domain.hecke import (
    InsertionStep,
    insert_word,
    insertion_steps,
    insertion_tableau,
    reverse_word,
)
from khecke.domain.kknuth import ClassSlice, TableauClass, URTVerdict, Verdict
from khecke.domain.polynomials import TruncatedPoly
from khecke.domain.ports.metrics import MetricsLabels, MetricsPort
from khecke.domain.shapes import Partition
from khecke.domain.symmetric_functions import ClassSeries, GExpansion
from khecke.domain.tableaux import IncreasingTableau, RecordingTableau
from khecke.domain.words import Composition, Word
from khecke.infrastructure.config import Settings, get_settings
from khecke.infrastructure.logging import get_logger

OUTCOME_OK = "ok"
OUTCOME_NEGATIVE = "negative"
OUTCOME_UNKNOWN = "unknown"
OUTCOME_ERROR = "error"


@dataclass
class _Outcome:
    value: str = OUTCOME_OK
    details: dict[str, object] = field(default_factory=dict)


class KheckeEngine:
    """Domain operations with logging, metrics, configured bounds and worker fan-out."""

    def __init__(
        self,
        settings: Settings | None = None,
        metrics_port: MetricsPort | None = None,
        jobs: int | None = None,
    ) -> None:
        self.settings = settings or get_settings()
        self.metrics_port = metrics_port
        self.jobs = jobs or self.settings.jobs
        self.logger = get_logger(component="engine")
        self._mapper = mapper_for(self.jobs)

    # -- instrumentation ---------------------------------------------------------

    @contextmanager
    def _operation(self, name: str, **context: object) -> Iterator[_Outcome]:
        outcome = _Outcome()
        log = self.logger.bind(operation=name, **context)
        log.debug("Operation started")
        start = time.perf_counter()
        try:
            yield outcome
        except KheckeError as exc:
            outcome.value = OUTCOME_ERROR
            log.warning("Operation rejected", error=str(exc))
            raise
        finally:
            elapsed = time.perf_counter() - start
            self._record(name, outcome.value, elapsed)
            log.info(
                "Operation finished",
                outcome=outcome.value,
                elapsed=round(elapsed, 6),
                **outcome.details,
            )

    def _record(self, operation: str, outcome: str, elapsed: float) -> None:
        if self.metrics_port is None:
            return
        self.metrics_port.inc_counter(
            "khecke_operations_total",
            MetricsLabels(operation=operation, outcome=outcome).to_dict(),
        )
        self.metrics_port.observe_histogram(
            "khecke_operation_duration_seconds",
            elapsed,
            MetricsLabels(operation=operation).to_dict(),
        )

    def _bound(self, first: Word, second: Word = (), bound: int | None = None) -> int:
        if bound is not None:
            return bound
        return kknuth.default_bound(first, second, self.settings.extra_length)

    @property
    def max_visited(self) -> int:
        return self.settings.max_visited_words

    # -- insertion -----------------------------------------------------------------

    def insert(self, word: Word) -> tuple[IncreasingTableau, RecordingTableau]:
        with self._operation("insert", length=len(word)):
            return insert_word(word)

    def trace(self, word: Word) -> list[InsertionStep]:
        with self._operation("trace", length=len(word)):
            return insertion_steps(word)

    def reverse(self, tableau: IncreasingTableau, recording: RecordingTableau) -> Word:
        with self._operation("reverse", size=tableau.size):
            return reverse_word(tableau, recording)

    def roundtrip(self, word: Word) -> Word:
        """Insert then reverse; the outcome is negative when the word is not recovered."""
        with self._operation("roundtrip", length=len(word)) as outcome:
            tableau, recording = insert_word(word)
            recovered = reverse_word(tableau, recording)
            if recovered != word:
                outcome.value = OUTCOME_NEGATIVE
            return recovered

    # -- K-Knuth monoid --------------------------------------------------------------

    def equivalent(self, first: Word, second: Word, bound: int | None = None) -> Verdict:
        max_len = self._bound(first, second, bound)
        with self._operation("equivalent", bound=max_len) as outcome:
            verdict = kknuth.equivalent(first, second, max_len, self.max_visited)
            outcome.value = {
                kknuth.VerdictKind.EQUIVALENT: OUTCOME_OK,
                kknuth.VerdictKind.DISTINCT: OUTCOME_NEGATIVE,
                kknuth.VerdictKind.UNKNOWN: OUTCOME_UNKNOWN,
            }[verdict.kind]
            outcome.details["chain_length"] = len(verdict.chain)
            return verdict

    def class_slice(self, word: Word, bound: int | None = None) -> ClassSlice:
        max_len = self._bound(word, bound=bound)
        with self._operation("class_slice", bound=max_len) as outcome:
            found = kknuth.class_slice(
                word, max_len, self.max_visited, self.settings.progress_interval
            )
            outcome.details["words"] = len(found)
            return found

    def class_tableaux(self, word: Word, bound: int | None = None) -> TableauClass:
        max_len = self._bound(word, bound=bound)
        with self._operation("class_tableaux", bound=max_len) as outcome:
            found = kknuth.equivalent_tableaux(
                insertion_tableau(word), max_len, self.max_visited
            )
            outcome.details["tableaux"] = len(found.members)
            return found

    def is_urt(self, tableau: IncreasingTableau, bound: int | None = None) -> URTVerdict:
        max_len = bound or self.settings.urt_bound
        with self._operation("is_urt", bound=max_len) as outcome:
            verdict = kknuth.is_urt(tableau, max_len, self.max_visited)
            outcome.value = {
                kknuth.URTStatus.URT_WITHIN_BOUND: OUTCOME_OK,
                kknuth.URTStatus.NOT_URT: OUTCOME_NEGATIVE,
                kknuth.URTStatus.UNKNOWN: OUTCOME_UNKNOWN,
            }[verdict.status]
            return verdict

    # -- KPR bialgebra ---------------------------------------------------------------

    def product(self, first: Word, second: Word, bound: int | None = None) -> list[kpr.KPRClass]:
        max_len = self._bound(first, second, bound)
        with self._operation("product", bound=max_len) as outcome:
            classes = kpr.class_product(first, second, max_len, self.max_visited)
            outcome.details["classes"] = len(classes)
            return classes

    def coproduct(self, word: Word, bound: int | None = None) -> list[kpr.TensorTerm]:
        max_len = self._bound(word, bound=bound)
        with self._operation("coproduct", bound=max_len) as outcome:
            terms = kpr.class_coproduct(word, max_len, self.max_visited)
            outcome.details["terms"] = len(terms)
            return terms

    def urt_product(
        self, first: IncreasingTableau, second: IncreasingTableau, bound: int | None = None
    ) -> list[IncreasingTableau]:
        max_len = bound or self.settings.urt_bound
        with self._operation("urt_product", bound=max_len):
            return kpr.urt_class_product(first, second, max_len, self.max_visited)

    def urt_coproduct(
        self, tableau: IncreasingTableau, bound: int | None = None
    ) -> list[kpr.TableauPair]:
        max_len = bound or self.settings.urt_bound
        with self._operation("urt_coproduct", bound=max_len):
            return kpr.urt_class_coproduct(tableau, max_len, self.max_visited)

    # -- generating functions -------------------------------------------------------

    def grothendieck(self, shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
        with self._operation("gpoly", shape=str(shape), num_vars=num_vars, max_degree=max_degree):
            return symmetric_functions.grothendieck_G(shape, num_vars, max_degree)

    def weak(self, shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
        with self._operation("jpoly", shape=str(shape), num_vars=num_vars, max_degree=max_degree):
            return symmetric_functions.weak_J(shape, num_vars, max_degree)

    def fundamental(self, composition: Composition, num_vars: int, max_degree: int) -> TruncatedPoly:
        with self._operation("lpoly", num_vars=num_vars, max_degree=max_degree):
            return symmetric_functions.fundamental_L(composition, num_vars, max_degree)

    def expand_product(
        self, first: Partition, second: Partition, num_vars: int, max_degree: int
    ) -> GExpansion:
        with self._operation("expand_product", num_vars=num_vars, max_degree=max_degree) as outcome:
            expansion = symmetric_functions.expand_product_in_G(first, second, num_vars, max_degree)
            outcome.details["terms"] = len(expansion.coefficients)
            return expansion

    def coproduct_g(
        self, shape: Partition, num_vars: int, max_degree: int, joint: int | None = None
    ) -> dict[tuple[Partition, Partition], int]:
        with self._operation("coproduct_g", shape=str(shape), max_degree=max_degree):
            return symmetric_functions.coproduct_G(shape, num_vars, max_degree, joint)

    def phi(self, word: Word, num_vars: int, max_degree: int, bound: int | None = None) -> ClassSeries:
        with self._operation("phi", num_vars=num_vars, max_degree=max_degree) as outcome:
            series = symmetric_functions.phi_class(
                word, num_vars, max_degree, bound, self.max_visited
            )
            if not series.consistent:
                outcome.value = OUTCOME_UNKNOWN
            return series

    # -- Littlewood-Richardson rules ------------------------------------------------------

    def lr(self, query: lr_rules.LRQuery, bound: int | None = None) -> lr_rules.LRReport:
        max_len = bound or self.settings.urt_bound
        with self._operation("lr", nu=str(query.nu)) as outcome:
            report = lr_rules.lr_coefficient(query, max_len, self.max_visited)
            outcome.details["count"] = report.count
            return report

    def lr_table(
        self,
        lam: Partition,
        mu: Partition,
        max_extra: int,
        urt_choice: lr_rules.URTChoice | IncreasingTableau = lr_rules.URTChoice.SUPERSTANDARD,
        bound: int | None = None,
    ) -> dict[Partition, lr_rules.LRReport]:
        max_len = bound or self.settings.urt_bound
        with self._operation("lr_table", max_extra=max_extra, jobs=self.jobs) as outcome:
            table = lr_rules.lr_table(
                lam, mu, max_extra, urt_choice, max_len, self.max_visited, self._mapper
            )
            outcome.details["shapes"] = len(table)
            return table

    def dual_lr(
        self, target: IncreasingTableau, lam: Partition, mu: Partition, bound: int | None = None
    ) -> lr_rules.LRReport:
        max_len = bound or self.settings.urt_bound
        with self._operation("dual_lr", size=target.size) as outcome:
            report = lr_rules.dual_lr_coefficient(target, lam, mu, max_len, self.max_visited)
            outcome.details["count"] = report.count
            return report

    def dual_lr_table(
        self, target: IncreasingTableau, bound: int | None = None
    ) -> dict[tuple[Partition, Partition], lr_rules.LRReport]:
        max_len = bound or self.settings.urt_bound
        with self._operation("dual_lr_table", size=target.size, jobs=self.jobs):
            return lr_rules.dual_lr_table(target, max_len, self.max_visited, self._mapper)

    def verify_product(
        self,
        lam: Partition,
        mu: Partition,
        num_vars: int,
        max_degree: int,
        urt_choice: lr_rules.URTChoice | IncreasingTableau = lr_rules.URTChoice.SUPERSTANDARD,
        bound: int | None = None,
    ) -> lr_rules.OracleReport:
        max_len = bound or self.settings.urt_bound
        with self._operation("verify_product", max_degree=max_degree) as outcome:
            report = lr_rules.verify_against_oracle(
                lam, mu, num_vars, max_degree, urt_choice, max_len, self.max_visited, self._mapper
            )
            if not report.agree:
                outcome.value = OUTCOME_NEGATIVE
            outcome.details["mismatches"] = len(report.mismatches)
            return report

    def verify_dual(
        self,
        target: IncreasingTableau,
        num_vars: int,
        max_degree: int,
        joint: int | None = None,
        bound: int | None = None,
    ) -> lr_rules.OracleReport:
        max_len = bound or self.settings.urt_bound
        with self._operation("verify_dual", max_degree=max_degree) as outcome:
            report = lr_rules.verify_dual_against_oracle(
                target, num_vars, max_degree, joint, max_len, self.max_visited, self._mapper
            )
            if not report.agree:
                outcome.value = OUTCOME_NEGATIVE
            outcome.details["mismatches"] = len(report.mismatches)
            return report
