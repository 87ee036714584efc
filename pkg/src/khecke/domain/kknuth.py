"""The K-Knuth rewriting system as a bounded semi-decision procedure.

Relations, applied in either direction at any position:

1. ``pp == p``
2. ``pqp == qpq``
3. ``pqs == qps`` and ``sqp == spq`` for ``p < s < q``

No terminating decision procedure is known, so every search carries a length
bound on intermediate words and answers with a three-valued verdict.
"""
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache

from khecke.domain.errors import SearchBoundError
from khecke.domain.hecke import insertion_tableau
from khecke.domain.tableaux import IncreasingTableau, enumerate_all_increasing, reading_word
from khecke.domain.words import Word, lds, lis, restrict
from khecke.infrastructure.constants import (
    DEFAULT_EXTRA_LENGTH,
    DEFAULT_MAX_VISITED_WORDS,
    DEFAULT_PROGRESS_INTERVAL,
)
from khecke.infrastructure.logging import get_logger

logger = get_logger(component="kknuth")


def word_key(word: Word) -> tuple[int, Word]:
    """Canonical order on words: length, then lexicographic."""
    return len(word), word


def relation_neighbors(word: Word, max_len: int) -> set[Word]:
    """Every word one relation away from ``word`` with length at most ``max_len``."""
    n = len(word)
    neighbors: set[Word] = set()
    for i in range(n):
        if n + 1 <= max_len:
            neighbors.add(word[: i + 1] + word[i : i + 1] + word[i + 1 :])
        if i + 1 < n and word[i] == word[i + 1]:
            neighbors.add(word[:i] + word[i + 1 :])
        if i + 2 < n:
            a, b, c = word[i], word[i + 1], word[i + 2]
            head, tail = word[:i], word[i + 3 :]
            if a == c and a != b:
                neighbors.add(head + (b, a, b) + tail)
            if min(a, b) < c < max(a, b):
                neighbors.add(head + (b, a, c) + tail)
            if min(b, c) < a < max(b, c):
                neighbors.add(head + (a, c, b) + tail)
    neighbors.discard(word)
    return {neighbor for neighbor in neighbors if len(neighbor) <= max_len}


def default_bound(first: Word, second: Word = (), extra: int = DEFAULT_EXTRA_LENGTH) -> int:
    return len(first) + len(second) + extra


@dataclass(frozen=True)
class ClassSlice:
    """Words reachable from ``seed`` through intermediates of length at most ``max_len``.

    ``saturated`` is set when no relation move from any member was cut off by the
    bound, i.e. the slice is the whole class. Since ``p -> pp`` always grows a
    word, only the empty word saturates. ``complete`` is set when the closure
    within the bound finished before the visited-word cap.
    """

    seed: Word
    max_len: int
    words: tuple[Word, ...]
    saturated: bool
    complete: bool = True

    def __contains__(self, word: object) -> bool:
        return word in self._members

    def __len__(self) -> int:
        return len(self.words)

    @cached_property
    def _members(self) -> frozenset[Word]:
        return frozenset(self.words)


def class_slice(
    word: Word,
    max_len: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
    progress_interval: int = DEFAULT_PROGRESS_INTERVAL,
    allow_partial: bool = False,
) -> ClassSlice:
    """Breadth-first closure of ``word`` under relation moves within ``max_len``.

    Exceeding ``max_visited`` raises ``SearchBoundError`` unless ``allow_partial``
    is set, in which case the words found so far come back with ``complete=False``.
    """
    if max_len < len(word):
        raise SearchBoundError(
            "max_len must be at least the word length", max_len=max_len, length=len(word)
        )
    visited = {word}
    frontier = [word]
    complete = True
    while frontier and complete:
        next_frontier: list[Word] = []
        for current in frontier:
            for neighbor in relation_neighbors(current, max_len):
                if neighbor in visited:
                    continue
                visited.add(neighbor)
                next_frontier.append(neighbor)
                if len(visited) % progress_interval == 0:
                    logger.info("Class search progress", seed=word, visited=len(visited))
            if len(visited) > max_visited:
                if not allow_partial:
                    raise SearchBoundError(
                        "bound too large", seed=word, max_len=max_len, visited=len(visited)
                    )
                logger.warning("Class search stopped at the visited-word cap", seed=word)
                complete = False
                break
        frontier = next_frontier
    saturated = complete and not any(len(member) >= max_len for member in visited if member)
    return ClassSlice(word, max_len, tuple(sorted(visited, key=word_key)), saturated, complete)


# -- invariants ----------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """An invariant of K-Knuth equivalence that separates two words."""

    invariant: str
    left: object
    right: object
    interval: tuple[int, int] | None = None

    def describe(self) -> str:
        where = f" on [{self.interval[0]},{self.interval[1]}]" if self.interval else ""
        return f"{self.invariant}{where} {self.left} vs {self.right}"


def invariants(word: Word) -> tuple[tuple[int, ...], int, int]:
    """(sorted support, lis, lds)."""
    return tuple(sorted(set(word))), lis(word), lds(word)


def distinguishing_invariant(first: Word, second: Word) -> Certificate | None:
    """First invariant (support, lis, lds, then restrictions to letter intervals) that differs."""
    support_a, lis_a, lds_a = invariants(first)
    support_b, lis_b, lds_b = invariants(second)
    if support_a != support_b:
        return Certificate("support", list(support_a), list(support_b))
    if lis_a != lis_b:
        return Certificate("lis", lis_a, lis_b)
    if lds_a != lds_b:
        return Certificate("lds", lds_a, lds_b)
    right = interval_invariants(second)
    for interval, (lis_left, lds_left) in interval_invariants(first).items():
        lis_right, lds_right = right[interval]
        if lis_left != lis_right:
            return Certificate("lis", lis_left, lis_right, interval)
        if lds_left != lds_right:
            return Certificate("lds", lds_left, lds_right, interval)
    return None


def interval_invariants(word: Word) -> dict[tuple[int, int], tuple[int, int]]:
    """(lis, lds) of the restriction to every proper letter interval, narrowest first."""
    letters = sorted(set(word))
    intervals = sorted(
        ((low, high) for i, low in enumerate(letters) for high in letters[i + 1 :]),
        key=lambda pair: (pair[1] - pair[0], pair),
    )
    result: dict[tuple[int, int], tuple[int, int]] = {}
    for low, high in intervals:
        if (low, high) == (letters[0], letters[-1]):
            continue
        part = restrict(word, low, high)
        result[(low, high)] = (lis(part), lds(part))
    return result


# -- pairwise verdicts ---------------------------------------------------------


class VerdictKind(str, Enum):
    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence test.

    ``chain`` lists the words after the first one, each a single relation move
    from its predecessor; it is empty when the inputs are equal.
    """

    kind: VerdictKind
    bound: int
    chain: tuple[Word, ...] = ()
    certificate: Certificate | None = None
    reason: str = ""

    @property
    def equivalent(self) -> bool:
        return self.kind is VerdictKind.EQUIVALENT


def validate_chain(start: Word, chain: Sequence[Word], max_len: int) -> bool:
    current = start
    for word in chain:
        if word not in relation_neighbors(current, max_len):
            return False
        current = word
    return True


def _trace(parents: dict[Word, Word | None], word: Word) -> list[Word]:
    path = [word]
    parent = parents[word]
    while parent is not None:
        path.append(parent)
        parent = parents[parent]
    return path


def equivalent(
    first: Word,
    second: Word,
    max_len: int | None = None,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> Verdict:
    """Decide ``first == second`` in the K-Knuth monoid, up to a length bound."""
    bound = default_bound(first, second) if max_len is None else max_len
    bound = max(bound, len(first), len(second))
    if first == second:
        return Verdict(VerdictKind.EQUIVALENT, bound)
    certificate = distinguishing_invariant(first, second)
    if certificate is not None:
        return Verdict(VerdictKind.DISTINCT, bound, certificate=certificate)

    forward: dict[Word, Word | None] = {first: None}
    backward: dict[Word, Word | None] = {second: None}
    frontiers = {True: [first], False: [second]}
    while frontiers[True] and frontiers[False]:
        grow_forward = len(frontiers[True]) <= len(frontiers[False])
        own, other = (forward, backward) if grow_forward else (backward, forward)
        next_frontier: list[Word] = []
        for current in frontiers[grow_forward]:
            for neighbor in sorted(relation_neighbors(current, bound), key=word_key):
                if neighbor in own:
                    continue
                own[neighbor] = current
                if neighbor in other:
                    path = list(reversed(_trace(forward, neighbor))) + _trace(backward, neighbor)[1:]
                    return Verdict(VerdictKind.EQUIVALENT, bound, chain=tuple(path[1:]))
                next_frontier.append(neighbor)
            if len(forward) + len(backward) > max_visited:
                logger.warning("Equivalence search hit the visited-word cap", bound=bound)
                return Verdict(VerdictKind.UNKNOWN, bound, reason="search cap reached")
        frontiers[grow_forward] = next_frontier
    return Verdict(VerdictKind.UNKNOWN, bound, reason="no connecting chain within bound")


# -- tableau classes -----------------------------------------------------------


def tableau_key(tableau: IncreasingTableau) -> tuple[int, Word]:
    return word_key(reading_word(tableau))


@dataclass(frozen=True)
class TableauClass:
    """Increasing tableaux over the support of ``tableau`` found equivalent to it.

    ``unresolved`` holds competitors that no invariant separates and that were not
    reached within the bound.
    """

    tableau: IncreasingTableau
    members: tuple[IncreasingTableau, ...]
    unresolved: tuple[IncreasingTableau, ...]
    bound: int

    @property
    def certified(self) -> bool:
        return not self.unresolved


def unseparated_competitors(tableau: IncreasingTableau) -> list[IncreasingTableau]:
    """Tableaux over the same support whose reading words no invariant separates from ``tableau``'s."""
    word = reading_word(tableau)
    return [
        other
        for other in enumerate_all_increasing(sorted(tableau.support), full_support=True)
        if other != tableau and distinguishing_invariant(word, reading_word(other)) is None
    ]


@lru_cache(maxsize=4096)
def equivalent_tableaux(
    tableau: IncreasingTableau,
    max_len: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> TableauClass:
    """All increasing tableaux whose reading words are equivalent to ``row(tableau)``.

    Candidates range over every straight shape admissible for the support
    alphabet. Invariants rule most of them out; the rest are matched against the
    insertion tableaux of the bounded class slice.
    """
    competitors = unseparated_competitors(tableau)
    if not competitors:
        return TableauClass(tableau, (tableau,), (), max_len)
    word = reading_word(tableau)
    found = class_slice(word, max(max_len, len(word)), max_visited)
    reached = {insertion_tableau(member) for member in found.words}
    members = sorted(reached | {tableau}, key=tableau_key)
    unresolved = sorted((other for other in competitors if other not in reached), key=tableau_key)
    return TableauClass(tableau, tuple(members), tuple(unresolved), max_len)


class URTStatus(str, Enum):
    NOT_URT = "not-urt"
    URT_WITHIN_BOUND = "urt-within-bound"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class URTVerdict:
    """URT test outcome; ``certified`` means every competitor was separated by an invariant."""

    status: URTStatus
    bound: int
    witness: IncreasingTableau | None = None
    certified: bool = False
    unresolved: tuple[IncreasingTableau, ...] = field(default=())

    @property
    def passes(self) -> bool:
        return self.status is URTStatus.URT_WITHIN_BOUND


def is_urt(
    tableau: IncreasingTableau,
    max_len: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> URTVerdict:
    """Is ``tableau`` the only increasing tableau in its K-Knuth class (within the bound)?

    UNKNOWN is reserved for a search that hit the visited-word cap. Competitors
    that no invariant separates but the slice never reaches leave the verdict at
    URT_WITHIN_BOUND with ``certified`` false and the competitors in ``unresolved``.
    """
    try:
        found = equivalent_tableaux(tableau, max_len, max_visited)
    except SearchBoundError as exc:
        logger.warning("URT search exceeded its cap", tableau=str(tableau), error=str(exc))
        return URTVerdict(URTStatus.UNKNOWN, max_len)
    others = [member for member in found.members if member != tableau]
    if others:
        return URTVerdict(URTStatus.NOT_URT, max_len, witness=others[0])
    return URTVerdict(
        URTStatus.URT_WITHIN_BOUND,
        max_len,
        certified=found.certified,
        unresolved=found.unresolved,
    )


def group_into_classes(
    tableaux: Iterable[IncreasingTableau],
    max_len: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> list[list[IncreasingTableau]]:
    """Partition tableaux into K-Knuth classes using pairwise bounded searches."""
    items = sorted(set(tableaux), key=tableau_key)
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, left in enumerate(items):
        for j in range(i + 1, len(items)):
            if find(i) == find(j):
                continue
            verdict = equivalent(reading_word(left), reading_word(items[j]), max_len, max_visited)
            if verdict.equivalent:
                parent[find(j)] = find(i)
    groups: dict[int, list[IncreasingTableau]] = {}
    for index, item in enumerate(items):
        groups.setdefault(find(index), []).append(item)
    return sorted(groups.values(), key=lambda group: tableau_key(group[0]))
