"""Classes of the KPR bialgebra, represented by their finite tableau sets.

A class ``[[h]]`` is infinite as a set of words (``1 == 11 == 111 ...``) but is
determined by the increasing tableaux whose reading words it contains, so every
operation here works on those tableau sets. Equivalence tests run through the
bounded rewriting engine and inherit its bound.
"""
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from itertools import product as cartesian

from khecke.domain.errors import NotInitialError, NotURTError
from khecke.domain.hecke import insertion_tableau
from khecke.domain.kknuth import (
    equivalent_tableaux,
    group_into_classes,
    is_urt,
    tableau_key,
    word_key,
)
from khecke.domain.shapes import SkewShape, shapes_between
from khecke.domain.tableaux import (
    IncreasingTableau,
    enumerate_all_increasing,
    enumerate_increasing_over,
    reading_word,
)
from khecke.domain.words import Word, flatten_word, is_initial, lds, lis, shift, shuffle, words_over
from khecke.infrastructure.constants import DEFAULT_MAX_VISITED_WORDS
from khecke.infrastructure.logging import get_logger

logger = get_logger(component="kpr")

TableauPair = tuple[IncreasingTableau, IncreasingTableau]
WordPair = tuple[Word, Word]


@dataclass(frozen=True)
class KPRClass:
    """A K-Knuth class of initial words, as its increasing tableaux."""

    representative: Word
    tableaux: tuple[IncreasingTableau, ...]
    bound: int
    certified: bool = True

    @classmethod
    def from_tableaux(
        cls, tableaux: Iterable[IncreasingTableau], bound: int, certified: bool = True
    ) -> "KPRClass":
        ordered = tuple(sorted(set(tableaux), key=tableau_key))
        return cls(reading_word(ordered[0]), ordered, bound, certified)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, IncreasingTableau):
            return item in self.tableaux
        if isinstance(item, tuple):
            return insertion_tableau(item) in self.tableaux
        return False

    @property
    def key(self) -> tuple[int, Word]:
        return word_key(self.representative)


@dataclass(frozen=True)
class TensorTerm:
    left: KPRClass
    right: KPRClass
    multiplicity: int = 1


def _require_initial(word: Word) -> None:
    if not is_initial(word):
        raise NotInitialError("word must be initial", word=word)


def kpr_class(
    word: Word, bound: int, max_visited: int = DEFAULT_MAX_VISITED_WORDS
) -> KPRClass:
    """``[[word]]`` for an initial word."""
    _require_initial(word)
    found = equivalent_tableaux(insertion_tableau(word), bound, max_visited)
    return KPRClass.from_tableaux(found.members, bound, found.certified)


# -- word level ----------------------------------------------------------------


def shifted_product(left: Word, right: Word) -> list[Word]:
    """``left * right``: shuffles of ``left`` with ``right`` shifted past max(left)."""
    return shuffle(left, shift(right, max(left, default=0)))


def word_coproduct(word: Word) -> list[WordPair]:
    """Deconcatenations with both halves flattened, cut points left to right."""
    return [(flatten_word(word[:cut]), flatten_word(word[cut:])) for cut in range(len(word) + 1)]


def tensor_product(left: Sequence[WordPair], right: Sequence[WordPair]) -> Counter[WordPair]:
    """Multiply two sums of tensors componentwise with ``shifted_product``."""
    result: Counter[WordPair] = Counter()
    for (a, b), (c, d) in cartesian(left, right):
        for first in shifted_product(a, c):
            for second in shifted_product(b, d):
                result[(first, second)] += 1
    return result


def coproduct_of_product(left: Word, right: Word) -> Counter[WordPair]:
    """``Delta(left * right)`` as a multiset of tensors."""
    result: Counter[WordPair] = Counter()
    for word in shifted_product(left, right):
        result.update(word_coproduct(word))
    return result


def insertion_class_product_contains(
    word: Word, first: IncreasingTableau, second: IncreasingTableau
) -> bool:
    """Is ``word`` a shuffle of some ``u`` with ``P(u) = first`` and ``v[n]`` with ``P(v) = second``?

    ``n`` is the largest entry of ``first``; the letters of ``word`` up to ``n`` must
    then form ``u`` and the rest ``v[n]``.
    """
    n = first.max_entry
    low = tuple(letter for letter in word if letter <= n)
    high = tuple(letter - n for letter in word if letter > n)
    return insertion_tableau(low) == first and insertion_tableau(high) == second


def coproduct_preimages(left: Word, right: Word, alphabet: Sequence[int]) -> list[Word]:
    """Words using every letter of ``alphabet`` whose coproduct contains ``left (x) right``."""
    length = len(left) + len(right)
    letters = frozenset(alphabet)
    cut = len(left)
    return [
        word
        for word in words_over(sorted(letters), length, length)
        if frozenset(word) == letters
        and flatten_word(word[:cut]) == left
        and flatten_word(word[cut:]) == right
    ]


# -- products ------------------------------------------------------------------


def _glue(base: IncreasingTableau, filling: IncreasingTableau) -> IncreasingTableau:
    rows = [list(row) for row in base.rows]
    for index, row in enumerate(filling.rows):
        if index == len(rows):
            rows.append([])
        rows[index].extend(row)
    return IncreasingTableau.from_rows(rows)


def product_tableaux(
    left: Iterable[IncreasingTableau],
    n: int,
    m: int,
    accept: Callable[[IncreasingTableau], bool],
) -> list[IncreasingTableau]:
    """Tableaux T over [n+m] with ``T|_[n]`` in ``left`` and ``accept(P(row(T)|_[n+1,n+m] - n))``.

    The cells above ``n`` form a skew filling of ``nu / shape(T|_[n])`` by the
    letters ``n+1..n+m``, each used at least once; its rows and columns hold at
    most ``m`` cells.
    """
    alphabet = range(n + 1, n + m + 1)
    wanted = frozenset(alphabet)
    found: list[IncreasingTableau] = []
    for base in left:
        inner = base.partition
        for outer in shapes_between(inner, m, (len(inner) + m) * m, row_cap=m, col_cap=m):
            for filling in enumerate_increasing_over(SkewShape(outer, inner), alphabet):
                if filling.support != wanted:
                    continue
                upper = tuple(letter - n for letter in reading_word(filling))
                if accept(insertion_tableau(upper)):
                    found.append(_glue(base, filling))
    return sorted(set(found), key=tableau_key)


def class_product(
    first: Word,
    second: Word,
    bound: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> list[KPRClass]:
    """``[[first]] . [[second]]`` as a list of classes ordered by representative."""
    _require_initial(first)
    _require_initial(second)
    n, m = max(first, default=0), max(second, default=0)
    left = equivalent_tableaux(insertion_tableau(first), bound, max_visited)
    right = equivalent_tableaux(insertion_tableau(second), bound, max_visited)
    targets = frozenset(right.members)
    tableaux = product_tableaux(left.members, n, m, targets.__contains__)
    logger.info("Product tableaux found", first=first, second=second, count=len(tableaux))
    certified = left.certified and right.certified
    classes = [
        KPRClass.from_tableaux(group, bound, certified)
        for group in group_into_classes(tableaux, bound, max_visited)
    ]
    return sorted(classes, key=lambda item: item.key)


def _require_urt(tableau: IncreasingTableau, bound: int, max_visited: int) -> None:
    verdict = is_urt(tableau, bound, max_visited)
    if not verdict.passes:
        raise NotURTError(
            "requires unique rectification targets",
            tableau=str(tableau),
            status=verdict.status.value,
        )


def urt_class_product(
    first: IncreasingTableau,
    second: IncreasingTableau,
    bound: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> list[IncreasingTableau]:
    """Tableaux T with ``T|_[n] = first`` and ``P(row(T)|_[n+1,n+m]) = second``."""
    for tableau in (first, second):
        _require_urt(tableau, bound, max_visited)
    n, m = first.max_entry, second.max_entry
    return product_tableaux([first], n, m, second.__eq__)


# -- coproducts ----------------------------------------------------------------


def coproduct_pairs(
    alphabet_size: int,
    max_first_row: int,
    max_first_column: int,
    accept: Callable[[IncreasingTableau], bool],
) -> list[TableauPair]:
    """Pairs (T', T'') over sub-alphabets of [k], jointly using every letter,
    with ``accept(P(row(T') row(T'')))``.

    Neither factor can have a longer first row or column than the insertion
    tableau of the concatenation, which prunes the candidate lists.
    """
    letters = frozenset(range(1, alphabet_size + 1))
    candidates = [
        tableau
        for tableau in enumerate_all_increasing(sorted(letters))
        if len(tableau.rows) <= max_first_column
        and (not tableau.rows or len(tableau.rows[0]) <= max_first_row)
    ]
    pairs: list[TableauPair] = []
    for first, second in cartesian(candidates, candidates):
        if first.support | second.support != letters:
            continue
        if accept(insertion_tableau(reading_word(first) + reading_word(second))):
            pairs.append((first, second))
    return pairs


def class_coproduct(
    word: Word,
    bound: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> list[TensorTerm]:
    """``Delta([[word]])`` as tensor terms of flattened classes.

    A class pair appears once for every split of the alphabet between the two
    factors that realizes it.
    """
    _require_initial(word)
    found = equivalent_tableaux(insertion_tableau(word), bound, max_visited)
    targets = frozenset(found.members)
    pairs = coproduct_pairs(max(word, default=0), lis(word), lds(word), targets.__contains__)

    classes: dict[IncreasingTableau, KPRClass] = {}

    def class_of(tableau: IncreasingTableau) -> KPRClass:
        flat = tableau.standardize()
        if flat not in classes:
            cls = kpr_class(reading_word(flat), bound, max_visited)
            for member in cls.tableaux:
                classes[member] = cls
        return classes[flat]

    splits: dict[tuple[KPRClass, KPRClass], set[tuple[frozenset[int], frozenset[int]]]] = {}
    for first, second in pairs:
        term = (class_of(first), class_of(second))
        splits.setdefault(term, set()).add((first.support, second.support))
    terms = [TensorTerm(left, right, len(ways)) for (left, right), ways in splits.items()]
    return sorted(terms, key=lambda term: (term.left.key, term.right.key))


def urt_class_coproduct(
    tableau: IncreasingTableau,
    bound: int,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> list[TableauPair]:
    """Pairs (T', T'') with ``P(row(T') row(T'')) = tableau``."""
    _require_urt(tableau, bound, max_visited)
    first_row = len(tableau.rows[0]) if tableau.rows else 0
    pairs = coproduct_pairs(tableau.max_entry, first_row, len(tableau.rows), tableau.__eq__)
    return sorted(pairs, key=lambda pair: (tableau_key(pair[0]), tableau_key(pair[1])))
