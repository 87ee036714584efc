"""Words over the positive integers and their statistics.

A word is a plain ``tuple[int, ...]``; the helpers here never mutate their input.
"""
from bisect import bisect_left
from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations

from khecke.domain.errors import InvalidWordError

Word = tuple[int, ...]
Composition = tuple[int, ...]


def make_word(letters: Iterable[int]) -> Word:
    word = tuple(letters)
    for position, letter in enumerate(word, 1):
        if not isinstance(letter, int) or letter < 1:
            raise InvalidWordError("letters must be positive integers", position=position, letter=letter)
    return word


def parse_word(text: str) -> Word:
    """Parse ``"15133"`` (one digit per letter) or ``"1,5,13"`` / ``"1 5 13"``."""
    text = text.strip()
    if text in {"", "-", "empty"}:
        return ()
    separators = ("," in text) or (" " in text)
    try:
        pieces = text.replace(",", " ").split() if separators else list(text)
        return make_word(int(piece) for piece in pieces)
    except ValueError as exc:
        if isinstance(exc, InvalidWordError):
            raise
        raise InvalidWordError("cannot parse word", text=text) from exc


def format_word(word: Sequence[int]) -> str:
    if not word:
        return "∅"
    if all(letter < 10 for letter in word):
        return "".join(str(letter) for letter in word)
    return ",".join(str(letter) for letter in word)


def support(word: Iterable[int]) -> frozenset[int]:
    return frozenset(word)


def is_initial(word: Sequence[int]) -> bool:
    """The letters of ``word`` are exactly {1, ..., k} for some k >= 0."""
    letters = set(word)
    return letters == set(range(1, len(letters) + 1))


def flatten_word(word: Sequence[int]) -> Word:
    """Replace every letter by its rank among the distinct letters of ``word``."""
    rank = {letter: index for index, letter in enumerate(sorted(set(word)), 1)}
    return tuple(rank[letter] for letter in word)


def shift(word: Sequence[int], amount: int) -> Word:
    if amount < 0:
        raise InvalidWordError("shift amount must be non-negative", amount=amount)
    return tuple(letter + amount for letter in word)


def restrict(word: Sequence[int], low: int, high: int) -> Word:
    """Subword of letters in the interval [low, high]."""
    return tuple(letter for letter in word if low <= letter <= high)


def lis(word: Sequence[int]) -> int:
    """Length of a longest strictly increasing subsequence (patience sorting)."""
    tails: list[int] = []
    for letter in word:
        index = bisect_left(tails, letter)
        if index == len(tails):
            tails.append(letter)
        else:
            tails[index] = letter
    return len(tails)


def lds(word: Sequence[int]) -> int:
    """Length of a longest strictly decreasing subsequence."""
    return lis([-letter for letter in word])


def descent_set(word: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i in range(1, len(word)) if word[i - 1] > word[i])


def composition_from_set(descents: Iterable[int], total: int) -> Composition:
    """C(S): the composition of ``total`` whose partial sums are the elements of S."""
    cuts = sorted(descents)
    if cuts and (cuts[0] < 1 or cuts[-1] >= total):
        raise InvalidWordError("descent positions must lie in [1, total-1]", total=total)
    points = [0, *cuts, total]
    return tuple(b - a for a, b in zip(points, points[1:], strict=False))


def set_from_composition(composition: Sequence[int]) -> frozenset[int]:
    """S_alpha: the partial sums of ``composition`` except the total."""
    sums: list[int] = []
    running = 0
    for part in composition[:-1]:
        running += part
        sums.append(running)
    return frozenset(sums)


def descent_composition(word: Sequence[int]) -> Composition:
    if not word:
        raise InvalidWordError("empty word has no descent composition")
    return composition_from_set(descent_set(word), len(word))


def words_over(alphabet: Sequence[int], max_length: int, min_length: int = 0) -> Iterator[Word]:
    """All words over ``alphabet`` by length, then lexicographically."""
    letters = sorted(alphabet)

    def build(length: int) -> Iterator[Word]:
        if length == 0:
            yield ()
            return
        for prefix in build(length - 1):
            for letter in letters:
                yield (*prefix, letter)

    for length in range(min_length, max_length + 1):
        yield from build(length)


def shuffle(first: Sequence[int], second: Sequence[int]) -> list[Word]:
    """All interleavings of ``first`` and ``second`` as a multiset (list).

    Interleavings are indexed by the positions taken by ``first``, so equal
    words produced by different position sets are listed separately.
    """
    total = len(first) + len(second)
    results: list[Word] = []
    for positions in combinations(range(total), len(first)):
        chosen = set(positions)
        left = iter(first)
        right = iter(second)
        results.append(tuple(next(left) if index in chosen else next(right) for index in range(total)))
    return results
