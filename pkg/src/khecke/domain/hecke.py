"""Hecke row insertion, reverse insertion and the word <-> (P, Q) bijection."""
from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from khecke.domain.errors import InsertionError, InvalidTableauError, NotACornerError
from khecke.domain.tableaux import (
    EMPTY_TABLEAU,
    IncreasingTableau,
    RecordingTableau,
    SetValuedTableau,
)
from khecke.domain.words import Word

Cell = tuple[int, int]


@dataclass(frozen=True)
class InsertionOutcome:
    """Result ``(Z, c, alpha)`` of inserting one letter.

    ``alpha`` is 1 when ``corner`` is a newly added box and 0 when the shape is
    unchanged and ``corner`` marks where insertion terminated.
    """

    tableau: IncreasingTableau
    corner: Cell
    alpha: int


@dataclass(frozen=True)
class InsertionStep:
    letter: int
    outcome: InsertionOutcome


InsertionTrace = list[InsertionStep]


def _column_height(rows: Sequence[Sequence[int]], col: int) -> int:
    return sum(1 for row in rows if len(row) >= col)


def insert_letter(tableau: IncreasingTableau, letter: int) -> InsertionOutcome:
    """Hecke-insert ``letter`` into a straight-shape increasing tableau."""
    if not tableau.is_straight:
        raise InvalidTableauError("insertion needs a straight shape", shape=str(tableau.shape))
    if letter < 1:
        raise InsertionError("letters must be positive", letter=letter)
    rows = [list(row) for row in tableau.rows]
    value = letter
    r = 0
    while True:
        row = rows[r] if r < len(rows) else []
        if not row or value >= row[-1]:
            col = len(row)
            fits_row = not row or value > row[-1]
            fits_column = r == 0 or (col < len(rows[r - 1]) and rows[r - 1][col] < value)
            if fits_row and fits_column:
                # H1: adjoin at the end of the row
                if r == len(rows):
                    rows.append([])
                rows[r].append(value)
                return InsertionOutcome(IncreasingTableau.from_rows(rows), (r + 1, col + 1), 1)
            if not row:
                raise InsertionError("cannot terminate insertion in an empty row", row=r + 1)
            # H2: shape unchanged, corner at the bottom of the row's last column
            return InsertionOutcome(
                IncreasingTableau.from_rows(rows), (_column_height(rows, col), col), 0
            )
        j = bisect_right(row, value)
        bumped = row[j]
        left_ok = j == 0 or row[j - 1] < value
        above_ok = r == 0 or rows[r - 1][j] < value
        if left_ok and above_ok:
            row[j] = value  # H3
        # H4 leaves the row unchanged; either way the bumped entry moves down
        value = bumped
        r += 1


def reverse_insert(tableau: IncreasingTableau, corner: Cell, alpha: int) -> tuple[IncreasingTableau, int]:
    """Undo one insertion: return ``(Y, x)`` with ``insert_letter(Y, x) == (Z, corner, alpha)``."""
    if alpha not in (0, 1):
        raise InsertionError("alpha must be 0 or 1", alpha=alpha)
    if not tableau.is_straight:
        raise InvalidTableauError("reverse insertion needs a straight shape", shape=str(tableau.shape))
    rows = [list(row) for row in tableau.rows]
    i, j = corner
    is_corner = (
        0 < i <= len(rows)
        and j == len(rows[i - 1])
        and j > 0
        and (i == len(rows) or len(rows[i]) < j)
    )
    if not is_corner:
        raise NotACornerError("not a corner cell", cell=corner)
    value = rows[i - 1][j - 1]
    if alpha == 1:
        rows[i - 1].pop()
        if not rows[i - 1]:
            rows.pop()
    for r in range(i - 2, -1, -1):
        row = rows[r]
        k = bisect_left(row, value) - 1
        if k < 0:
            raise InsertionError("no smaller entry in the row above", row=r + 1, value=value)
        smaller = row[k]
        right_ok = k + 1 == len(row) or row[k + 1] > value
        below_ok = r + 1 >= len(rows) or k >= len(rows[r + 1]) or rows[r + 1][k] > value
        if right_ok and below_ok:
            row[k] = value  # rH3
        value = smaller
    return IncreasingTableau.from_rows(rows), value


def insertion_steps(word: Iterable[int], start: IncreasingTableau = EMPTY_TABLEAU) -> InsertionTrace:
    """One outcome per letter, inserting from ``start``."""
    steps: InsertionTrace = []
    current = start
    for letter in word:
        outcome = insert_letter(current, letter)
        steps.append(InsertionStep(letter, outcome))
        current = outcome.tableau
    return steps


def insert_word_into(tableau: IncreasingTableau, word: Iterable[int]) -> IncreasingTableau:
    current = tableau
    for letter in word:
        current = insert_letter(current, letter).tableau
    return current


def insertion_tableau(word: Iterable[int]) -> IncreasingTableau:
    """P(w)."""
    return insert_word_into(EMPTY_TABLEAU, word)


def insert_word(word: Iterable[int]) -> tuple[IncreasingTableau, RecordingTableau]:
    """Return ``(P(w), Q(w))``; step ``k`` labels the special corner of that step."""
    current = EMPTY_TABLEAU
    boxes: dict[Cell, list[int]] = {}
    for step, letter in enumerate(word, 1):
        outcome = insert_letter(current, letter)
        boxes.setdefault(outcome.corner, []).append(step)
        current = outcome.tableau
    recording = SetValuedTableau(
        tuple(
            tuple(tuple(boxes[(r, c)]) for c in range(1, len(row) + 1))
            for r, row in enumerate(current.rows, 1)
        )
    )
    return current, recording


def reverse_word(tableau: IncreasingTableau, recording: RecordingTableau) -> Word:
    """The unique word whose insertion and recording tableaux are ``(tableau, recording)``."""
    if recording.partition != tableau.partition:
        raise InvalidTableauError(
            "insertion and recording tableaux have different shapes",
            insertion=str(tableau.partition),
            recording=str(recording.partition),
        )
    if not recording.is_standard():
        raise InvalidTableauError("recording tableau must use 1..n exactly once")
    boxes = {
        (r, c): list(box)
        for r, row in enumerate(recording.rows, 1)
        for c, box in enumerate(row, 1)
    }
    location = {value: cell for cell, box in boxes.items() for value in box}
    letters: list[int] = []
    current = tableau
    for step in range(len(location), 0, -1):
        cell = location[step]
        box = boxes[cell]
        if box[-1] != step:
            raise InvalidTableauError("recording entries out of order", cell=cell)
        box.pop()
        alpha = 0 if box else 1
        current, letter = reverse_insert(current, cell, alpha)
        letters.append(letter)
    return tuple(reversed(letters))
