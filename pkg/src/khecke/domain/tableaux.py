"""Tableau value types, readings, standardizations and exhaustive enumerators.

Increasing tableaux may be skew: ``offsets[i]`` counts the missing leading cells
of row ``i + 1`` (the inner partition). Set-valued and weak set-valued tableaux
are always straight and store each box as a sorted tuple.
"""
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement

from khecke.domain.errors import InvalidTableauError
from khecke.domain.shapes import (
    Partition,
    SkewShape,
    as_skew,
    partitions_in_staircase,
)
from khecke.domain.words import Composition, Word, composition_from_set

Cell = tuple[int, int]
Box = tuple[int, ...]


@dataclass(frozen=True, order=True)
class IncreasingTableau:
    """A filling with rows strictly increasing left to right and columns top to bottom."""

    rows: tuple[tuple[int, ...], ...] = ()
    offsets: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.rows)
        offsets = tuple(self.offsets) + (0,) * (len(rows) - len(self.offsets))
        if len(offsets) > len(rows):
            raise InvalidTableauError("more offsets than rows")
        while rows and not rows[-1] and not offsets[-1]:
            rows, offsets = rows[:-1], offsets[:-1]
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "offsets", offsets if any(offsets) else ())
        self._validate(rows, offsets)

    @staticmethod
    def _validate(rows: tuple[tuple[int, ...], ...], offsets: tuple[int, ...]) -> None:
        outer = [offset + len(row) for offset, row in zip(offsets, rows, strict=True)]
        for index in range(1, len(rows)):
            if outer[index] > outer[index - 1] or offsets[index] > offsets[index - 1]:
                raise InvalidTableauError("rows do not form a skew shape", cell=(index + 1, 1))
        for r, row in enumerate(rows, 1):
            offset = offsets[r - 1]
            for c, value in enumerate(row, offset + 1):
                if not isinstance(value, int) or value < 1:
                    raise InvalidTableauError("entries must be positive integers", cell=(r, c))
                if c > offset + 1 and row[c - offset - 2] >= value:
                    raise InvalidTableauError("row is not strictly increasing", cell=(r, c))
                if r > 1:
                    above_offset = offsets[r - 2]
                    above_row = rows[r - 2]
                    if above_offset < c <= above_offset + len(above_row):
                        if above_row[c - above_offset - 1] >= value:
                            raise InvalidTableauError(
                                "column is not strictly increasing", cell=(r, c)
                            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IncreasingTableau":
        return cls(tuple(tuple(row) for row in rows))

    @cached_property
    def shape(self) -> SkewShape:
        outer = Partition.of(
            offset + len(row) for offset, row in zip(self._padded_offsets, self.rows, strict=True)
        )
        return SkewShape(outer, Partition.of(self._padded_offsets))

    @property
    def _padded_offsets(self) -> tuple[int, ...]:
        return self.offsets + (0,) * (len(self.rows) - len(self.offsets))

    @property
    def is_straight(self) -> bool:
        return not self.offsets

    @property
    def partition(self) -> Partition:
        """Shape of a straight tableau."""
        if not self.is_straight:
            raise InvalidTableauError("tableau has a skew shape", shape=str(self.shape))
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    def entry(self, row: int, col: int) -> int | None:
        if not 0 < row <= len(self.rows):
            return None
        offset = self._padded_offsets[row - 1]
        index = col - offset - 1
        cells = self.rows[row - 1]
        return cells[index] if 0 <= index < len(cells) else None

    def cells(self) -> list[Cell]:
        return self.shape.cells()

    def items(self) -> Iterator[tuple[Cell, int]]:
        for r, (offset, row) in enumerate(zip(self._padded_offsets, self.rows, strict=True), 1):
            for c, value in enumerate(row, offset + 1):
                yield (r, c), value

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(value for row in self.rows for value in row)

    @property
    def max_entry(self) -> int:
        return max(self.support, default=0)

    def restrict(self, k: int) -> "IncreasingTableau":
        """T|_[k]: the cells with entries at most ``k`` (an order ideal of the shape)."""
        return IncreasingTableau(
            tuple(tuple(value for value in row if value <= k) for row in self.rows),
            self.offsets,
        )

    def standardize(self) -> "IncreasingTableau":
        """Relabel entries by their rank among the distinct entries."""
        rank = {value: index for index, value in enumerate(sorted(self.support), 1)}
        return IncreasingTableau(
            tuple(tuple(rank[value] for value in row) for row in self.rows), self.offsets
        )

    def relabel(self, letters: Sequence[int]) -> "IncreasingTableau":
        """Replace each entry ``i`` by ``letters[i - 1]`` (an order-preserving alphabet map)."""
        return IncreasingTableau(
            tuple(tuple(letters[value - 1] for value in row) for row in self.rows), self.offsets
        )

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return str(self.to_lists())


EMPTY_TABLEAU = IncreasingTableau()


def reading_word(tableau: IncreasingTableau) -> Word:
    """Rows read left to right, from the bottom row to the top row."""
    return tuple(value for row in reversed(tableau.rows) for value in row)


def minimal_tableau(shape: Partition) -> IncreasingTableau:
    """M_lambda: cell (i, j) holds i + j - 1."""
    return IncreasingTableau(
        tuple(tuple(i + j - 1 for j in range(1, length + 1)) for i, length in enumerate(shape.parts, 1))
    )


def superstandard_tableau(shape: Partition) -> IncreasingTableau:
    """S_lambda: rows filled with consecutive integers, top row first."""
    rows = []
    start = 1
    for length in shape.parts:
        rows.append(tuple(range(start, start + length)))
        start += length
    return IncreasingTableau(tuple(rows))


# -- set-valued tableaux -------------------------------------------------------


@dataclass(frozen=True)
class SetValuedTableau:
    """Straight-shape filling by finite non-empty sets.

    The smallest entry of a box is at least the largest entry of the box to its
    left and strictly larger than the largest entry of the box above it.
    """

    rows: tuple[tuple[Box, ...], ...] = ()
    multiset: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(tuple(sorted(box)) for box in row) for row in self.rows)
        while rows and not rows[-1]:
            rows = rows[:-1]
        object.__setattr__(self, "rows", rows)
        for index in range(1, len(rows)):
            if len(rows[index]) > len(rows[index - 1]):
                raise InvalidTableauError("rows do not form a partition", cell=(index + 1, 1))
        for r, row in enumerate(rows, 1):
            for c, box in enumerate(row, 1):
                if not box:
                    raise InvalidTableauError("boxes must be non-empty", cell=(r, c))
                if any(value < 1 for value in box):
                    raise InvalidTableauError("entries must be positive integers", cell=(r, c))
                if not self.multiset and len(set(box)) != len(box):
                    raise InvalidTableauError("set-valued boxes cannot repeat entries", cell=(r, c))
                if c > 1 and box[0] < row[c - 2][-1]:
                    raise InvalidTableauError("row condition violated", cell=(r, c))
                if r > 1 and box[0] <= rows[r - 2][c - 1][-1]:
                    raise InvalidTableauError("column condition violated", cell=(r, c))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Sequence[int]]]) -> "SetValuedTableau":
        return cls(tuple(tuple(tuple(box) for box in row) for row in rows))

    @property
    def partition(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def size(self) -> int:
        """Total number of entries, counted with multiplicity (|T|)."""
        return sum(len(box) for row in self.rows for box in row)

    def content(self) -> Counter[int]:
        return Counter(value for row in self.rows for box in row for value in box)

    def weight(self, num_vars: int) -> tuple[int, ...]:
        """Exponent vector of x^T in ``num_vars`` variables."""
        content = self.content()
        return tuple(content.get(i, 0) for i in range(1, num_vars + 1))

    def is_standard(self) -> bool:
        values = sorted(value for row in self.rows for box in row for value in box)
        return values == list(range(1, len(values) + 1))

    def row_of(self) -> dict[int, int]:
        return {value: r for r, row in enumerate(self.rows, 1) for box in row for value in box}

    def to_lists(self) -> list[list[list[int]]]:
        return [[list(box) for box in row] for row in self.rows]

    def __str__(self) -> str:
        return str(self.to_lists())


@dataclass(frozen=True)
class WeakSetValuedTableau(SetValuedTableau):
    """A set-valued tableau whose boxes are multisets."""

    multiset: bool = field(default=True, compare=False)


RecordingTableau = SetValuedTableau


def standardize_weak_tableau(tableau: SetValuedTableau) -> SetValuedTableau:
    """Relabel entries 1..N, copies of each value numbered south-west to north-east."""
    cells_by_value: dict[int, list[tuple[int, int, int]]] = {}
    for r, row in enumerate(tableau.rows, 1):
        for c, box in enumerate(row, 1):
            for value, copies in Counter(box).items():
                cells_by_value.setdefault(value, []).append((r, c, copies))
    labels: dict[Cell, list[int]] = {}
    next_label = 1
    for value in sorted(cells_by_value):
        for r, c, copies in sorted(cells_by_value[value], key=lambda item: (-item[0], item[1])):
            labels.setdefault((r, c), []).extend(range(next_label, next_label + copies))
            next_label += copies
    return SetValuedTableau(
        tuple(
            tuple(tuple(labels[(r, c)]) for c in range(1, len(row) + 1))
            for r, row in enumerate(tableau.rows, 1)
        )
    )


def tableau_descent_composition(tableau: SetValuedTableau) -> Composition:
    """Descent composition of a standard set-valued tableau.

    ``i`` is a descent when ``i + 1`` sits in a row strictly below ``i``.
    """
    if not tableau.is_standard():
        tableau = standardize_weak_tableau(tableau)
    row_of = tableau.row_of()
    total = len(row_of)
    if total == 0:
        raise InvalidTableauError("empty tableau has no descent composition")
    descents = [i for i in range(1, total) if row_of[i + 1] > row_of[i]]
    return composition_from_set(descents, total)


# -- enumeration ---------------------------------------------------------------


def enumerate_increasing(
    shape: Partition | SkewShape, max_letter: int
) -> Iterator[IncreasingTableau]:
    """Every increasing filling of ``shape`` with entries in [max_letter].

    Tableaux are yielded in lexicographic order of their row-major entry sequences.
    """
    return enumerate_increasing_over(shape, range(1, max_letter + 1))


def enumerate_increasing_over(
    shape: Partition | SkewShape, alphabet: Sequence[int]
) -> Iterator[IncreasingTableau]:
    """Increasing fillings of ``shape`` with entries drawn from ``alphabet``."""
    skew = as_skew(shape)
    letters = sorted(set(alphabet))
    cells = skew.cells()
    offsets = skew.offsets()
    inner = skew.inner
    position = {cell: index for index, cell in enumerate(cells)}
    # indices (into ``letters``) of each cell's left and upper neighbours
    neighbours = [
        (
            position.get((r, c - 1)) if c - 1 > inner.row(r) else None,
            position.get((r - 1, c)) if r > 1 and c > inner.row(r - 1) else None,
        )
        for r, c in cells
    ]
    chosen = [0] * len(cells)

    def build() -> IncreasingTableau:
        rows: list[list[int]] = [[] for _ in skew.outer.parts]
        for (r, _), index in zip(cells, chosen, strict=True):
            rows[r - 1].append(letters[index])
        return IncreasingTableau(tuple(tuple(row) for row in rows), offsets)

    def fill(k: int) -> Iterator[IncreasingTableau]:
        if k == len(cells):
            yield build()
            return
        left, above = neighbours[k]
        low = 0
        if left is not None:
            low = chosen[left] + 1
        if above is not None:
            low = max(low, chosen[above] + 1)
        for index in range(low, len(letters)):
            chosen[k] = index
            yield from fill(k + 1)

    if not cells:
        yield IncreasingTableau(tuple(() for _ in offsets), offsets)
        return
    yield from fill(0)


def enumerate_all_increasing(
    alphabet: Sequence[int], full_support: bool = False
) -> Iterator[IncreasingTableau]:
    """All straight increasing tableaux over ``alphabet``, shape by shape.

    With ``full_support`` only tableaux using every letter are produced.
    """
    letters = sorted(set(alphabet))
    wanted = frozenset(letters)
    for shape in partitions_in_staircase(len(letters)):
        if full_support and shape.size < len(letters):
            continue
        for tableau in enumerate_increasing_over(shape, letters):
            if not full_support or tableau.support == wanted:
                yield tableau


def _box_options(low: int, num_vars: int, budget: int, multiset: bool) -> Iterator[Box]:
    for start in range(low, num_vars + 1):
        pool = range(start, num_vars + 1)
        for extra in range(0, budget):
            if multiset:
                for rest in combinations_with_replacement(pool, extra):
                    yield (start, *rest)
            else:
                for rest in combinations(range(start + 1, num_vars + 1), extra):
                    yield (start, *rest)


def _enumerate_boxes(
    shape: Partition, num_vars: int, max_size: int, multiset: bool
) -> Iterator[SetValuedTableau]:
    cells = shape.cells()
    boxes: list[Box] = []
    index_of = {cell: index for index, cell in enumerate(cells)}

    def fill(k: int, used: int) -> Iterator[SetValuedTableau]:
        if k == len(cells):
            rows: list[list[Box]] = [[] for _ in shape.parts]
            for (r, _), box in zip(cells, boxes, strict=True):
                rows[r - 1].append(box)
            tableau_type = WeakSetValuedTableau if multiset else SetValuedTableau
            yield tableau_type(tuple(tuple(row) for row in rows))
            return
        r, c = cells[k]
        low = 1
        if c > 1:
            low = boxes[index_of[(r, c - 1)]][-1]
        if r > 1:
            low = max(low, boxes[index_of[(r - 1, c)]][-1] + 1)
        budget = max_size - used - (len(cells) - k - 1)
        for box in _box_options(low, num_vars, budget, multiset):
            boxes.append(box)
            yield from fill(k + 1, used + len(box))
            boxes.pop()

    yield from fill(0, 0)


def enumerate_set_valued(shape: Partition, num_vars: int, max_size: int) -> Iterator[SetValuedTableau]:
    """Set-valued tableaux of ``shape`` with entries <= ``num_vars`` and |T| <= ``max_size``."""
    return _enumerate_boxes(shape, num_vars, max_size, multiset=False)


def enumerate_weak_set_valued(
    shape: Partition, num_vars: int, max_size: int
) -> Iterator[SetValuedTableau]:
    """Weak set-valued tableaux (multiset boxes) with the same bounds."""
    return _enumerate_boxes(shape, num_vars, max_size, multiset=True)
