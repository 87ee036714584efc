"""Young diagrams: partitions, skew shapes and shape enumeration.

Cells are 1-indexed ``(row, col)`` pairs with row 1 at the top.
"""
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

from khecke.domain.errors import InvalidShapeError

Cell = tuple[int, int]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition stored as its weakly decreasing tuple of positive row lengths."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for index, part in enumerate(parts):
            if part <= 0:
                raise InvalidShapeError(
                    "partition parts must be positive", row=index + 1, value=part
                )
            if index and part > parts[index - 1]:
                raise InvalidShapeError(
                    "partition parts must be weakly decreasing", row=index + 1
                )

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition, dropping trailing zero parts."""
        cleaned = [part for part in parts]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        return cls(tuple(cleaned))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the CLI encoding ``"3,1"``; empty text and ``"0"`` mean the empty partition."""
        text = text.strip().strip("()[]")
        if not text or text in {"0", "-", "empty"}:
            return cls()
        try:
            return cls.of(int(piece) for piece in text.split(","))
        except ValueError as exc:
            raise InvalidShapeError("cannot parse partition", text=text) from exc

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"

    def row(self, index: int) -> int:
        """Length of 1-indexed row ``index`` (0 beyond the last row)."""
        return self.parts[index - 1] if 0 < index <= len(self.parts) else 0

    @cached_property
    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(
            tuple(sum(1 for part in self.parts if part >= col) for col in range(1, self.parts[0] + 1))
        )

    def cells(self) -> list[Cell]:
        """Row-major cell list."""
        return [(row, col) for row, length in enumerate(self.parts, 1) for col in range(1, length + 1)]

    def contains(self, other: "Partition") -> bool:
        """True when ``other`` fits inside this diagram."""
        return len(other) <= len(self) and all(
            part <= self.row(index) for index, part in enumerate(other.parts, 1)
        )

    def corners(self) -> list[Cell]:
        """Removable cells, top to bottom."""
        return [
            (row, length)
            for row, length in enumerate(self.parts, 1)
            if self.row(row + 1) < length
        ]


@dataclass(frozen=True)
class SkewShape:
    """The cells of ``outer`` that are not in ``inner``."""

    outer: Partition
    inner: Partition = Partition()

    def __post_init__(self) -> None:
        if not self.outer.contains(self.inner):
            raise InvalidShapeError(
                "inner partition must be contained in outer",
                outer=str(self.outer),
                inner=str(self.inner),
            )

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    @property
    def is_straight(self) -> bool:
        return not self.inner.parts

    def offsets(self) -> tuple[int, ...]:
        """Number of missing leading cells in each outer row."""
        return tuple(self.inner.row(row) for row in range(1, len(self.outer) + 1))

    def cells(self) -> list[Cell]:
        return [
            (row, col)
            for row, length in enumerate(self.outer.parts, 1)
            for col in range(self.inner.row(row) + 1, length + 1)
        ]

    def __str__(self) -> str:
        if self.is_straight:
            return str(self.outer)
        return f"{self.outer}/{self.inner}"


def as_skew(shape: "Partition | SkewShape") -> SkewShape:
    return shape if isinstance(shape, SkewShape) else SkewShape(shape)


def direct_sum_shape(lam: Partition, mu: Partition) -> SkewShape:
    """Place ``mu`` strictly north-east of ``lam``, corner to corner.

    The rows of ``mu`` come first, shifted right by ``lam``'s first row; the rows
    of ``lam`` follow below them.
    """
    shift = lam.row(1)
    outer = Partition.of([shift + part for part in mu.parts] + list(lam.parts))
    inner = Partition.of([shift] * len(mu) if shift else [])
    return SkewShape(outer, inner)


def partitions_of(size: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``size`` in reverse lexicographic order."""
    if size == 0:
        yield Partition()
        return
    top = size if max_part is None else min(size, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(size - first, first):
            yield Partition((first, *rest.parts))


def partitions_up_to(max_size: int, max_parts: int | None = None) -> list[Partition]:
    """All partitions with at most ``max_parts`` rows, ordered by size then reverse lex."""
    return [
        partition
        for size in range(max_size + 1)
        for partition in partitions_of(size)
        if max_parts is None or len(partition) <= max_parts
    ]


def partitions_in_staircase(k: int) -> list[Partition]:
    """Shapes that admit an increasing filling over [k].

    Cell (i, j) needs a letter at least i + j - 1, so these are the partitions
    inside the staircase (k, k-1, ..., 1).
    """

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield prefix
        row = len(prefix) + 1
        cap = k - row + 1
        if cap <= 0:
            return
        if prefix:
            cap = min(cap, prefix[-1])
        for length in range(1, cap + 1):
            yield from extend((*prefix, length))

    shapes = [Partition(parts) for parts in extend(())]
    return sorted(shapes, key=lambda shape: (shape.size, tuple(-part for part in shape.parts)))


def shapes_between(
    inner: Partition,
    min_added: int,
    max_added: int,
    row_cap: int,
    col_cap: int,
) -> list[Partition]:
    """Partitions ``nu`` containing ``inner`` with ``min_added <= |nu/inner| <= max_added``.

    Every row of ``nu/inner`` holds at most ``row_cap`` cells and every column at
    most ``col_cap`` cells.
    """
    base = list(inner.parts)
    results: list[Partition] = []

    def grow(row: int, current: list[int], added: int) -> None:
        old = base[row - 1] if row <= len(base) else 0
        upper = old + row_cap
        if row > 1:
            upper = min(upper, current[row - 2])
        if row > len(base):
            # below the inner shape every remaining row may stay empty
            if min_added <= added:
                results.append(Partition.of(current))
            if row > len(base) + col_cap:
                return
            lengths = range(1, upper + 1)
        else:
            lengths = range(old, upper + 1)
        for length in lengths:
            extra = length - old
            if added + extra > max_added:
                break
            if extra and not _column_ok(base, current, row, length, col_cap):
                continue
            current.append(length)
            grow(row + 1, current, added + extra)
            current.pop()

    grow(1, [], 0)
    unique = sorted(set(results), key=lambda shape: (shape.size, tuple(-part for part in shape.parts)))
    return unique


def _column_ok(base: list[int], current: list[int], row: int, length: int, col_cap: int) -> bool:
    old = base[row - 1] if row <= len(base) else 0
    for col in range(old + 1, length + 1):
        run = 1
        above = row - 1
        while above >= 1:
            above_old = base[above - 1] if above <= len(base) else 0
            if above_old < col <= current[above - 1]:
                run += 1
                above -= 1
            else:
                break
        if run > col_cap:
            return False
    return True
