"""
Behavior tests for Young diagrams

🎯 Test Coverage:
- Partition validation, parsing and conjugation
- Corners and containment
- Skew shapes and the direct sum lambda (+) mu
- Shape enumerators (partitions of n, staircase shapes, shapes between bounds)
"""

import pytest

from khecke.domain.errors import InvalidShapeError
from khecke.domain.shapes import (
    Partition,
    SkewShape,
    direct_sum_shape,
    partitions_in_staircase,
    partitions_of,
    partitions_up_to,
    shapes_between,
)


class TestPartitionBehavior:
    """Test partition construction and queries."""

    def test_rejects_increasing_parts(self):
        """Should refuse parts that are not weakly decreasing."""
        with pytest.raises(InvalidShapeError, match="weakly decreasing"):
            Partition((2, 3))

    def test_rejects_non_positive_parts(self):
        """Should refuse zero parts in the raw constructor."""
        with pytest.raises(InvalidShapeError, match="positive"):
            Partition((1, 0))

    def test_of_drops_trailing_zeros(self):
        """Should accept padded input through the factory."""
        assert Partition.of([2, 1, 0, 0]) == Partition((2, 1))

    @pytest.mark.parametrize(
        "text,expected",
        [("3,1", (3, 1)), ("(2,2)", (2, 2)), ("", ()), ("0", ()), ("[4]", (4,))],
    )
    def test_parses_cli_encoding(self, text, expected):
        """Should parse the comma-separated CLI form."""
        assert Partition.parse(text).parts == expected

    def test_parse_reports_garbage(self):
        """Should raise InvalidShapeError on non-numeric text."""
        with pytest.raises(InvalidShapeError, match="cannot parse"):
            Partition.parse("3,x")

    def test_size_length_and_rows(self):
        """Should expose size, number of rows and padded row lengths."""
        shape = Partition((3, 1))
        assert shape.size == 4
        assert len(shape) == 2
        assert shape.row(1) == 3
        assert shape.row(3) == 0

    def test_conjugate_transposes_the_diagram(self):
        """Should transpose rows and columns."""
        assert Partition((3, 1)).conjugate == Partition((2, 1, 1))
        assert Partition().conjugate == Partition()

    def test_corners_are_removable_cells(self):
        """Should list the removable cells top to bottom."""
        assert Partition((3, 1)).corners() == [(1, 3), (2, 1)]
        assert Partition((2, 2)).corners() == [(2, 2)]

    def test_contains(self):
        """Should decide diagram containment."""
        assert Partition((4, 3, 1)).contains(Partition((3, 1)))
        assert not Partition((3, 1)).contains(Partition((2, 2)))

    def test_cells_are_row_major(self):
        """Should list cells row by row."""
        assert Partition((2, 1)).cells() == [(1, 1), (1, 2), (2, 1)]

    def test_renders_as_tuple_text(self):
        """Should print like the CLI encoding."""
        assert str(Partition((3, 1))) == "(3,1)"


class TestSkewShapeBehavior:
    """Test skew shapes."""

    def test_requires_containment(self):
        """Should refuse an inner shape that sticks out."""
        with pytest.raises(InvalidShapeError, match="contained"):
            SkewShape(Partition((1,)), Partition((2,)))

    def test_cells_and_size(self):
        """Should list only the cells outside the inner shape."""
        shape = SkewShape(Partition((3, 2)), Partition((1,)))
        assert shape.cells() == [(1, 2), (1, 3), (2, 1), (2, 2)]
        assert shape.size == 4
        assert shape.offsets() == (1, 0)
        assert str(shape) == "(3,2)/(1)"

    def test_direct_sum_places_mu_north_east(self):
        """Should put mu above and to the right of lambda, corner to corner."""
        shape = direct_sum_shape(Partition((2, 1)), Partition((2, 1)))
        assert shape.outer == Partition((4, 3, 2, 1))
        assert shape.inner == Partition((2, 2))
        assert shape.size == 6

    def test_direct_sum_with_empty_lambda_is_mu(self):
        """Should reduce to mu when lambda is empty."""
        shape = direct_sum_shape(Partition(), Partition((2, 1)))
        assert shape.is_straight
        assert shape.outer == Partition((2, 1))


class TestShapeEnumerationBehavior:
    """Test the shape enumerators."""

    def test_partitions_of_four(self):
        """Should produce the five partitions of 4 in reverse lexicographic order."""
        assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_partitions_up_to_respects_row_cap(self):
        """Should count partitions of size <= 3, optionally capping rows."""
        assert len(partitions_up_to(3)) == 7
        assert Partition((1, 1, 1)) not in partitions_up_to(3, max_parts=2)

    def test_staircase_shapes_over_two_letters(self):
        """Should list every shape admitting an increasing filling over [2]."""
        shapes = [p.parts for p in partitions_in_staircase(2)]
        assert shapes == [(), (1,), (2,), (1, 1), (2, 1)]

    def test_shapes_between_adds_exactly_the_requested_cells(self):
        """Should grow (1) by one cell in both directions."""
        shapes = shapes_between(Partition((1,)), 1, 1, row_cap=1, col_cap=1)
        assert shapes == [Partition((2,)), Partition((1, 1))]

    def test_shapes_between_honours_row_cap(self):
        """Should never add two cells to a row when the cap is one."""
        for shape in shapes_between(Partition(), 2, 3, row_cap=1, col_cap=3):
            assert all(part <= 1 for part in shape.parts)
