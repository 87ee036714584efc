"""
Behavior tests for the K-theoretic Littlewood-Richardson rules

🎯 Test Coverage:
- URT choice and the URT guard
- Product coefficients and tables by counting skew fillings, symmetric in the factors
- Coproduct coefficients and tables over lambda (+) mu
- Agreement with the polynomial oracles
- The classical rule and the subpartition enumerator
"""

import pytest

from khecke.domain.errors import InvalidTableauError, NotURTError, WindowError
from khecke.domain.lr_rules import (
    LRQuery,
    URTChoice,
    classical_lr,
    count_skew_fillings,
    dual_lr_coefficient,
    dual_lr_table,
    lr_coefficient,
    lr_sign,
    lr_table,
    subpartitions,
    urt_tableau,
    verify_against_oracle,
    verify_dual_against_oracle,
)
from khecke.domain.shapes import Partition, SkewShape
from khecke.domain.tableaux import IncreasingTableau

P = IncreasingTableau.from_rows


def shape(*parts: int) -> Partition:
    return Partition(parts)


class TestURTChoiceBehavior:
    """Test how the rectification target is chosen."""

    def test_named_choices(self):
        """Should build the superstandard and minimal tableaux."""
        assert urt_tableau(shape(2, 1), URTChoice.SUPERSTANDARD) == P([[1, 2], [3]])
        assert urt_tableau(shape(2, 1), URTChoice.MINIMAL) == P([[1, 2], [2]])
        assert urt_tableau(shape(2, 1), "minimal") == P([[1, 2], [2]])

    def test_explicit_tableau_must_match_the_shape(self):
        """Should refuse a tableau of another shape."""
        assert urt_tableau(shape(2), P([[1, 3]])) == P([[1, 3]])
        with pytest.raises(InvalidTableauError, match="requested shape"):
            urt_tableau(shape(2, 1), P([[1, 3]]))

    def test_sign(self):
        """Should be negative exactly for odd excess size."""
        assert lr_sign(8, 4, 3) == -1
        assert lr_sign(7, 4, 3) == 1


class TestProductRuleBehavior:
    """Test the product counting rule."""

    def test_coefficient_of_431_in_g31_g21(self):
        """Should count three fillings of (4,3,1)/(3,1) with sign -1."""
        report = lr_coefficient(LRQuery(shape(3, 1), shape(2, 1), shape(4, 3, 1)))
        assert report.count == 3
        assert report.sign == -1
        assert report.coefficient == -3
        assert len(report.witnesses) == 3

    def test_coefficient_outside_the_support(self):
        """Should report zero when nu does not contain lambda."""
        report = lr_coefficient(LRQuery(shape(3, 1), shape(1), shape(2, 2, 1)))
        assert report.count == 0
        assert report.witnesses == ()

    def test_table_for_single_boxes(self):
        """Should give G1 G1 = G2 + G11 - G21."""
        table = lr_table(shape(1), shape(1), 1)
        assert {nu: report.count for nu, report in table.items()} == {
            shape(2): 1,
            shape(1, 1): 1,
            shape(2, 1): 1,
        }
        assert table[shape(2, 1)].sign == -1

    def test_minimal_target_gives_the_same_table(self):
        """Should not depend on which URT of shape mu is used."""
        superstandard = lr_table(shape(1), shape(2, 1), 1)
        minimal = lr_table(shape(1), shape(2, 1), 1, URTChoice.MINIMAL)
        assert {nu: r.coefficient for nu, r in superstandard.items()} == {
            nu: r.coefficient for nu, r in minimal.items()
        }

    @pytest.mark.parametrize(
        "first,second",
        [((1,), (2,)), ((1,), (1, 1)), ((2,), (1, 1)), ((1,), (2, 1)), ((2,), (2, 1))],
    )
    def test_coefficients_are_symmetric_in_the_factors(self, first, second):
        """Should count the same fillings for c_(lambda,mu)^nu and c_(mu,lambda)^nu."""
        forward = lr_table(Partition(first), Partition(second), 1)
        backward = lr_table(Partition(second), Partition(first), 1)
        assert {nu: r.count for nu, r in forward.items()} == {nu: r.count for nu, r in backward.items()}

    def test_guard_refuses_unsettled_targets(self):
        """Should raise NotURTError when the URT test does not pass."""
        query = LRQuery(shape(1), shape(3, 1), shape(3, 2), P([[1, 2, 4], [3]]))
        with pytest.raises(NotURTError, match="unique rectification target"):
            lr_coefficient(query, bound=8, max_visited=5)

    def test_bare_count_needs_no_guard(self):
        """Should count fillings for any target."""
        found = count_skew_fillings(SkewShape(shape(2), shape(1)), P([[1]]))
        assert found == [IncreasingTableau(((1,),), (1,))]

    def test_agrees_with_the_oracle(self):
        """Should match the G-expansion of G1 * G1."""
        report = verify_against_oracle(shape(1), shape(1), 4, 4)
        assert report.agree
        assert report.mismatches == []
        assert [row.shapes[0] for row in report.rows] == [shape(2), shape(1, 1), shape(2, 1)]

    def test_oracle_needs_a_wide_window(self):
        """Should refuse n < d or d < |lambda| + |mu|."""
        with pytest.raises(WindowError, match="window insufficient"):
            verify_against_oracle(shape(2), shape(1), 2, 2)

    @pytest.mark.slow
    def test_agrees_with_the_oracle_for_two_hooks(self):
        """Should match the G-expansion of G21 * G21 up to degree 7."""
        assert verify_against_oracle(shape(2, 1), shape(2, 1), 7, 7).agree


class TestCoproductRuleBehavior:
    """Test the coproduct counting rule."""

    def test_superstandard_32_splits_into_hooks(self):
        """Should count three fillings of (2,1)+(2,1) for S_(3,2)."""
        target = P([[1, 2, 3], [4, 5]])
        report = dual_lr_coefficient(target, shape(2, 1), shape(2, 1))
        assert report.count == 3
        assert report.coefficient == -3

    def test_small_pieces_cannot_cover(self):
        """Should report zero when |lambda| + |mu| < |nu|."""
        assert dual_lr_coefficient(P([[1, 2]]), shape(1), Partition()).count == 0

    def test_table_for_a_single_box(self):
        """Should give Delta G1 = 1 (x) G1 + G1 (x) 1 - G1 (x) G1."""
        table = dual_lr_table(P([[1]]))
        assert {pair: report.count for pair, report in table.items()} == {
            (Partition(), shape(1)): 1,
            (shape(1), Partition()): 1,
            (shape(1), shape(1)): 1,
        }
        assert table[(shape(1), shape(1))].coefficient == -1

    def test_agrees_with_the_oracle(self):
        """Should match the alphabet-splitting expansion of G1."""
        assert verify_dual_against_oracle(P([[1]]), 2, 2).agree

    @pytest.mark.slow
    def test_agrees_with_the_oracle_for_32(self):
        """Should match Delta G_(3,2) in the visible window."""
        report = verify_dual_against_oracle(P([[1, 2, 3], [4, 5]]), 5, 5)
        assert report.agree
        row = next(row for row in report.rows if row.shapes == (shape(2, 1), shape(2, 1)))
        assert row.oracle == -3


class TestClassicalRuleBehavior:
    """Test the classical rule and helpers."""

    def test_classical_coefficient(self):
        """Should give c_(2,1),(2,1)^(3,2,1) = 2."""
        assert classical_lr(shape(2, 1), shape(2, 1), shape(3, 2, 1)) == 2
        assert classical_lr(shape(1), shape(1), shape(2)) == 1
        assert classical_lr(shape(1), shape(1), shape(2, 1)) == 0

    def test_lowest_degree_agrees_with_classical(self):
        """Should match the classical coefficient when |nu| = |lambda| + |mu|."""
        table = lr_table(shape(2, 1), shape(1), 0)
        for nu, report in table.items():
            assert report.count == classical_lr(shape(2, 1), shape(1), nu)

    def test_subpartitions(self):
        """Should list every diagram inside (2,1) by size."""
        assert subpartitions(shape(2, 1)) == [Partition(), shape(1), shape(2), shape(1, 1), shape(2, 1)]
