from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from src.core.utils.partition_utils import (
    centralizer_order,
    equal_part_blocks,
    generalized_partitions,
    multiplicity_factorial,
    ordered_words,
    partitions,
    partitions_with_length,
    square_sum,
)


class TestPartitions:
    @pytest.mark.parametrize(
        ("n", "expected"),
        [
            (0, ((),)),
            (1, ((1,),)),
            (3, ((3,), (2, 1), (1, 1, 1))),
            (4, ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))),
        ],
    )
    def test_small_partitions(self, n: int, expected: tuple[tuple[int, ...], ...]):
        assert partitions(n) == expected

    def test_negative_has_no_partitions(self):
        assert partitions(-1) == ()

    @pytest.mark.parametrize(("n", "count"), [(5, 7), (6, 11), (8, 22)])
    def test_partition_counts(self, n: int, count: int):
        assert len(partitions(n)) == count

    def test_with_length(self):
        assert partitions_with_length(5, 2) == ((4, 1), (3, 2))
        assert partitions_with_length(0, 0) == ((),)
        assert partitions_with_length(2, 3) == ()

    @given(st.integers(min_value=0, max_value=10))
    def test_parts_sum_and_descend(self, n: int):
        for parts in partitions(n):
            assert sum(parts) == n
            assert list(parts) == sorted(parts, reverse=True)


class TestGeneralizedPartitions:
    def test_words_of_total_zero(self):
        words = list(generalized_partitions(0, 2, 2))
        assert words == [(1, -1), (2, -2)]

    def test_annihilation_bound_drops_heavy_words(self):
        words = list(generalized_partitions(0, 2, 1))
        assert words == [(1, -1)]

    def test_pure_creation(self):
        assert list(generalized_partitions(3, 2, 0)) == [(2, 1)]

    def test_negative_total(self):
        assert list(generalized_partitions(-2, 1, 3)) == [(-2,)]

    @given(
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=0, max_value=3),
    )
    def test_words_are_normally_ordered(self, total: int, length: int, bound: int):
        words = list(generalized_partitions(total, length, bound))
        assert len(words) == len(set(words))
        for word in words:
            assert sum(word) == total
            assert len(word) == length
            assert 0 not in word
            assert list(word) == sorted(word, reverse=True)
            assert -sum(k for k in word if k < 0) <= bound

    def test_ordered_words_cover_every_permutation(self):
        words = list(ordered_words(0, 2, 1))
        assert words == [(-1, 1), (1, -1)]


class TestPartitionStatistics:
    @pytest.mark.parametrize(
        ("parts", "factorial", "z", "squares"),
        [
            ((), 1, 1, 0),
            ((1, 1), 2, 2, 2),
            ((2, 1), 1, 2, 5),
            ((2, 2, 1), 2, 8, 9),
            ((1, 1, 1), 6, 6, 3),
        ],
    )
    def test_statistics(self, parts: tuple[int, ...], factorial: int, z: int, squares: int):
        assert multiplicity_factorial(parts) == factorial
        assert centralizer_order(parts) == z
        assert square_sum(parts) == squares

    def test_centralizer_orders_sum_to_one(self):
        """Σ_λ 1/z(λ) over partitions of n is 1 (class equation of S_n)."""
        for n in range(1, 7):
            assert sum(Fraction(1, centralizer_order(p)) for p in partitions(n)) == 1

    @pytest.mark.parametrize(
        ("parts", "blocks"),
        [
            ((), ()),
            ((3, 1), ((0,), (1,))),
            ((2, 2, 1, -1, -1), ((0, 1), (2,), (3, 4))),
        ],
    )
    def test_equal_part_blocks(self, parts: tuple[int, ...], blocks: tuple[tuple[int, ...], ...]):
        assert equal_part_blocks(parts) == blocks
