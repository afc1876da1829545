from fractions import Fraction

import pytest
from sympy import Matrix, Rational, diag, eye
from src.core.utils.matrix_utils import (
    NonCommutingCartanException,
    NotDiagonalizableException,
    commutator,
    first_nonzero_column,
    joint_eigenspaces,
    matrix_from_columns,
    to_fraction,
    to_rational,
)


class TestConversions:
    @pytest.mark.parametrize("value", [Fraction(0), Fraction(3), Fraction(-7, 4), Fraction(1, 3)])
    def test_fraction_round_trip(self, value: Fraction):
        assert to_fraction(to_rational(value)) == value

    def test_integers_become_rationals(self):
        assert to_rational(5) == Rational(5)

    def test_matrix_from_sparse_columns(self):
        m = matrix_from_columns(3, [{0: Fraction(1, 2)}, {}, {2: Fraction(-1), 1: Fraction(0)}])
        assert Matrix(m) == Matrix([[Rational(1, 2), 0, 0], [0, 0, 0], [0, 0, -1]])


class TestMatrixHelpers:
    def test_commutator_of_diagonal_matrices_vanishes(self):
        assert commutator(diag(1, 2), diag(3, 4)).is_zero_matrix

    def test_commutator(self):
        a = Matrix([[0, 1], [0, 0]])
        b = Matrix([[0, 0], [1, 0]])
        assert commutator(a, b) == Matrix([[1, 0], [0, -1]])

    def test_first_nonzero_column(self):
        assert first_nonzero_column(Matrix([[0, 0, 1], [0, 2, 0]])) == 1
        assert first_nonzero_column(Matrix.zeros(2, 2)) is None


class TestJointEigenspaces:
    def test_single_operator(self):
        blocks = joint_eigenspaces([diag(2, 1, 2)], 3)
        assert [values for values, _ in blocks] == [(1,), (2,)]
        assert [basis.cols for _, basis in blocks] == [1, 2]

    def test_refinement_by_second_operator(self):
        blocks = joint_eigenspaces([diag(0, 0, 1), diag(1, 2, 1)], 3)
        assert [values for values, _ in blocks] == [(0, 1), (0, 2), (1, 1)]

    def test_blocks_are_eigenvectors(self):
        m = Matrix([[2, 1], [1, 2]])
        for (value,), basis in joint_eigenspaces([m], 2):
            assert m * basis == basis * value

    def test_no_operators_gives_whole_space(self):
        assert joint_eigenspaces([], 2) == [((), eye(2))]

    def test_empty_space(self):
        assert joint_eigenspaces([Matrix.zeros(0, 0)], 0) == []

    def test_non_commuting_operators_rejected(self):
        with pytest.raises(NonCommutingCartanException):
            joint_eigenspaces([Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])], 2)

    def test_jordan_block_rejected(self):
        with pytest.raises(NotDiagonalizableException, match="Jordan"):
            joint_eigenspaces([Matrix([[1, 1], [0, 1]])], 2)

    def test_irrational_eigenvalues_rejected(self):
        with pytest.raises(NotDiagonalizableException, match="irrational"):
            joint_eigenspaces([Matrix([[0, 2], [1, 0]])], 2)
