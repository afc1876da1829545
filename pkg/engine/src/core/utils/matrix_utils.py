"""Exact rational matrices on top of sympy.

Columns arrive from the Fock model as sparse ``{row: Fraction}`` maps; everything
downstream (products, commutators, eigenspaces) stays in sympy's exact domain.
"""

from collections.abc import Mapping, Sequence
from fractions import Fraction

import sympy
from sympy import Matrix, Rational, SparseMatrix
from src.core.exceptions import ComputationException


class NotDiagonalizableException(ComputationException):
    """Raised when an operator has no rational eigenbasis on the model."""

    def __init__(self, operator_index: int, reason: str):
        super().__init__(
            f"Cartan operator #{operator_index} is not diagonalizable over Q: {reason}"
        )


class NonCommutingCartanException(ComputationException):
    """Raised when the operators handed to a joint decomposition do not commute."""

    def __init__(self, first: int, second: int):
        super().__init__(f"Cartan operators #{first} and #{second} do not commute")


def to_rational(value: Fraction | int) -> Rational:
    """Convert a python rational into a sympy ``Rational`` without rounding."""
    if isinstance(value, int):
        return Rational(value)
    return Rational(value.numerator, value.denominator)


def to_fraction(value: sympy.Expr) -> Fraction:
    """Convert a sympy rational entry back into a `Fraction`."""
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def matrix_from_columns(rows: int, columns: Sequence[Mapping[int, Fraction]]) -> SparseMatrix:
    """Assemble a sparse matrix whose j-th column is the map ``columns[j]``."""
    entries = {
        (row, col): to_rational(value)
        for col, column in enumerate(columns)
        for row, value in column.items()
        if value
    }
    return SparseMatrix(rows, len(columns), entries)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """Return ``ab − ba``."""
    return a * b - b * a


def first_nonzero_column(m: Matrix) -> int | None:
    """Return the smallest column index holding a nonzero entry, or None for a zero matrix."""
    columns = [col for (_, col), value in m.todok().items() if value != 0]
    return min(columns) if columns else None


def _restrict(op: Matrix, basis: Matrix) -> Matrix | None:
    """Return R with ``op · basis = basis · R``, or None if span(basis) is not invariant."""
    image = op * basis
    gram = basis.T * basis
    restricted = gram.inv() * (basis.T * image)
    if basis * restricted != image:
        return None
    return restricted


def _rational_eigenspaces(
    m: Matrix, operator_index: int
) -> list[tuple[Rational, list[Matrix]]]:
    x = sympy.Symbol("x")
    _, factors = m.charpoly(x).factor_list()
    eigenvalues: set[Rational] = set()
    for factor, _ in factors:
        if factor.degree() != 1:
            raise NotDiagonalizableException(
                operator_index, f"irrational eigenvalues, factor {factor.as_expr()}"
            )
        a, b = factor.all_coeffs()
        eigenvalues.add(Rational(-b, a))

    spaces: list[tuple[Rational, list[Matrix]]] = []
    found = 0
    for value in sorted(eigenvalues):
        vectors = (m - value * sympy.eye(m.rows)).nullspace()
        found += len(vectors)
        spaces.append((value, vectors))
    if found != m.rows:
        raise NotDiagonalizableException(operator_index, "eigenvectors do not span (Jordan block)")
    return spaces


def joint_eigenspaces(
    operators: Sequence[Matrix], dim: int
) -> list[tuple[tuple[Rational, ...], Matrix]]:
    """Split ``Q^dim`` into joint eigenspaces of pairwise commuting operators.

    Args:
        operators: Square ``dim × dim`` exact matrices.
        dim: Dimension of the ambient space.

    Returns:
        ``(eigenvalues, basis)`` pairs, one per nonzero joint eigenspace, where
        ``basis`` holds the spanning vectors as columns. Ordered by eigenvalue tuple.

    Raises:
        NonCommutingCartanException: If two operators do not commute.
        NotDiagonalizableException: If an operator is not diagonalizable over Q.
    """
    for i, a in enumerate(operators):
        for j in range(i + 1, len(operators)):
            if not commutator(a, operators[j]).is_zero_matrix:
                raise NonCommutingCartanException(i, j)

    blocks: list[tuple[tuple[Rational, ...], Matrix]] = []
    if dim > 0:
        blocks.append(((), sympy.eye(dim)))
    for index, op in enumerate(operators):
        refined: list[tuple[tuple[Rational, ...], Matrix]] = []
        for values, basis in blocks:
            restricted = _restrict(Matrix(op), basis)
            if restricted is None:
                raise NonCommutingCartanException(index, index)
            for value, vectors in _rational_eigenspaces(restricted, index):
                if vectors:
                    refined.append((values + (value,), basis * Matrix.hstack(*vectors)))
        blocks = refined
    return sorted(blocks, key=lambda block: block[0])
