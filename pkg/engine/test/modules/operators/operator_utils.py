from sympy import Matrix, eye, zeros
from src.modules.fock.fock_model import SlottedVector
from src.modules.fock.fock_service import FockSpace
from src.modules.operators.operators_model import OpExpr


class OperatorTestUtils:
    """Matrix-level assertions for operators on the Fock model."""

    def __init__(self, space: FockSpace):
        self.space = space

    def matrix(self, op: OpExpr, n: int) -> Matrix:
        return Matrix(self.space.matrix_of(op, n))

    def assert_same_operator(self, lhs: OpExpr, rhs: OpExpr, n: int) -> None:
        left = self.matrix(lhs, n)
        right = self.matrix(rhs, n)
        assert left == right, f"operators differ on A*(Hilb_{n}):\n{left}\nvs\n{right}"

    def assert_zero(self, op: OpExpr, n: int) -> None:
        m = self.matrix(op, n)
        assert m == zeros(m.rows, m.cols), f"operator does not vanish on A*(Hilb_{n}):\n{m}"

    def assert_scalar(self, op: OpExpr, scalar: int, n: int) -> None:
        m = self.matrix(op, n)
        assert m == eye(m.rows) * scalar, f"expected {scalar}·Id on A*(Hilb_{n}), got\n{m}"

    def assert_same_vector(self, lhs: SlottedVector, rhs: SlottedVector) -> None:
        left = self.space.coordinates(lhs) if lhs.terms else {}
        right = self.space.coordinates(rhs) if rhs.terms else {}
        assert left == right, f"{lhs.to_text()} != {rhs.to_text()}"
