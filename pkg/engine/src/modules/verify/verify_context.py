"""Services and comparison helpers shared by every check of a run."""

import logging
from collections.abc import Mapping
from fractions import Fraction

from sympy import Matrix, zeros
from src.core.exceptions import ComputationException
from src.core.utils.matrix_utils import first_nonzero_column, to_fraction
from src.modules.fock.fock_model import SlottedVector
from src.modules.fock.fock_service import FockSpace
from src.modules.operators.claim_service import ClaimService, WordClasses
from src.modules.operators.lqw_service import LQWService
from src.modules.operators.operators_model import OpExpr, Sides
from src.modules.operators.operators_service import OperatorService
from src.modules.operators.projector_service import ProjectorService
from src.modules.taut_ring.taut_ring_model import Label, SurfaceClass, divisor_label
from src.modules.taut_ring.taut_ring_service import RewriteRules, TautologicalRing

from .verify_model import Fault, SuiteConfig, Witness

logger = logging.getLogger(__name__)


class IdentityViolationException(ComputationException):
    """Raised by a check when the two sides of its identity differ."""

    def __init__(self, witness: Witness):
        super().__init__(f"identity fails at {witness.instance}")
        self.witness = witness


def describe(**values: object) -> str:
    """Render check parameters as ``key=value`` pairs, classes in their text form."""
    parts: list[str] = []
    for key, value in values.items():
        if isinstance(value, SurfaceClass):
            value = value.to_text()
        parts.append(f"{key}={value}")
    return " ".join(parts)


class VerifyContext:
    """One ring, Fock space and operator stack built for a `SuiteConfig`.

    The configured `Fault` is wired in here: the divisor-transfer fault flips the
    sign of Δ·α in the ring rules, the annihilation fault flips the sign of
    every annihilation operator and the self-intersection fault replaces the
    Δ·Δ constant 24 by 23.
    """

    def __init__(self, config: SuiteConfig):
        self.config = config
        rules = RewriteRules(
            divisor_transfer_sign=-1 if config.fault == Fault.FLIP_DIVISOR_TRANSFER else 1,
            diagonal_self_intersection=(
                23 if config.fault == Fault.PERTURB_SELF_INTERSECTION else 24
            ),
        )
        self.ring = TautologicalRing(config.lattice, rules)
        self.space = FockSpace(
            self.ring,
            annihilation_sign=1 if config.fault == Fault.FLIP_ANNIHILATION_SIGN else -1,
        )
        self.operators = OperatorService(self.space)
        self.lqw = LQWService(self.operators)
        self.claims = ClaimService(self.lqw)
        self.projectors = ProjectorService(self.operators)

    # ------------------------------------------------------------------ inputs

    @property
    def rank(self) -> int:
        """Rank of the divisor lattice."""
        return self.ring.lattice.rank

    def divisors(self) -> list[SurfaceClass]:
        """The basis divisors as classes on S."""
        return [self.operators.divisor_class(j) for j in range(self.rank)]

    def divisor_labels(self) -> list[Label]:
        """The basis divisors as labels."""
        return [divisor_label(j) for j in range(self.rank)]

    def surface_basis(self, arity: int) -> list[SurfaceClass]:
        """The canonical basis of S^arity."""
        return self.ring.basis_classes(arity)

    def one(self) -> SurfaceClass:
        """The unit class of S."""
        return self.ring.one(1)

    def point(self) -> SurfaceClass:
        """The point class c of S."""
        return self.ring.point(0, 1)

    # ------------------------------------------------------------------ expectations

    def expect_classes(self, sides: Sides[SurfaceClass], instance: str) -> None:
        """Compare two classes of the same arity."""
        if sides.lhs != sides.rhs:
            raise IdentityViolationException(
                Witness(instance=instance, lhs=sides.lhs.to_text(), rhs=sides.rhs.to_text())
            )

    def expect_values(self, lhs: object, rhs: object, instance: str) -> None:
        """Compare two plain values."""
        if lhs != rhs:
            raise IdentityViolationException(Witness(instance=instance, lhs=str(lhs), rhs=str(rhs)))

    def expect_words(self, sides: Sides[WordClasses], instance: str) -> None:
        """Compare two word dictionaries word by word."""
        for word in sorted(set(sides.lhs) | set(sides.rhs)):
            left = sides.lhs.get(word)
            right = sides.rhs.get(word)
            if left != right:
                raise IdentityViolationException(
                    Witness(
                        instance=instance,
                        lhs=left.to_text() if left is not None else "0",
                        rhs=right.to_text() if right is not None else "0",
                        detail=f"word q{list(word)}",
                    )
                )

    def expect_vectors(self, lhs: SlottedVector, rhs: SlottedVector, instance: str) -> None:
        """Compare two vectors through their basis coordinates."""
        left = self.space.coordinates(lhs) if lhs.terms else {}
        right = self.space.coordinates(rhs) if rhs.terms else {}
        if left != right:
            raise IdentityViolationException(
                Witness(instance=instance, lhs=lhs.to_text(), rhs=rhs.to_text())
            )

    def matrix(self, op: OpExpr, n: int) -> Matrix:
        """Return the matrix of ``op`` on A*(Hilbₙ) as a sympy matrix."""
        return Matrix(self.space.matrix_of(op, n))

    def expect_operators(self, lhs: OpExpr, rhs: OpExpr, n: int, instance: str) -> None:
        """Compare two operators as matrices on A*(Hilbₙ)."""
        shift = lhs.shift if lhs.shift is not None else rhs.shift
        target = n + (shift or 0)
        self.expect_matrices(self.matrix(lhs, n), self.matrix(rhs, n), n, target, instance)

    def expect_zero(self, op: OpExpr, n: int, instance: str) -> None:
        """Check that ``op`` vanishes on A*(Hilbₙ)."""
        m = self.matrix(op, n)
        self.expect_matrices(m, zeros(m.rows, m.cols), n, n + (op.shift or 0), instance)

    def expect_matrices(
        self, lhs: Matrix, rhs: Matrix, n_source: int, n_target: int, instance: str
    ) -> None:
        """Compare two matrices A*(Hilb_source) → A*(Hilb_target).

        A zero operator of the wrong level is padded to the shape of the other side.

        Raises:
            IdentityViolationException: With the first basis column where they differ.
        """
        if lhs.shape != rhs.shape:
            if lhs.is_zero_matrix:
                lhs = zeros(*rhs.shape)
            elif rhs.is_zero_matrix:
                rhs = zeros(*lhs.shape)
            else:
                raise IdentityViolationException(
                    Witness(
                        instance=instance,
                        detail=f"operator shapes differ: {lhs.shape} vs {rhs.shape}",
                    )
                )
        column = first_nonzero_column(lhs - rhs)
        if column is None:
            return
        entry = self.space.basis(n_source)[column]
        raise IdentityViolationException(
            Witness(
                instance=instance,
                basis_vector=entry.to_text(),
                lhs=self._image_text(lhs, column, n_target),
                rhs=self._image_text(rhs, column, n_target),
            )
        )

    def _image_text(self, m: Matrix, column: int, n_target: int) -> str:
        coordinates: Mapping[int, Fraction] = {
            row: to_fraction(m[row, column]) for row in range(m.rows) if m[row, column] != 0
        }
        if not coordinates:
            return "0"
        return self.space.vector_from_coordinates(n_target, dict(coordinates)).to_text()
