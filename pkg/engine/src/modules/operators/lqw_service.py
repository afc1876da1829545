"""LQW operators J_m^d, the multiplication operators G_d and universal classes.

G_d(γ) is multiplication by the universal class univ_d(γ); products of G's are
formed by slot composition: each G leaves one S-factor open and the class Γ
ties the open factors together before they are integrated out.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

from src.core.exceptions import UnprocessableEntityException
from src.core.utils.partition_utils import generalized_partitions, multiplicity_factorial
from src.modules.fock.fock_model import FockVector
from src.modules.taut_ring.taut_ring_model import ArityMismatchException, SurfaceClass

from .operators_model import LinearCombination, OpExpr, SlottedProduct, WordSum, ZeroOp
from .operators_service import OperatorService

logger = logging.getLogger(__name__)


class InvalidUniversalDegreeException(UnprocessableEntityException):
    """Raised when a G-operator or universal class is requested with a negative degree."""

    def __init__(self, d: int):
        super().__init__(f"universal degree must be non-negative, got {d}")


class LQWService:
    """Builds J, G and their products on top of an `OperatorService`."""

    def __init__(self, operators: OperatorService):
        self.operators = operators
        self.space = operators.space
        self.ring = operators.ring

    # ------------------------------------------------------------------ J

    def _J_terms(self, m: int, d: int, n: int) -> list[tuple[tuple[int, ...], Fraction, bool]]:
        """Return (λ, coefficient, carries c) for the two partition sums of J_m^d."""
        scale = math.factorial(d)
        terms: list[tuple[tuple[int, ...], Fraction, bool]] = [
            (word, Fraction(-scale, multiplicity_factorial(word)), False)
            for word in generalized_partitions(m, d + 1, n)
        ]
        if d >= 1:
            for word in generalized_partitions(m, d - 1, n):
                if not word:
                    continue
                weight = sum(k * k for k in word) + m * m - 2
                terms.append(
                    (word, Fraction(scale * weight, multiplicity_factorial(word)), True)
                )
        return terms

    def op_J(self, m: int, d: int, gamma: SurfaceClass, n: int) -> OpExpr:
        """Return J_m^d(γ).

        The second partition sum skips the empty partition, so J₀¹ = −L₀.
        """
        if d < 0:
            raise InvalidUniversalDegreeException(d)
        words = WordSum(m)
        for word, coef, with_point in self._J_terms(m, d, n):
            length = len(word)
            weight = self.ring.small_diagonal(range(length), length) * self.ring.embed(
                gamma, 0, length
            )
            if with_point:
                weight = weight * self.ring.point(0, length)
            words.add(word, weight, coef)
        return words.to_op()

    def op_J_slotted(
        self, m: int, d: int, n: int, twist: SurfaceClass | None = None
    ) -> OpExpr:
        """Return J_m^d with its S-factor left open, optionally multiplied by ``twist`` there."""
        if d < 0:
            raise InvalidUniversalDegreeException(d)
        words = WordSum(m, slotted=True)
        for word, coef, with_point in self._J_terms(m, d, n):
            length = len(word)
            arity = length + 1
            psi = self.ring.small_diagonal(range(arity), arity)
            if with_point:
                psi = psi * self.ring.point(length, arity)
            if twist is not None:
                psi = psi * self.ring.embed(twist, length, arity)
            words.add(word, psi, coef)
        return words.to_op()

    # ------------------------------------------------------------------ G

    def op_G(self, d: int, gamma: SurfaceClass, n: int) -> OpExpr:
        """Return G_d(γ), multiplication by univ_d(γ); G₀ = G₁ = 0."""
        if d < 0:
            raise InvalidUniversalDegreeException(d)
        if d < 2:
            return ZeroOp(0)
        first = self.op_J(0, d - 1, gamma, n).scale(Fraction(1, math.factorial(d - 1)))
        if d < 3:
            return first
        gamma_c = gamma * self.ring.point(0, 1)
        second = self.op_J(0, d - 3, gamma_c, n).scale(Fraction(-2, math.factorial(d - 3)))
        return LinearCombination.of((1, first), (1, second))

    def op_G_slotted(self, d: int, n: int) -> OpExpr:
        """Return G_d with its S-factor left open."""
        if d < 0:
            raise InvalidUniversalDegreeException(d)
        if d < 2:
            return ZeroOp(0, slotted=True)
        first = self.op_J_slotted(0, d - 1, n).scale(Fraction(1, math.factorial(d - 1)))
        if d < 3:
            return first
        second = self.op_J_slotted(0, d - 3, n, twist=self.ring.point(0, 1)).scale(
            Fraction(-2, math.factorial(d - 3))
        )
        return LinearCombination.of((1, first), (1, second))

    def op_mult_universal(self, ds: Sequence[int], gamma: SurfaceClass, n: int) -> OpExpr:
        """Return G_{d₁}…G_{d_t}(Γ), multiplication by univ_{d₁…d_t}(Γ).

        Raises:
            ArityMismatchException: If Γ does not live on S^t with t = len(ds).
        """
        if gamma.arity != len(ds):
            raise ArityMismatchException(len(ds), gamma.arity, "op_mult_universal")
        if any(d < 2 for d in ds):
            return ZeroOp(0)
        return SlottedProduct(tuple(self.op_G_slotted(d, n) for d in ds), gamma)

    def universal_class(self, ds: Sequence[int], gamma: SurfaceClass, n: int) -> FockVector:
        """Return univ_{d₁…d_t}(Γ) ∈ A*(Hilbₙ)."""
        image = self.op_mult_universal(ds, gamma, n).apply(self.space, self.space.one_n(n))
        return self.space.to_fock(image)

    # ------------------------------------------------------------------ Chern character

    def op_mult_chern(self, k: int, n: int) -> OpExpr:
        """Return multiplication by ch_k of the tangent bundle of Hilbₙ.

        The single-G terms occur for even k only; for odd k the double sums cancel.
        """
        one = self.ring.one(1)
        point = self.ring.point(0, 1)
        terms: list[tuple[Fraction | int, OpExpr]] = []
        if k % 2 == 0:
            terms.append((2, self.op_G(k + 2, one, n)))
            terms.append((4, self.op_G(k, point, n)))
        diagonal = self.ring.diagonal(0, 1, 2)
        points = self.ring.product_of_points((0, 1), 2)
        for i in range(2, k + 1):
            j = k + 2 - i
            if j >= 2:
                terms.append(((-1) ** (j + 1), self.op_mult_universal((i, j), diagonal, n)))
        for i in range(2, k - 1):
            j = k - i
            if j >= 2:
                terms.append((2 * (-1) ** (j + 1), self.op_mult_universal((i, j), points, n)))
        if not terms:
            return ZeroOp(0)
        return LinearCombination.of(*terms)

    def chern_character(self, k: int, n: int) -> FockVector:
        """Return ch_k(T Hilbₙ) as a vector."""
        image = self.op_mult_chern(k, n).apply(self.space, self.space.one_n(n))
        return self.space.to_fock(image)

    # ------------------------------------------------------------------ h_{αδ} relations

    def h_alpha_delta_on_G_one(self, alpha: SurfaceClass, d: int, n: int) -> OpExpr:
        """Return the closed form of [h_{αδ}, G_d(1)].

        That is −G₂(α)G_{d−1}(1) − G₂(1)G_{d−1}(α) + 2G_{d−1}(α).
        """
        one = self.ring.one(1)
        return LinearCombination.of(
            (-1, self.op_G(2, alpha, n) @ self.op_G(d - 1, one, n)),
            (-1, self.op_G(2, one, n) @ self.op_G(d - 1, alpha, n)),
            (2, self.op_G(d - 1, alpha, n)),
        )

    def h_alpha_delta_on_G_point(self, alpha: SurfaceClass, d: int, n: int) -> OpExpr:
        """Return −G₂(α)G_{d−1}(c) − G_{d+1}(α), which equals [h_{αδ}, G_d(c)]."""
        point = self.ring.point(0, 1)
        return LinearCombination.of(
            (-1, self.op_G(2, alpha, n) @ self.op_G(d - 1, point, n)),
            (-1, self.op_G(d + 1, alpha, n)),
        )

    def h_alpha_delta_on_G_pair(self, alpha: SurfaceClass, i: int, j: int, n: int) -> OpExpr:
        """Return the closed form of [h_{αδ}, G_iG_j(Δ)] for i, j ≥ 2."""
        one = self.ring.one(1)
        point = self.ring.point(0, 1)
        diagonal = self.ring.diagonal(0, 1, 2)
        diagonal_alpha = diagonal * self.ring.embed(alpha, 0, 2)
        alpha_sum = self.ring.embed(alpha, 0, 2) + self.ring.embed(alpha, 1, 2)
        mult = self.op_mult_universal

        def pair(a: int, b: int, gamma: SurfaceClass) -> OpExpr:
            return mult((a, b), gamma, n) if a >= 2 and b >= 2 else ZeroOp(0)

        return LinearCombination.of(
            (-1, self.op_G(2, alpha, n) @ pair(i - 1, j, diagonal)),
            (-1, self.op_G(2, alpha, n) @ pair(i, j - 1, diagonal)),
            (-1, self.op_G(2, one, n) @ pair(i - 1, j, diagonal_alpha)),
            (-1, self.op_G(2, one, n) @ pair(i, j - 1, diagonal_alpha)),
            (-1, pair(i + 1, j, alpha_sum)),
            (-1, pair(i, j + 1, alpha_sum)),
            (2, self.op_G(i - 1, alpha, n) @ self.op_G(j, point, n)),
            (2, self.op_G(i, point, n) @ self.op_G(j - 1, alpha, n)),
        )
